#pragma once

#include <string>
#include <variant>
#include <vector>

#include "nclmp/embed.hpp"
#include "nclmp/gadgets.hpp"
#include "nclmp/motion.hpp"
#include "nclmp/ncl.hpp"

namespace nclmp {

// One gadget per H-vertex, placed in its cell. Cell (i, j) occupies
// [11i+1, 11i+11] x [11j+1, 11j+11]; lattice coordinates are half-units.
struct Workspace {
    ConstraintGraph host;
    Instance instance;
    int cols = 0, rows = 0;
    std::vector<Pt> cell;           // per H-vertex, normalised grid cell
    std::vector<Gadget> gadgets;    // per H-vertex, in the local frame
    std::vector<std::vector<int>> edge_of_port;  // per H-vertex, per gadget port: H-edge index
    Pt origin(int v) const;         // global position of local (0,0)
    Pt to_global(int v, Pt local) const { return origin(v) + local; }
};

// Robot roles. Edge robots come first (one per H-edge, H-edge order), then
// vertex robots (H-vertex order, track order within a gadget).
struct RobotRole {
    bool edge = false;
    int h_edge = -1;    // edge robots
    int h_vertex = -1;  // vertex robots
    int slot = -1;      // track index within the gadget
};

struct Provenance {
    std::vector<RobotRole> robots;
    std::vector<std::string> lines(const ConstraintGraph& host) const;  // "robot <i> = edge <id>" / "robot <i> = vertex <id> slot <k>"
};

Workspace build_workspace(const GridEmbedding& emb);
Provenance provenance_of(const Workspace& ws);

// Slots of H-edge e's robot: the one penetrating the tail gadget.
Pt edge_slot(const Workspace& ws, int h_edge, int tail);

MultiConfig orientation_to_multiconfig(const Workspace& ws, const Orientation& oH);
Orientation multiconfig_to_orientation(const Workspace& ws, const MultiConfig& c);

enum class NclProblem { F2F, F2E, E2E };
NclProblem parse_problem(const std::string& s);
std::string problem_name(NclProblem p);

struct F2FParams {
    Orientation start, target;  // on G
};
struct F2EParams {
    Orientation start;
    int edge;
};
// Edge e in direction `towards` = the vertex the edge must point at.
struct EdgeDir {
    int edge;
    int head;
};
struct E2EParams {
    EdgeDir from, to;
};
using ReduceParams = std::variant<F2FParams, F2EParams, E2EParams>;

enum class Variant { M2M, M2S, M2SR, S2S, Labeled };
std::string variant_tag(Variant v);
Variant parse_variant(const std::string& s);

struct Question {
    Variant variant = Variant::M2M;
    MultiConfig start, target;  // m2m, m2s, m2sr, labeled
    Pt s{0, 0}, t{0, 0};        // m2s/m2sr use t, m2sr and s2s use s and t
    std::vector<int> assignment;  // labeled
    bool operator==(const Question&) const = default;
};

struct ReductionOutput {
    Workspace workspace;
    Question question;
    Provenance provenance;
};

// f2f gives m2m (or labeled when `labeled`), f2e gives m2s (m2sr when
// `restricted`), e2e gives s2s. Params refer to G; emb is G's embedding.
ReductionOutput reduce(const ConstraintGraph& g, const GridEmbedding& emb, const ReduceParams& params,
                       bool restricted = false, bool labeled = false);

// The H-edge whose robot stands for a G-edge.
int designated_h_edge(const GridEmbedding& emb, int g_edge);

}  // namespace nclmp
