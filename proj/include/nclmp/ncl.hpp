#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "nclmp/common.hpp"

namespace nclmp {

enum class VertexKind { AND, OR, CONNECTOR };

const char* kind_name(VertexKind k);
VertexKind parse_kind(const std::string& s);  // throws FormatError

struct Vertex {
    std::string id;
    VertexKind kind;
    int min_flow;
};

struct EdgeSpec {
    std::string id, u, v;
    int weight;
};

struct Edge {
    std::string id;
    int u, v;  // vertex indices
    int weight;
};

// Weighted constraint graph. Edges are kept sorted by id (natural order),
// so an edge index doubles as its position in the orientation bit vector.
class ConstraintGraph {
public:
    ConstraintGraph() = default;
    // min_flow < 0 on a vertex means "default for its kind".
    ConstraintGraph(std::vector<Vertex> vertices, const std::vector<EdgeSpec>& edges);

    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t num_vertices() const { return vertices_.size(); }
    std::size_t num_edges() const { return edges_.size(); }
    const Vertex& vertex(int i) const { return vertices_[i]; }
    const Edge& edge(int i) const { return edges_[i]; }
    const std::vector<int>& incident(int v) const { return incident_[v]; }

    int vertex_index(const std::string& id) const;  // -1 if absent
    int edge_index(const std::string& id) const;
    int other_end(int e, int v) const { return edges_[e].u == v ? edges_[e].v : edges_[e].u; }

private:
    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> incident_;
    std::unordered_map<std::string, int> vindex_, eindex_;
};

int default_min_flow(VertexKind k, int connector_weight = 2);

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

ValidationReport validate_graph(const ConstraintGraph& g);

// Direction per edge index: false = head is edge.v (the order written in
// the file), true = head is edge.u.
class Orientation {
public:
    Orientation() = default;
    explicit Orientation(std::size_t n) : rev_(n, 0) {}

    std::size_t size() const { return rev_.size(); }
    bool reversed(int e) const { return rev_[e] != 0; }
    void set_reversed(int e, bool r) { rev_[e] = r ? 1 : 0; }
    void flip(int e) { rev_[e] ^= 1; }

    int head(const ConstraintGraph& g, int e) const { return rev_[e] ? g.edge(e).u : g.edge(e).v; }
    int tail(const ConstraintGraph& g, int e) const { return rev_[e] ? g.edge(e).v : g.edge(e).u; }
    void set_head(const ConstraintGraph& g, int e, int vertex);  // ArgumentError if not an endpoint

    std::vector<std::uint64_t> pack() const;
    static Orientation unpack(const std::uint64_t* words, std::size_t n);

    bool operator==(const Orientation&) const = default;

private:
    std::vector<std::uint8_t> rev_;
};

int inflow(const ConstraintGraph& g, const Orientation& o, int v);
bool orientation_is_valid(const ConstraintGraph& g, const Orientation& o);
std::vector<int> legal_moves(const ConstraintGraph& g, const Orientation& o);

// Edge indices reversed in order.
using MoveWitness = std::vector<int>;

struct NclResult {
    bool yes = false;
    std::optional<MoveWitness> witness;
};

struct NclLimits {
    std::size_t max_states = 20'000'000;
    std::size_t enum_cap = 24;  // max |E| for enumeration
};

NclResult solve_full_to_full(const ConstraintGraph& g, const Orientation& oS, const Orientation& oT,
                             const NclLimits& lim = {});
NclResult solve_full_to_edge(const ConstraintGraph& g, const Orientation& oS, int edge,
                             const NclLimits& lim = {});

struct EdgeToEdgeResult {
    bool yes = false;
    std::optional<Orientation> start;  // the source orientation the witness starts from
    MoveWitness witness;
};

EdgeToEdgeResult solve_edge_to_edge(const ConstraintGraph& g, int e1, int head1, int e2, int head2,
                                    const NclLimits& lim = {});

// Lexicographic in edge index order, non-reversed before reversed.
void for_each_valid_orientation(const ConstraintGraph& g, const std::function<void(const Orientation&)>& f,
                                std::size_t cap = 24);
std::vector<Orientation> enumerate_valid_orientations(const ConstraintGraph& g, std::size_t cap = 24);

// Replays w from o, checking validity at every step. Returns the final
// orientation or nullopt if some step is illegal.
std::optional<Orientation> replay(const ConstraintGraph& g, Orientation o, const MoveWitness& w);

}  // namespace nclmp
