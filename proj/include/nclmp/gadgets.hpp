#pragma once

#include <map>
#include <string>
#include <vector>

#include "nclmp/geometry.hpp"
#include "nclmp/motion.hpp"
#include "nclmp/ncl.hpp"

namespace nclmp {

// Cell-local frame: the 5x5 interior is [0,10]^2 in half-units; walls are
// one half-unit thick; doorways are centred and one unit wide.
inline constexpr int kCell = 10;
inline constexpr int kWall = 1;
inline constexpr int kPitch = kCell + kWall;
inline constexpr int kDoorLo = 4, kDoorHi = 6;

// Edge-robot slots of the doorway on `side`, in the local frame.
Pt inside_slot(Dir side);
Pt outside_slot(Dir side);

struct PortSpec {
    Dir side;
    int weight;
    bool operator==(const PortSpec&) const = default;
};

struct GadgetPort {
    Dir side;
    int weight;
    int role;  // 1-based; for AND role 1 is the weight-2 port
    Pt inside, outside;
    bool operator==(const GadgetPort&) const = default;
};

struct Gadget {
    VertexKind kind = VertexKind::CONNECTOR;
    std::string design;  // name of the base drawing
    int rotation = 0;    // quarter turns counter-clockwise applied to the base
    std::vector<GadgetPort> ports;               // sorted by role
    std::vector<std::vector<Pt>> vertex_tracks;  // positions each vertex robot is designed to use; first = start
    std::vector<Pt> points;                      // point obstacles
    std::vector<Pt> free_blocks;                 // free 0.5x0.5 blocks (lower-left corners), sorted
    int special_robot = -1;                      // index into vertex_tracks (OR hub)

    std::vector<Pt> vertex_starts() const;
    std::vector<Polygon> obstacles() const;  // blocked part of the interior, as rectangles
    std::vector<Pt> terminal_set() const;    // every lattice point where a robot fits
    int port_index(Dir side) const;          // -1 if no port on that side
    bool operator==(const Gadget&) const = default;
};

// All drawing variants of a kind (every base design in every rotation).
std::vector<Gadget> gadget_variants(VertexKind kind);

// port_assignment is read in the unrotated frame; the matching variant is
// then turned by `rotation` degrees (0, 90, 180, 270).
Gadget make_gadget(VertexKind kind, const std::vector<PortSpec>& port_assignment, int rotation = 0);
Gadget rotate(const Gadget& g, int quarter_turns);
Gadget mirror_x(const Gadget& g);

// Gadget with its cell walls as a stand-alone instance: robots are the
// edge robots (one per port, in port order) followed by the vertex robots.
Instance gadget_instance(const Gadget& g);

enum class PortMode { Free, HeldInside, HeldOutside };

struct GadgetArc {
    std::uint32_t from, to;
    int robot;
    Dir dir;
};

struct GadgetStateGraph {
    std::vector<PortMode> boundary;
    std::vector<std::vector<Pt>> nodes;  // robot order as in gadget_instance
    std::vector<GadgetArc> arcs;
};

// 1 = edge robot inside, per port, or -1 if some edge robot is off its slots.
std::vector<int> project_state(const Gadget& g, const std::vector<Pt>& state);

// Reachable state graph from the gadget's canonical start for the given
// boundary. Throws CapExceeded past `cap` states.
GadgetStateGraph enumerate_gadget_states(const Gadget& g, const std::vector<PortMode>& boundary,
                                         std::size_t cap = 1'000'000);

// Truth table over "inside" bits, one per port in port order.
bool vertex_allows(VertexKind kind, const std::vector<int>& inside);

struct GadgetReport {
    std::vector<std::string> problems;
    std::size_t variants = 0, states = 0;
    bool ok() const { return problems.empty(); }
};

GadgetReport verify_gadget(const Gadget& g, std::size_t cap = 1'000'000);
GadgetReport verify_gadget_semantics(VertexKind kind);

struct PairReport {
    std::vector<std::string> problems;  // all violations
    std::size_t states = 0;
    int max_edge_positions = 0, max_vertex_positions = 0, special_positions = 0;
    bool edge_ok = true, vertex_ok = true, special_ok = true, unique_ok = true;
    bool ok() const { return problems.empty(); }
};

// a's port on side `dir` is joined with b's port on the opposite side;
// b sits one cell away in direction dir.
PairReport verify_structural_lemmas(const Gadget& a, const Gadget& b, Dir dir, std::size_t cap = 1'000'000);

// Every drawing variant joined to every other through each shared doorway
// direction (E and N cover all placements up to translation).
struct PairSummary {
    int pairs = 0;
    int edge_bad = 0, vertex_bad = 0, special_bad = 0, unique_bad = 0;
    int max_edge_positions = 0, max_vertex_positions = 0, max_special_positions = 0;
    std::size_t max_states = 0;
    std::vector<std::string> examples;  // first few problems, with the pair named
};
PairSummary verify_all_pairs(std::size_t cap = 1'000'000);

// Vertex-robot positions for a given inside/outside projection: the first
// such state found by BFS from the canonical start with all ports free.
// Throws ArgumentError when the projection is not realizable.
std::vector<Pt> canonical_vertex_positions(const Gadget& g, const std::vector<int>& inside);

}  // namespace nclmp
