#pragma once

#include <cstdint>
#include <random>

#include "nclmp/ncl.hpp"

namespace nclmp {

using Rng = std::mt19937_64;

// Planar cubic graph on n vertices (n even, n >= 4): K4 grown by picking a
// face, subdividing two of its edges and joining the new vertices inside
// the face. AND vertices come from vertex-disjoint cycles of weight-1
// edges; everything else is OR with weight 2. Vertex ids v0.., edge ids
// e0.. The result passes validate_graph.
ConstraintGraph random_constraint_graph(Rng& rng, int n, double and_share = 0.5);

// Uniform over valid orientations (enumerated, so |E| <= cap).
Orientation random_valid_orientation(Rng& rng, const ConstraintGraph& g, std::size_t cap = 24);

}  // namespace nclmp
