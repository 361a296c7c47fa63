#pragma once

#include <vector>

#include "nclmp/geometry.hpp"
#include "nclmp/ncl.hpp"

namespace nclmp {

// G drawn on the integer grid. H's first |V(G)| vertices are G's vertices
// in G's order; connectors follow. Every H-edge of a path is written in the
// direction of its G-edge (from G's u towards G's v), so an unreversed
// G-edge lifts to unreversed path edges.
struct GridEmbedding {
    ConstraintGraph host;
    std::vector<Pt> layout;                     // per H-vertex, grid units
    std::vector<std::vector<int>> path;         // per G-edge: H-vertex path u .. v
    std::vector<std::vector<int>> path_edges;   // per G-edge: H-edge indices along the path
    std::vector<int> connectors;                // H-vertex indices
};

// Throws PreconditionError for invalid or non-AND/OR input (including
// graphs that are not biconnected), ArgumentError for connector vertices,
// PlanarityError for non-planar input.
GridEmbedding embed(const ConstraintGraph& g);

// Area constant audited by check_embedding: cols * rows <= 2 |V|^2.
inline constexpr int kAreaFactor = 2;

ValidationReport check_embedding(const ConstraintGraph& g, const GridEmbedding& emb);

Orientation lift_orientation(const GridEmbedding& emb, const ConstraintGraph& g, const Orientation& oG);

struct Projection {
    Orientation orientation;
    std::vector<bool> mixed;  // per G-edge: path edges disagree
    bool any_mixed() const;
};
Projection project_orientation(const GridEmbedding& emb, const ConstraintGraph& g, const Orientation& oH);

// Rebuilds an embedding from G plus a layout sidecar (place / path lines
// already resolved to H-vertex ids). Used by the text format.
// Paths may be written in either direction; connector ids come from the
// path lines. Throws FormatError on inconsistencies.
struct LayoutDoc {
    std::vector<std::pair<std::string, Pt>> places;
    std::vector<std::pair<std::string, std::vector<std::string>>> paths;  // G-edge id, H-vertex ids
};
GridEmbedding embedding_from_layout(const ConstraintGraph& g, const LayoutDoc& doc);
LayoutDoc layout_of(const ConstraintGraph& g, const GridEmbedding& emb);

}  // namespace nclmp
