#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "planwidth/graph.hpp"
#include "planwidth/tree.hpp"

namespace planwidth {

/// Planar embedding of a carving tree: rooted at the minimum-id internal node, children
/// ordered by the smallest vertex label in their subtree. Leaves read left to right give
/// the cyclic order of the graph vertices around the thickened tree.
struct CarvingEmbedding {
    NodeId root = 0;
    std::vector<std::int64_t> parent;            // -1 at the root
    std::vector<std::vector<NodeId>> children;   // embedding order
    std::vector<std::uint32_t> depth;
    std::vector<std::size_t> lo, hi;             // leaf-position interval of each subtree
    std::vector<std::size_t> port;               // index among the parent's ports
    std::vector<VertexId> leaf_order;            // vertex at each cyclic position
    std::vector<std::size_t> position;           // cyclic position of each vertex
    std::vector<NodeId> node_of;                 // leaf node of each vertex
    std::vector<std::size_t> edge_above;         // tree edge index above each non-root node

    bool inside(NodeId subtree, VertexId v) const {
        return lo[subtree] <= position[v] && position[v] <= hi[subtree];
    }
};

/// Requires a tree with at least one internal node.
CarvingEmbedding embed_carving(const Tree& t, const std::vector<std::optional<VertexId>>& leaf_vertex);

/// Wires (graph edges) routed through the rectangle of one tree edge. The entry order is
/// read at the child end, the exit order at the parent end, both left to right when looking
/// from the child towards the parent.
struct RectangleRouting {
    std::size_t tree_edge = 0;
    NodeId child = 0;
    NodeId parent = 0;
    std::vector<EdgeId> wires;          // sorted by id
    std::vector<EdgeId> entry_order;
    std::vector<EdgeId> exit_order;
    std::vector<std::size_t> transpositions;  // swap of slots (p, p+1), in sweep order
};

/// One routing per non-root tree node (the rectangle above it), indexed by node id;
/// the entry at the root is empty.
std::vector<RectangleRouting> route_rectangles(const Graph& g, const Tree& t, const CarvingEmbedding& emb);

/// Tree nodes passed by each wire, as the sequence of (child node, upward?) rectangles
/// from edge.u to edge.v.
struct RectangleStep {
    NodeId child;
    bool upward;
};
std::vector<RectangleStep> wire_path(const Graph& g, const CarvingEmbedding& emb, EdgeId e);

/// Applies the transposition list to `order`, returning the wire pairs in swap order.
std::vector<std::pair<EdgeId, EdgeId>> apply_transpositions(std::vector<EdgeId>& order,
                                                            const std::vector<std::size_t>& swaps);

std::size_t inversion_count(const std::vector<EdgeId>& from, const std::vector<EdgeId>& to);

}  // namespace planwidth
