#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "planwidth/graph.hpp"

namespace planwidth {

using NodeId = std::uint32_t;

/// Undirected tree on nodes [0, size). Validated on construction.
class Tree {
public:
    Tree() = default;
    Tree(std::size_t size, std::vector<std::pair<NodeId, NodeId>> edges);

    std::size_t size() const { return adj_.size(); }
    std::span<const std::pair<NodeId, NodeId>> edges() const { return edges_; }
    std::span<const NodeId> neighbors(NodeId x) const { return adj_.at(x); }
    std::size_t degree(NodeId x) const { return adj_.at(x).size(); }

private:
    std::vector<std::pair<NodeId, NodeId>> edges_;
    std::vector<std::vector<NodeId>> adj_;
};

/// Parent pointers and a preorder of a tree rooted at `root`.
struct RootedView {
    NodeId root = 0;
    std::vector<std::int64_t> parent;  // -1 at the root
    std::vector<std::uint32_t> depth;
    std::vector<NodeId> preorder;
};

RootedView root_tree(const Tree& t, NodeId root);

/// Unrooted tree with `leaves` leaves and every internal node of degree 3 (2*leaves - 2
/// nodes), grown by subdividing uniformly chosen edges. leaves >= 2.
Tree gen_random_binary_tree(std::size_t leaves, std::uint64_t seed);

struct TreeDecomposition {
    Tree tree;
    std::vector<std::vector<VertexId>> bags;
};

struct BranchDecomposition {
    Tree tree;
    std::vector<std::optional<EdgeId>> leaf_edge;  // per tree node; set exactly on leaves
};

struct CarvingDecomposition {
    Tree tree;
    std::vector<std::optional<VertexId>> leaf_vertex;  // per tree node; set exactly on leaves
};

/// Ancestor forest witnessing tree-depth: parent per graph vertex.
struct EliminationForest {
    std::vector<std::optional<VertexId>> parent;
};

}  // namespace planwidth
