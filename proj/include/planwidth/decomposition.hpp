#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "planwidth/arrangement.hpp"
#include "planwidth/graph.hpp"
#include "planwidth/limits.hpp"
#include "planwidth/tree.hpp"

namespace planwidth {

enum class DecompositionFault {
    malformed_tree,      // bag/label vector sizes disagree with the tree
    unknown_vertex,      // bag or label references a vertex/edge outside the graph
    vertex_missing,      // a vertex in no bag / on no leaf
    edge_uncovered,      // tree decomposition: an edge in no bag
    disconnected_bags,   // tree decomposition: bags of a vertex are not a subtree
    bad_degree,          // carving/branch: internal node of degree != 3, or labelled non-leaf
    unlabelled_leaf,     // carving/branch: leaf without a label
    duplicate_label,     // carving/branch: bijection violated
    not_ancestral,       // elimination forest: an edge joins non-related vertices
};

const char* fault_tag(DecompositionFault f);

class decomposition_error : public std::runtime_error {
public:
    decomposition_error(DecompositionFault fault, std::string detail, std::vector<std::size_t> witness = {});
    DecompositionFault fault() const { return fault_; }
    const std::vector<std::size_t>& witness() const { return witness_; }

private:
    DecompositionFault fault_;
    std::vector<std::size_t> witness_;
};

/// Width (max bag size - 1; -1 for a decomposition of the empty graph).
long validate_tree_decomposition(const Graph& g, const TreeDecomposition& td);
std::size_t validate_carving(const Graph& g, const CarvingDecomposition& cd);
std::size_t validate_branch(const Graph& g, const BranchDecomposition& bd);
/// Depth of a valid ancestor forest: edges on the longest root path (a single vertex has depth 0).
std::size_t validate_elimination_forest(const Graph& g, const EliminationForest& f);

/// Cut size of every tree edge, indexed like cd.tree.edges().
std::vector<std::size_t> carving_edge_cuts(const Graph& g, const CarvingDecomposition& cd);

struct TreewidthResult {
    long width = -1;
    TreeDecomposition decomposition;
    std::vector<VertexId> elimination_order;
};

struct TreedepthResult {
    std::size_t depth = 0;
    EliminationForest forest;
};

struct CarvingResult {
    std::size_t width = 0;
    CarvingDecomposition decomposition;
};

TreewidthResult exact_treewidth(const Graph& g, const SolverLimits& limits = default_limits());
TreedepthResult exact_treedepth(const Graph& g, const SolverLimits& limits = default_limits());
CarvingResult exact_carving_width(const Graph& g, const SolverLimits& limits = default_limits());

/// Tree decomposition induced by eliminating vertices in the given order.
TreeDecomposition decomposition_from_elimination(const Graph& g, const std::vector<VertexId>& order);

CarvingDecomposition caterpillar_carving_from_arrangement(const Graph& g, const LinearArrangement& a);

/// Carving decomposition of a disjoint union from carvings of the parts; `parts[i]` covers the
/// vertices listed in `vertex_sets[i]` (part-local vertex j is global vertex_sets[i][j]).
CarvingDecomposition combine_carvings(std::size_t n, const std::vector<CarvingDecomposition>& parts,
                                      const std::vector<std::vector<VertexId>>& vertex_sets);

BranchDecomposition carving_to_branch(const Graph& g, const CarvingDecomposition& cd);
CarvingDecomposition branch_to_carving(const Graph& g, const BranchDecomposition& bd);

struct RestrictedPartition {
    std::size_t z = 0;
    std::vector<std::vector<NodeId>> blocks;  // each sorted; blocks ordered by minimum node
    std::vector<std::size_t> block_of;        // per tree node
};

RestrictedPartition restricted_partition(const Tree& t, std::size_t z);

/// Empty when all three defining properties hold, otherwise a description of the first failure.
std::optional<std::string> check_restricted_partition(const Tree& t, const RestrictedPartition& rp);

/// Number of tree edges leaving a block.
std::size_t block_boundary(const Tree& t, const RestrictedPartition& rp, std::size_t block);

}  // namespace planwidth
