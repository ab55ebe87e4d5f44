#pragma once

#include <cstddef>
#include <vector>

#include "planwidth/graph.hpp"
#include "planwidth/limits.hpp"
#include "planwidth/tree.hpp"

namespace planwidth {

class LinearArrangement {
public:
    LinearArrangement() = default;
    explicit LinearArrangement(std::vector<VertexId> order);

    static LinearArrangement identity(std::size_t n);

    std::size_t size() const { return order_.size(); }
    const std::vector<VertexId>& order() const { return order_; }
    VertexId at(std::size_t position) const { return order_.at(position); }
    std::size_t position(VertexId v) const { return pos_.at(v); }

    friend bool operator==(const LinearArrangement& a, const LinearArrangement& b) {
        return a.order_ == b.order_;
    }

private:
    std::vector<VertexId> order_;
    std::vector<std::size_t> pos_;
};

/// 0, n-1, 1, n-2, ...: the cycle folded onto a line.
LinearArrangement fold_arrangement(std::size_t n);

std::size_t edge_separation(const Graph& g, const LinearArrangement& a);
std::size_t vertex_separation(const Graph& g, const LinearArrangement& a);
std::size_t span(const Graph& g, const LinearArrangement& a);

/// Edge count of each of the n-1 prefix cuts.
std::vector<std::size_t> prefix_cuts(const Graph& g, const LinearArrangement& a);

struct ArrangementResult {
    std::size_t value = 0;
    LinearArrangement witness;
};

ArrangementResult exact_cutwidth(const Graph& g, const SolverLimits& limits = default_limits());
ArrangementResult exact_pathwidth(const Graph& g, const SolverLimits& limits = default_limits());
ArrangementResult exact_bandwidth(const Graph& g, const SolverLimits& limits = default_limits());

TreeDecomposition arrangement_to_path_decomposition(const Graph& g, const LinearArrangement& a);

}  // namespace planwidth
