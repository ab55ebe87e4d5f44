#pragma once

// Exhaustive reference implementations. Deliberately naive: each one enumerates the
// whole search space and shares no code with the solvers it is used to check.

#include <cstddef>

#include "planwidth/drawing.hpp"
#include "planwidth/graph.hpp"

namespace planwidth {
class MetricRegistry;
}

namespace planwidth::oracle {

// minimum over all n! vertex orders
std::size_t cutwidth(const Graph& g);
std::size_t pathwidth(const Graph& g);
std::size_t bandwidth(const Graph& g);

// minimum over all n! elimination orders of the largest higher neighbourhood
std::size_t treewidth(const Graph& g);

// recursive definition: components take the max, a connected graph pays 1 + min over removals;
// reported as edges on the longest root path (one less than the level count)
std::size_t treedepth(const Graph& g);

// minimum over all unrooted cubic trees on n labelled leaves
std::size_t carving_width(const Graph& g);

// pairs of edges whose segments meet in a single interior point, by solving the 2x2 system
std::size_t crossing_count(const Drawing& d);

/// Adds the oracle_* metrics to the registry.
void register_metrics(MetricRegistry& registry);

}  // namespace planwidth::oracle
