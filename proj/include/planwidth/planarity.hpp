#pragma once

#include "planwidth/graph.hpp"

namespace planwidth {

/// Full planarity test (Boyer-Myrvold).
bool is_planar(const Graph& g);

/// Necessary condition m <= 3n - 6 for simple planar graphs with n >= 3.
bool satisfies_euler_bound(const Graph& g);

}  // namespace planwidth
