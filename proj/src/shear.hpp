#pragma once

#include <vector>

#include "planwidth/drawing.hpp"

namespace planwidth {

/// Shear factor eps = 2^-k small enough that x + eps*y orders the points lexicographically by (x, y).
Rational lexicographic_shear(const std::vector<const Point*>& pts);

/// x <- x + eps * y for every vertex.
Drawing shear_drawing(const Drawing& d, const Rational& eps);

/// Shears a structurally sound drawing into general position. Throws degeneracy_error on
/// overlaps, vertices on edges or triple points, which no shear can remove.
Drawing shear_to_general_position(const Drawing& d);

}  // namespace planwidth
