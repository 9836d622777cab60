#pragma once

#include "oklab/rational.hpp"

#include <vector>

namespace oklab::exactgeom::detail {

using IntRow = std::vector<BigInt>;

/// Extreme rays of the pointed cone {x : row . x <= 0 for every row}, as
/// primitive integer vectors. Incremental double description with the
/// combinatorial adjacency test. Throws std::logic_error when the rows do
/// not have full column rank (cone not pointed).
std::vector<IntRow> extreme_rays(const std::vector<IntRow>& rows, std::size_t n);

IntRow to_int_row(const RatVec& v);
RatVec to_rat_row(const IntRow& v);

}  // namespace oklab::exactgeom::detail
