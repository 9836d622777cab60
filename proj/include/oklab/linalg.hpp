#pragma once

// Small exact linear algebra over Q. Matrices are row-major lists of rows.

#include "oklab/rational.hpp"

#include <optional>
#include <vector>

namespace oklab::linalg {

struct Echelon {
    RatMatrix rows;                   // reduced row echelon form, zero rows dropped
    std::vector<std::size_t> pivots;  // pivot column of each row
};

Echelon rref(RatMatrix m);

std::size_t rank(const RatMatrix& m);

/// Basis of {x : m x = 0}; `cols` is needed when m has no rows.
RatMatrix nullspace(const RatMatrix& m, std::size_t cols);

Rat determinant(RatMatrix m);

/// Inverse of a square matrix; nullopt when singular.
std::optional<RatMatrix> inverse(const RatMatrix& m);

/// Some solution of a x = b, or nullopt when inconsistent.
std::optional<RatVec> solve(const RatMatrix& a, const RatVec& b, std::size_t cols);

RatMatrix transpose(const RatMatrix& m, std::size_t cols);

RatVec apply(const RatMatrix& m, const RatVec& x);

/// Affine dimension of a point set (-1 when empty).
int affine_rank(const std::vector<RatVec>& points);

}  // namespace oklab::linalg
