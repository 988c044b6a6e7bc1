#pragma once

// Small exact linear-algebra kernels shared by the solver and the vertex
// enumerator. Dense, rational, desk-scale.

#include <optional>

#include "credal/rational.hpp"

namespace credal::detail {

/// Reduced row echelon form in place; returns pivot column per pivot row.
std::vector<std::size_t> row_reduce(RationalMatrix& m, std::size_t num_cols);

std::size_t rank(RationalMatrix m);

/// Solution set of A x = b as particular + span(nullspace); nullopt when
/// the system is inconsistent. Each nullspace vector has length cols(A).
struct AffineSet {
  RationalVector particular;
  RationalMatrix nullspace;
};
std::optional<AffineSet> solve_affine(const RationalMatrix& a, const RationalVector& b, std::size_t num_cols);

/// Unique solution of a square system, nullopt when singular.
std::optional<RationalVector> solve_square(const RationalMatrix& a, const RationalVector& b);

}  // namespace credal::detail
