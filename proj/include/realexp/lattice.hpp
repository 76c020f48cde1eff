#pragma once

// Integer lattice algebra: column-style Hermite elimination, kernels, and
// integral solving.  All arithmetic is exact.

#include <optional>
#include <vector>

#include "realexp/exponents.hpp"

namespace realexp::lattice {

/// Row-major integer matrix.
using IntMatrix = std::vector<std::vector<Integer>>;

struct ColumnHermite {
  IntMatrix h;  // A·U, echelon in the first `rank` columns, zero afterwards
  IntMatrix u;  // unimodular k×k
  std::vector<std::size_t> pivot_rows;
  std::size_t rank = 0;
};

/// `cols` is the column count, needed when A has no rows.
ColumnHermite column_hermite(const IntMatrix& a, std::size_t cols);

/// ℤ-basis of {x ∈ ℤ^cols : A x = 0}, one vector per entry.
std::vector<std::vector<Integer>> integer_kernel(const IntMatrix& a,
                                                 std::size_t cols);

/// Some x ∈ ℤ^cols with A x = b, if one exists.
std::optional<std::vector<Integer>> solve_integer(const IntMatrix& a,
                                                  std::size_t cols,
                                                  const std::vector<Integer>& b);

/// Hermite basis of the lattice spanned by `vectors` (each of length dim):
/// echelon with positive pivots and entries left of each pivot reduced into
/// [0, pivot).  Deterministic for a given lattice.
std::vector<std::vector<Integer>> hermite_basis(
    const std::vector<std::vector<Integer>>& vectors, std::size_t dim);

}  // namespace realexp::lattice
