#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "realexp/boxmod.hpp"

namespace realexp::linalg {

/// Column-major sparse matrix with rational entries; duplicate (row, col)
/// insertions accumulate.
class SparseMatrix {
 public:
  using Column = std::vector<std::pair<std::size_t, Rational>>;  // sorted by row

  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

  void add(std::size_t row, std::size_t col, const Rational& value);
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return columns_.size(); }
  const Column& column(std::size_t c) const { return columns_[c]; }
  Rational at(std::size_t row, std::size_t col) const;
  bool is_zero() const;

 private:
  std::size_t rows_;
  std::vector<Column> columns_;
};

/// Fraction-free column reduction over ℚ (integer columns, content removed
/// after each step) or reduction mod p.
std::size_t rank(const SparseMatrix& m, const FieldConfig& field);

/// Maps a rational into GF(p); throws InvalidInput if p divides the denominator.
std::uint64_t reduce_mod(const Rational& q, std::uint64_t p);

struct LinearSolution {
  bool feasible = false;
  /// Free variables set to zero; pivots chosen at the least column index.
  std::vector<Rational> particular;
  /// Basis of the homogeneous solutions, one per free variable.
  std::vector<std::vector<Rational>> nullspace;
  std::vector<std::size_t> pivot_columns;
};

/// Solves A x = b exactly over ℚ by reduced row echelon form.
LinearSolution solve(const std::vector<std::vector<Rational>>& a,
                     const std::vector<Rational>& b, std::size_t cols);

}  // namespace realexp::linalg
