#include "realexp/lattice.hpp"

#include <utility>

namespace realexp::lattice {

namespace {

// col_a ← x·col_a + y·col_b ; col_b ← s·col_a + t·col_b (old values).
void combine_columns(IntMatrix& m, std::size_t a, std::size_t b,
                     const Integer& x, const Integer& y, const Integer& s,
                     const Integer& t) {
  for (auto& row : m) {
    Integer va = row[a];
    Integer vb = row[b];
    row[a] = x * va + y * vb;
    row[b] = s * va + t * vb;
  }
}

void negate_column(IntMatrix& m, std::size_t c) {
  for (auto& row : m) row[c] = -row[c];
}

void axpy_column(IntMatrix& m, std::size_t target, const Integer& k,
                 std::size_t source) {
  for (auto& row : m) row[target] -= k * row[source];
}

IntMatrix identity(std::size_t k) {
  IntMatrix u(k, std::vector<Integer>(k, 0));
  for (std::size_t i = 0; i < k; ++i) u[i][i] = 1;
  return u;
}

}  // namespace

ColumnHermite column_hermite(const IntMatrix& a, std::size_t cols) {
  ColumnHermite out;
  out.h = a;
  out.u = identity(cols);
  std::size_t c = 0;
  for (std::size_t r = 0; r < out.h.size() && c < cols; ++r) {
    auto& row = out.h[r];
    for (std::size_t j = c + 1; j < cols; ++j) {
      if (row[j] == 0) continue;
      if (row[c] == 0) {
        for (auto& m : {&out.h, &out.u})
          for (auto& rr : *m) std::swap(rr[c], rr[j]);
        continue;
      }
      Integer g, x, y;
      mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(),
                 row[c].get_mpz_t(), row[j].get_mpz_t());
      Integer s = -row[j] / g;
      Integer t = row[c] / g;
      combine_columns(out.h, c, j, x, y, s, t);
      combine_columns(out.u, c, j, x, y, s, t);
    }
    if (row[c] == 0) continue;
    if (row[c] < 0) {
      negate_column(out.h, c);
      negate_column(out.u, c);
    }
    // Reduce earlier pivot columns into [0, pivot) on this row.
    for (std::size_t l = 0; l < c; ++l) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), row[l].get_mpz_t(), row[c].get_mpz_t());
      if (q != 0) {
        axpy_column(out.h, l, q, c);
        axpy_column(out.u, l, q, c);
      }
    }
    out.pivot_rows.push_back(r);
    ++c;
  }
  out.rank = c;
  return out;
}

std::vector<std::vector<Integer>> integer_kernel(const IntMatrix& a,
                                                 std::size_t cols) {
  auto hnf = column_hermite(a, cols);
  std::vector<std::vector<Integer>> kernel;
  for (std::size_t j = hnf.rank; j < cols; ++j) {
    std::vector<Integer> v(cols);
    for (std::size_t i = 0; i < cols; ++i) v[i] = hnf.u[i][j];
    kernel.push_back(std::move(v));
  }
  return kernel;
}

std::optional<std::vector<Integer>> solve_integer(const IntMatrix& a,
                                                  std::size_t cols,
                                                  const std::vector<Integer>& b) {
  auto hnf = column_hermite(a, cols);
  std::vector<Integer> y(cols, 0);
  for (std::size_t j = 0; j < hnf.rank; ++j) {
    std::size_t r = hnf.pivot_rows[j];
    Integer rest = b[r];
    for (std::size_t l = 0; l < j; ++l) rest -= hnf.h[r][l] * y[l];
    if (!mpz_divisible_p(rest.get_mpz_t(), hnf.h[r][j].get_mpz_t()))
      return std::nullopt;
    y[j] = rest / hnf.h[r][j];
  }
  for (std::size_t r = 0; r < a.size(); ++r) {
    Integer lhs = 0;
    for (std::size_t l = 0; l < hnf.rank; ++l) lhs += hnf.h[r][l] * y[l];
    if (lhs != b[r]) return std::nullopt;
  }
  std::vector<Integer> x(cols, 0);
  for (std::size_t i = 0; i < cols; ++i)
    for (std::size_t l = 0; l < hnf.rank; ++l) x[i] += hnf.u[i][l] * y[l];
  return x;
}

std::vector<std::vector<Integer>> hermite_basis(
    const std::vector<std::vector<Integer>>& vectors, std::size_t dim) {
  IntMatrix m(dim, std::vector<Integer>(vectors.size(), 0));
  for (std::size_t j = 0; j < vectors.size(); ++j)
    for (std::size_t i = 0; i < dim; ++i) m[i][j] = vectors[j][i];
  auto hnf = column_hermite(m, vectors.size());
  std::vector<std::vector<Integer>> basis;
  for (std::size_t j = 0; j < hnf.rank; ++j) {
    std::vector<Integer> v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = hnf.h[i][j];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace realexp::lattice
