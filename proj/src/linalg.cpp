#include "realexp/linalg.hpp"

#include <algorithm>
#include <map>

namespace realexp::linalg {

void SparseMatrix::add(std::size_t row, std::size_t col, const Rational& value) {
  if (row >= rows_ || col >= columns_.size())
    fail(ErrorCode::InvalidInput, "sparse entry out of range");
  if (value == 0) return;
  auto& c = columns_[col];
  auto it = std::lower_bound(c.begin(), c.end(), row,
                             [](const auto& e, std::size_t r) { return e.first < r; });
  if (it != c.end() && it->first == row) {
    it->second += value;
    if (it->second == 0) c.erase(it);
  } else {
    c.insert(it, {row, value});
  }
}

Rational SparseMatrix::at(std::size_t row, std::size_t col) const {
  for (const auto& [r, v] : columns_[col])
    if (r == row) return v;
  return 0;
}

bool SparseMatrix::is_zero() const {
  return std::all_of(columns_.begin(), columns_.end(),
                     [](const Column& c) { return c.empty(); });
}

std::uint64_t reduce_mod(const Rational& q, std::uint64_t p) {
  Integer num = q.get_num() % Integer(static_cast<unsigned long>(p));
  if (num < 0) num += static_cast<unsigned long>(p);
  Integer den = q.get_den() % Integer(static_cast<unsigned long>(p));
  if (den == 0) fail(ErrorCode::InvalidInput, "denominator vanishes mod " + std::to_string(p));
  Integer inv;
  Integer pz(static_cast<unsigned long>(p));
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t());
  Integer r = (num * inv) % pz;
  return r.get_ui();
}

namespace {

using IntColumn = std::vector<std::pair<std::size_t, Integer>>;
using ModColumn = std::vector<std::pair<std::size_t, std::uint64_t>>;

IntColumn to_integer_column(const SparseMatrix::Column& c) {
  Integer scale = 1;
  for (const auto& e : c) {
    Integer den = e.second.get_den();
    mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), den.get_mpz_t());
  }
  IntColumn out;
  out.reserve(c.size());
  for (const auto& [r, v] : c) {
    Rational s = v * Rational(scale);
    out.emplace_back(r, s.get_num());
  }
  return out;
}

void remove_content(IntColumn& c) {
  Integer g = 0;
  for (const auto& e : c) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.second.get_mpz_t());
    if (g == 1) return;
  }
  if (g > 1)
    for (auto& e : c) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
}

// c ← a·c − b·p, where a, b chosen to cancel the common lowest row.
void eliminate(IntColumn& c, const IntColumn& p) {
  const Integer& cl = c.back().second;
  const Integer& pl = p.back().second;
  Integer g;
  mpz_gcd(g.get_mpz_t(), cl.get_mpz_t(), pl.get_mpz_t());
  Integer a = pl / g;
  Integer b = cl / g;
  IntColumn out;
  out.reserve(c.size() + p.size());
  std::size_t i = 0, j = 0;
  while (i < c.size() || j < p.size()) {
    if (j == p.size() || (i < c.size() && c[i].first < p[j].first)) {
      out.emplace_back(c[i].first, a * c[i].second);
      ++i;
    } else if (i == c.size() || p[j].first < c[i].first) {
      out.emplace_back(p[j].first, -b * p[j].second);
      ++j;
    } else {
      Integer v = a * c[i].second - b * p[j].second;
      if (v != 0) out.emplace_back(c[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  c = std::move(out);
  remove_content(c);
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) {
  std::uint64_t result = 1, base = a % p, e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

void eliminate_mod(ModColumn& c, const ModColumn& piv, std::uint64_t p) {
  std::uint64_t factor = c.back().second * inverse_mod(piv.back().second, p) % p;
  ModColumn out;
  out.reserve(c.size() + piv.size());
  std::size_t i = 0, j = 0;
  while (i < c.size() || j < piv.size()) {
    if (j == piv.size() || (i < c.size() && c[i].first < piv[j].first)) {
      out.push_back(c[i++]);
    } else if (i == c.size() || piv[j].first < c[i].first) {
      out.emplace_back(piv[j].first, (p - factor * piv[j].second % p) % p);
      ++j;
    } else {
      std::uint64_t v = (c[i].second + p - factor * piv[j].second % p) % p;
      if (v) out.emplace_back(c[i].first, v);
      ++i;
      ++j;
    }
  }
  c = std::move(out);
}

std::size_t rank_rational(const SparseMatrix& m) {
  std::map<std::size_t, IntColumn> pivots;  // lowest row → reduced column
  for (std::size_t col = 0; col < m.cols(); ++col) {
    IntColumn c = to_integer_column(m.column(col));
    remove_content(c);
    while (!c.empty()) {
      auto it = pivots.find(c.back().first);
      if (it == pivots.end()) break;
      eliminate(c, it->second);
    }
    if (!c.empty()) {
      std::size_t low = c.back().first;
      pivots.emplace(low, std::move(c));
    }
  }
  return pivots.size();
}

std::size_t rank_prime(const SparseMatrix& m, std::uint64_t p) {
  std::map<std::size_t, ModColumn> pivots;
  for (std::size_t col = 0; col < m.cols(); ++col) {
    ModColumn c;
    for (const auto& [r, v] : m.column(col)) {
      std::uint64_t x = reduce_mod(v, p);
      if (x) c.emplace_back(r, x);
    }
    while (!c.empty()) {
      auto it = pivots.find(c.back().first);
      if (it == pivots.end()) break;
      eliminate_mod(c, it->second, p);
    }
    if (!c.empty()) {
      std::size_t low = c.back().first;
      pivots.emplace(low, std::move(c));
    }
  }
  return pivots.size();
}

}  // namespace

std::size_t rank(const SparseMatrix& m, const FieldConfig& field) {
  return field.kind == FieldConfig::Kind::Rationals ? rank_rational(m)
                                                    : rank_prime(m, field.prime);
}

LinearSolution solve(const std::vector<std::vector<Rational>>& a,
                     const std::vector<Rational>& b, std::size_t cols) {
  const std::size_t rows = a.size();
  std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(cols + 1));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m[r][c] = a[r][c];
    m[r][cols] = b[r];
  }
  LinearSolution out;
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < cols && pivot_row < rows; ++c) {
    std::size_t r = pivot_row;
    while (r < rows && m[r][c] == 0) ++r;
    if (r == rows) continue;
    std::swap(m[r], m[pivot_row]);
    Rational inv = 1 / m[pivot_row][c];
    for (auto& x : m[pivot_row]) x *= inv;
    for (std::size_t rr = 0; rr < rows; ++rr) {
      if (rr == pivot_row || m[rr][c] == 0) continue;
      Rational f = m[rr][c];
      for (std::size_t cc = c; cc <= cols; ++cc) m[rr][cc] -= f * m[pivot_row][cc];
    }
    out.pivot_columns.push_back(c);
    ++pivot_row;
  }
  for (std::size_t r = pivot_row; r < rows; ++r)
    if (m[r][cols] != 0) return out;
  out.feasible = true;
  out.particular.assign(cols, 0);
  for (std::size_t k = 0; k < out.pivot_columns.size(); ++k)
    out.particular[out.pivot_columns[k]] = m[k][cols];
  std::vector<bool> is_pivot(cols, false);
  for (auto c : out.pivot_columns) is_pivot[c] = true;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(cols, 0);
    v[f] = 1;
    for (std::size_t k = 0; k < out.pivot_columns.size(); ++k)
      v[out.pivot_columns[k]] = -m[k][f];
    out.nullspace.push_back(std::move(v));
  }
  return out;
}

}  // namespace realexp::linalg
