#include <doctest.h>

#include <random>

#include "realexp/linalg.hpp"

using namespace realexp;
using namespace realexp::linalg;

namespace {

// Dense Gaussian elimination over Q.
std::size_t dense_rank(std::vector<std::vector<Rational>> m) {
  std::size_t rank = 0;
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t r = 0; r < rows; ++r)
      if (r != rank && m[r][c] != 0) {
        Rational f = m[r][c] / m[rank][c];
        for (std::size_t k = 0; k < cols; ++k) m[r][k] -= f * m[rank][k];
      }
    ++rank;
  }
  return rank;
}

}  // namespace

TEST_SUITE("linalg") {
  TEST_CASE("sparse rank equals dense rank") {
    std::mt19937_64 rng(6);
    std::uniform_int_distribution<int> d(-3, 3), sparse(0, 2), dim(1, 7);
    for (int t = 0; t < 200; ++t) {
      std::size_t rows = dim(rng), cols = dim(rng);
      SparseMatrix m(rows, cols);
      std::vector<std::vector<Rational>> dense(rows, std::vector<Rational>(cols, 0));
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
          if (sparse(rng) == 0) {
            Rational v(d(rng), 1 + sparse(rng));
            m.add(r, c, v);
            dense[r][c] += v;
          }
      CHECK(rank(m, FieldConfig::rationals()) == dense_rank(dense));
    }
  }

  TEST_CASE("rank mod p drops on multiples of p") {
    SparseMatrix m(2, 2);
    m.add(0, 0, 1);
    m.add(0, 1, 2);
    m.add(1, 0, 3);
    m.add(1, 1, 1);  // det = -5
    CHECK(rank(m, FieldConfig::rationals()) == 2);
    CHECK(rank(m, FieldConfig::prime_field(5)) == 1);
    CHECK(rank(m, FieldConfig::prime_field(7)) == 2);
  }

  TEST_CASE("duplicate insertions accumulate") {
    SparseMatrix m(1, 1);
    m.add(0, 0, 1);
    m.add(0, 0, -1);
    CHECK(m.is_zero());
  }

  TEST_CASE("solve returns a particular solution and a nullspace") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int t = 0; t < 100; ++t) {
      std::vector<std::vector<Rational>> a(3, std::vector<Rational>(5));
      for (auto& row : a)
        for (auto& v : row) v = d(rng);
      std::vector<Rational> x0(5);
      for (auto& v : x0) v = d(rng);
      std::vector<Rational> b(3, 0);
      for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 5; ++c) b[r] += a[r][c] * x0[c];
      auto s = solve(a, b, 5);
      REQUIRE(s.feasible);
      CHECK(s.nullspace.size() == 5 - dense_rank(a));
      for (std::size_t r = 0; r < 3; ++r) {
        Rational sum = 0;
        for (std::size_t c = 0; c < 5; ++c) sum += a[r][c] * s.particular[c];
        CHECK(sum == b[r]);
        for (const auto& v : s.nullspace) {
          Rational z = 0;
          for (std::size_t c = 0; c < 5; ++c) z += a[r][c] * v[c];
          CHECK(z == 0);
        }
      }
    }
  }

  TEST_CASE("inconsistent system") {
    std::vector<std::vector<Rational>> a{{1, 1}, {2, 2}};
    CHECK_FALSE(solve(a, {1, 3}, 2).feasible);
  }
}
