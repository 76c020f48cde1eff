#include <doctest.h>

#include <random>

#include "realexp/lattice.hpp"

using namespace realexp;
using namespace realexp::lattice;

namespace {

std::vector<Integer> multiply(const IntMatrix& a, const std::vector<Integer>& x) {
  std::vector<Integer> out(a.size(), 0);
  for (std::size_t r = 0; r < a.size(); ++r)
    for (std::size_t c = 0; c < x.size(); ++c) out[r] += a[r][c] * x[c];
  return out;
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::uniform_int_distribution<int> d(-4, 4);
  IntMatrix a(rows, std::vector<Integer>(cols));
  for (auto& row : a)
    for (auto& v : row) v = d(rng);
  return a;
}

}  // namespace

TEST_SUITE("lattice") {
  TEST_CASE("column hermite: A U = H with U unimodular") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 50; ++t) {
      auto a = random_matrix(rng, 3, 5);
      auto ch = column_hermite(a, 5);
      for (std::size_t c = 0; c < 5; ++c) {
        std::vector<Integer> col(5);
        for (std::size_t r = 0; r < 5; ++r) col[r] = ch.u[r][c];
        auto prod = multiply(a, col);
        for (std::size_t r = 0; r < 3; ++r) CHECK(prod[r] == ch.h[r][c]);
      }
      for (std::size_t c = ch.rank; c < 5; ++c)
        for (std::size_t r = 0; r < 3; ++r) CHECK(ch.h[r][c] == 0);
    }
  }

  TEST_CASE("integer kernel vectors are in the kernel") {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 50; ++t) {
      auto a = random_matrix(rng, 2, 4);
      auto ker = integer_kernel(a, 4);
      auto ch = column_hermite(a, 4);
      CHECK(ker.size() == 4 - ch.rank);
      for (const auto& k : ker)
        for (const auto& v : multiply(a, k)) CHECK(v == 0);
    }
  }

  TEST_CASE("solve_integer") {
    IntMatrix a{{2, 4}};
    CHECK_FALSE(solve_integer(a, 2, {3}).has_value());
    auto x = solve_integer(a, 2, {6});
    REQUIRE(x.has_value());
    CHECK(multiply(a, *x)[0] == 6);
  }

  TEST_CASE("hermite basis is canonical") {
    auto b1 = hermite_basis({{2, 0}, {0, 3}}, 2);
    auto b2 = hermite_basis({{2, 3}, {4, 3}, {0, 6}}, 2);
    CHECK(b1 == b2);
  }
}
