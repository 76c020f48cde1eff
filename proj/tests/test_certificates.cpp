#include <doctest.h>

#include <functional>

#include "realexp/certificates.hpp"
#include "realexp/errors.hpp"

using namespace realexp;

namespace {

long binomial(long n, long k) {
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidInput;
}

}  // namespace

TEST_SUITE("certificates") {
  TEST_CASE("fixture supports") {
    auto k = fixtures::residue_field(2);
    REQUIRE(k.size() == 1);
    CHECK(k[0].contains(ExponentVector{0, 0}));
    CHECK_FALSE(k[0].contains(ExponentVector{0, Rational(1, 100)}));
    auto ri = fixtures::quotient_i(2)[0];
    CHECK(ri.contains(ExponentVector{Rational(99, 100), 0}));
    CHECK_FALSE(ri.contains(ExponentVector{1, 0}));
    CHECK_FALSE(ri.contains(ExponentVector{0, Rational(1, 2)}));
    auto rip = fixtures::quotient_i_prime(2)[0];
    CHECK(rip.contains(ExponentVector{0, 1}));
    CHECK_FALSE(rip.contains(ExponentVector{0, Rational(101, 100)}));
    auto b = fixtures::by_name("B", 2)[0];
    CHECK(b.contains(ExponentVector{Rational(1, 2), Rational(1, 2)}));
    CHECK_FALSE(b.contains(ExponentVector{1, 0}));
    CHECK(fixtures::by_name("R", 3)[0].is_free());
    CHECK(code_of([] { fixtures::by_name("Z", 1); }) == ErrorCode::InvalidInput);
    auto f = fixtures::truncated_f(default_escape_sequence(3));
    CHECK(f.size() == 4);
  }

  TEST_CASE("support escape") {
    auto seq = default_escape_sequence(12);
    for (std::size_t K = 1; K <= 8; ++K) {
      auto c = support_escape(K, 1, seq.truncated(K));
      REQUIRE(c.min_forced_index.has_value());
      CHECK(*c.min_forced_index == K);
      CHECK_FALSE(c.zero_solution);
      auto z = support_escape(K, 0, seq.truncated(K));
      CHECK(z.zero_solution);
      CHECK_FALSE(z.min_forced_index.has_value());
    }
    auto one = support_escape(1, 2, seq.truncated(1));
    CHECK(one.forced_indices == std::vector<std::size_t>{1});
    CHECK(one.nullity == 0);
  }

  TEST_CASE("k resolution and its pre-check") {
    auto seq = default_escape_sequence(4);
    auto res = k_resolution(seq);
    CHECK(res.rank(0) == 1);
    CHECK(res.rank(1) == 5);
    CHECK(res.rank(2) == 4);
    CHECK_NOTHROW(check_k_resolution(res, seq));
    auto broken = res;
    broken.add_entry(2, 0, 0, 1);
    CHECK(code_of([&] { check_k_resolution(broken, seq); }) == ErrorCode::EscapeViolated);
    CHECK(code_of([&] { ext2_certificate(4, seq, broken); }) == ErrorCode::EscapeViolated);
  }

  TEST_CASE("dual Koszul collapse") {
    for (std::size_t n = 1; n <= 4; ++n) {
      auto d = dual_koszul_collapse(n);
      REQUIRE(d.ranks.size() == n);
      for (std::size_t q = 0; q < n; ++q) CHECK(d.ranks[q] == binomial(static_cast<long>(n) - 1, q));
      CHECK(d.differentials_vanish);
    }
  }

  TEST_CASE("Ext certificates") {
    CHECK(code_of([] { ext2_certificate(1, default_escape_sequence(1)); }) == ErrorCode::InvalidInput);
    auto two = ext2_certificate(6, default_escape_sequence(6));
    CHECK(two.degree == 2);
    for (std::size_t n = 1; n <= 3; ++n) {
      auto c = ext_n_plus_1(n, 6);
      CHECK(c.degree == static_cast<int>(n) + 1);
      CHECK(c.total_ranks == c.formula_ranks);
      CHECK(c.escapes.size() == 6);
      int top = 0;
      for (const auto& e : c.table)
        if (e.i == static_cast<int>(n) + 1) {
          ++top;
          CHECK(e.p == 2);
          CHECK(e.q == static_cast<int>(n) - 1);
          CHECK(e.witness);
        }
      CHECK(top == 1);
    }
  }

  TEST_CASE("box flat resolution resolves the module exactly") {
    for (const std::string name : {"k", "R/I", "R/I'", "B", "R"})
      for (std::size_t n = 1; n <= 2; ++n) {
        auto m = fixtures::by_name(name, n);
        auto flat = box_flat_resolution(m);
        CHECK(flat.length() <= static_cast<int>(n));
        CHECK_FALSE(verify_complex(flat).has_value());
        auto t = homology(flat);
        for (std::size_t cell = 0; cell < t.cell_count(); ++cell) {
          int expect = 0;
          for (const auto& b : m) expect += evaluate(b, t.arrangement, cell);
          CHECK(t.at(cell, 0) == expect);
          for (int d = 1; d <= t.max_degree(); ++d) CHECK(t.at(cell, d) == 0);
        }
      }
  }

  TEST_CASE("projective resolutions") {
    struct Case {
      std::string name;
      std::size_t n;
      int length;
    };
    for (const auto& c : {Case{"k", 1, 2}, Case{"k", 2, 3}, Case{"R/I'", 2, 3}, Case{"B", 2, 2}, Case{"R", 2, 0}}) {
      auto m = fixtures::by_name(c.name, c.n);
      auto res = projective_resolution(m, {6, std::nullopt});
      CHECK(res.length == c.length);
      for (int d : res.complex.degrees())
        for (const auto& b : res.complex.term(d)) CHECK(b.is_free());
      auto check = check_projective_resolution(res, m);
      CHECK(check.passed());
      CHECK(check.stabilized_cells > 0);
      CHECK(check.stabilized_cells + check.unstabilized_cells.size() == check.cells);
    }
  }
}
