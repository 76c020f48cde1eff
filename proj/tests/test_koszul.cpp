#include <doctest.h>

#include "realexp/errors.hpp"
#include "realexp/koszul.hpp"

using namespace realexp;

namespace {

long binomial(long n, long k) {
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

ExponentGroup dense_group() {
  auto basis = ConstantBasis::standard();
  ExponentGroup g;
  g.n = 2;
  g.basis = basis;
  g.generators = {ExponentVector{2, 0}, ExponentVector{parse_exponent("pi", basis), 0}, ExponentVector{1, 1},
                  ExponentVector{0, parse_exponent("e", basis)}};
  return g;
}

}  // namespace

TEST_SUITE("koszul") {
  TEST_CASE("subset order follows the tensor order") {
    CHECK(koszul_subsets(3, 1) == std::vector<CoordMask>{4, 2, 1});
    CHECK(koszul_subsets(3, 2) == std::vector<CoordMask>{6, 5, 3});
    CHECK(koszul_subsets(2, 0) == std::vector<CoordMask>{0});
    auto c = open_koszul(3);
    for (std::size_t m = 0; m <= 3; ++m) {
      auto subsets = koszul_subsets(3, m);
      REQUIRE(c.rank(static_cast<int>(m)) == subsets.size());
      for (std::size_t j = 0; j < subsets.size(); ++j)
        CHECK(c.term(static_cast<int>(m))[j] == BoxModule::orthant(ExponentVector::zero(3), subsets[j]));
    }
  }

  TEST_CASE("face vector") {
    CHECK(face_vector(ExponentVector{1, 2, 3}, 5) == ExponentVector{1, 0, 3});
  }

  TEST_CASE("open Koszul homology is k at the origin") {
    for (std::size_t n = 1; n <= 3; ++n) {
      auto t = homology(open_koszul(n));
      CHECK(t.total(0) == 1);
      for (int d = 1; d <= static_cast<int>(n); ++d) CHECK(t.total(d) == 0);
      CHECK(t.at(t.arrangement.locate(ExponentVector::zero(n)), 0) == 1);
    }
  }

  TEST_CASE("Tor of the power quotient") {
    for (std::size_t n = 1; n <= 3; ++n)
      for (int i = 0; i <= static_cast<int>(n); ++i) {
        auto r = tor_of_power_quotient(ExponentVector(std::vector<ExponentValue>(n, parse_exponent("e"))), i);
        CHECK(r.dimension == binomial(static_cast<long>(n), i));
        CHECK(r.differentials_vanish);
      }
    CHECK(tor_of_power_quotient(ExponentVector{1, 1}, 3).dimension == 0);
  }

  TEST_CASE("truncation sequences") {
    auto s = TruncationSequence::geometric(ExponentVector{1, 1}, 1, 3);
    CHECK(s.depth() == 3);
    CHECK(s.entries[2] == ExponentVector{Rational(1, 4), 0});
    CHECK_NOTHROW(s.validate(1));
    CHECK_THROWS_AS(s.validate(3), Error);
    auto bad = s;
    std::swap(bad.entries[0], bad.entries[1]);
    CHECK_THROWS_AS(bad.validate(1), Error);
    CHECK(s.truncated(1).depth() == 1);
  }

  TEST_CASE("orthant resolution") {
    auto seq = TruncationSequence::geometric(ExponentVector{1}, 1, 4);
    auto res = orthant_resolution(1, seq, ExponentVector{2});
    CHECK(res.complex.rank(0) == 5);
    CHECK(res.complex.rank(1) == 4);
    CHECK(res.h0 == BoxModule::free(ExponentVector{2 + ExponentValue(Rational(1, 16))}));
    CHECK(res.limit == BoxModule::orthant(ExponentVector{2}, 1));
    HomologyOptions opts;
    opts.refine = {{2}};
    auto t = homology(res.complex, opts);
    for (std::size_t cell = 0; cell < t.cell_count(); ++cell) {
      CHECK(t.at(cell, 1) == 0);
      CHECK(t.at(cell, 0) == evaluate(res.h0, t.arrangement, cell));
      if (res.stabilized(t.arrangement, cell)) CHECK(t.at(cell, 0) == evaluate(res.limit, t.arrangement, cell));
    }
    CHECK_FALSE(res.stabilized(t.arrangement, t.arrangement.locate(ExponentVector{2 + ExponentValue(Rational(1, 32))})));
  }

  TEST_CASE("discretized total Koszul on R") {
    std::vector<BoxModule> m{BoxModule::free(ExponentVector{0})};
    auto d = total_koszul_truncated(m, ExponentVector{1}, 2, 4);
    CHECK(d.eps_units() == std::vector<long>{4});
    for (const auto& c : d.degrees()) {
      auto h = d.homology(c);
      // Classes of x^a y^b with a + b = c modulo x^ε ~ y^ε.
      CHECK(h[0] == std::min<long>(c[0] + 1, 4));
      CHECK(h[1] == 0);
      CHECK(d.square_zero(c));
    }
  }

  TEST_CASE("discretized total Koszul rejects bad modules") {
    std::vector<BoxModule> off{BoxModule::free(ExponentVector{Rational(1, 3)})};
    CHECK_THROWS_AS(total_koszul_truncated(off, ExponentVector{1}, 2, 4), Error);
    std::vector<BoxModule> far{BoxModule::free(ExponentVector{8})};
    try {
      total_koszul_truncated(far, ExponentVector{1}, 2, 4);
      FAIL("expected WindowTooSmall");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::WindowTooSmall);
    }
  }

  TEST_CASE("flat decomposition counts") {
    std::vector<BoxModule> m{BoxModule::point(ExponentVector{0, 0}), BoxModule::free(ExponentVector{1, 1})};
    auto f = flat_decomposition(m);
    CHECK(f.at(0).size() == 2);
    CHECK(f.at(1).size() == 4);
    CHECK(f.at(2).size() == 2);
    for (const auto& s : f.at(0)) CHECK(s.x_part == BoxModule::free(ExponentVector::zero(2)));
    auto terms = total_koszul_terms(m, ExponentVector{1, 1});
    CHECK(terms.terms.at(1).size() == 4);
  }

  TEST_CASE("group context") {
    GroupContext dense(dense_group());
    CHECK(dense.ray(1).size() == 2);
    CHECK_NOTHROW(ordinary_koszul(ExponentVector{2, 2}, &dense));
    try {
      ordinary_koszul(ExponentVector{1, 1}, &dense);
      FAIL("expected NotInOpenCone");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotInOpenCone);
    }
    CHECK_THROWS_AS(dense.require_exponent(ExponentVector{0, 1}), Error);
    auto third = GroupContext(ExponentGroup::rational_lattice(1, 3));
    CHECK_THROWS_AS(orthant_resolution(1, TruncationSequence::geometric(ExponentVector{1}, 1, 2), {}, &third), Error);
    ExponentGroup line;
    line.n = 2;
    line.generators = {ExponentVector{1, 1}};
    CHECK_THROWS_AS(GroupContext{line}, Error);
  }
}
