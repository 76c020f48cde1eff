#include <doctest.h>

#include "realexp/complexes.hpp"
#include "realexp/errors.hpp"
#include "realexp/koszul.hpp"

using namespace realexp;

namespace {

// Ordinary Koszul homology: k[0,ε) in degree 0, nothing else.
bool in_unit_box(const ExponentVector& a, const ExponentVector& eps) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sign(a[i]) < 0 || !less(a[i], eps[i])) return false;
  return true;
}

}  // namespace

TEST_SUITE("complexes") {
  TEST_CASE("entries cancel and stay sorted") {
    BoxComplex c(1);
    c.add_term(0, BoxModule::free(ExponentVector{0}));
    c.add_term(1, BoxModule::free(ExponentVector{1}));
    c.add_term(1, BoxModule::free(ExponentVector{2}));
    c.add_entry(1, 0, 1, 2);
    c.add_entry(1, 0, 0, 1);
    REQUIRE(c.differential(1).size() == 2);
    CHECK(c.differential(1)[0].col == 0);
    c.add_entry(1, 0, 0, -1);
    CHECK(c.differential(1).size() == 1);
    CHECK(c.entry(1, 0, 1) == 2);
    CHECK(c.length() == 1);
  }

  TEST_CASE("verify_complex reports illegal entries and d^2") {
    BoxComplex bad(1);
    bad.add_term(0, BoxModule::free(ExponentVector{0}));
    bad.add_term(1, BoxModule::point(ExponentVector{0}));
    bad.add_entry(1, 0, 0, 1);
    auto v = verify_complex(bad);
    REQUIRE(v.has_value());
    CHECK(v->kind == Violation::Kind::IllegalEntry);

    BoxComplex sq(1);
    sq.add_term(0, BoxModule::free(ExponentVector{0}));
    sq.add_term(1, BoxModule::free(ExponentVector{1}));
    sq.add_term(2, BoxModule::free(ExponentVector{2}));
    sq.add_entry(1, 0, 0, 1);
    sq.add_entry(2, 0, 0, 1);
    v = verify_complex(sq);
    REQUIRE(v.has_value());
    CHECK(v->kind == Violation::Kind::SquareNonzero);

    CHECK_FALSE(verify_complex(ordinary_koszul(ExponentVector{1, 1, 1})).has_value());
  }

  TEST_CASE("ordinary Koszul homology is the unit box quotient") {
    auto pi = parse_exponent("pi");
    ExponentVector eps{1, pi};
    auto c = ordinary_koszul(eps);
    auto t = homology(c);
    CHECK(euler_consistent(c, t));
    for (int a = -1; a <= 9; ++a)
      for (int b = -1; b <= 9; ++b) {
        ExponentVector x{Rational(a, 2), Rational(b, 2)};
        auto cell = t.arrangement.locate(x);
        CHECK(t.at(cell, 0) == (in_unit_box(x, eps) ? 1 : 0));
        CHECK(t.at(cell, 1) == 0);
        CHECK(t.at(cell, 2) == 0);
      }
  }

  TEST_CASE("tensor of one-variable Koszul complexes") {
    auto pi = parse_exponent("pi");
    auto t = tensor(ordinary_koszul(ExponentVector{1}), ordinary_koszul(ExponentVector{pi}));
    CHECK(t == ordinary_koszul(ExponentVector{1, pi}));
    auto tt = tensor_total(open_koszul_1d(), open_koszul_1d());
    REQUIRE(tt.origin.at(1).size() == 2);
    CHECK(tt.origin.at(1)[0].p == 0);
    CHECK(tt.origin.at(1)[1].p == 1);
    CHECK(tensor(point_complex(), open_koszul(2)) == open_koszul(2));
  }

  TEST_CASE("direct sum adds homology") {
    auto a = ordinary_koszul(ExponentVector{1});
    auto b = open_koszul(1);
    auto s = direct_sum(a, b);
    HomologyOptions opts;
    opts.refine = {{0, 1}};
    auto ts = homology(s, opts), ta = homology(a, opts), tb = homology(b, opts);
    for (std::size_t cell = 0; cell < ts.cell_count(); ++cell)
      CHECK(ts.at(cell, 0) == ta.at(cell, 0) + tb.at(cell, 0));
  }

  TEST_CASE("free dual is an involution") {
    auto c = ordinary_koszul(ExponentVector{1, Rational(1, 2)});
    auto d = dualize_free(c);
    CHECK(d.min_degree() == -2);
    CHECK(dualize_free(d) == c);
    CHECK_THROWS_AS(dualize_free(open_koszul(1)), Error);
  }

  TEST_CASE("collapsing a Koszul complex leaves no cancellation") {
    auto c = collapse_free(ordinary_koszul(ExponentVector{1, 1}), 3);
    CHECK(c.rank(1) == 2);
    auto t = homology(c);
    CHECK(t.total(0) == 1);
    CHECK(t.total(1) == 2);
    CHECK(t.total(2) == 1);
  }

  TEST_CASE("prime field and workers give the same table") {
    auto c = ordinary_koszul(ExponentVector{1, 1, 1});
    auto q = homology(c);
    HomologyOptions opts;
    opts.field = FieldConfig::prime_field(101);
    opts.workers = 4;
    auto p = homology(c, opts);
    CHECK(p.dims == q.dims);
    CHECK(p.field_mismatch_cells.empty());
  }

  TEST_CASE("term dimensions on a cell") {
    auto c = ordinary_koszul(ExponentVector{1, 1});
    auto t = homology(c);
    auto cell = t.arrangement.locate(ExponentVector{2, 2});
    CHECK(term_dimensions(c, t.arrangement, cell, 0, 2) == std::vector<int>{1, 2, 1});
  }
}
