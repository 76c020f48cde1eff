#include <doctest.h>

#include <random>

#include "realexp/boxmod.hpp"
#include "realexp/errors.hpp"

using namespace realexp;

namespace {

IntervalSpec closed_open(Rational lo, Rational hi) { return IntervalSpec::make(lo, true, ExponentValue(hi), false); }

}  // namespace

TEST_SUITE("boxmod") {
  TEST_CASE("interval construction and membership") {
    CHECK_THROWS_AS(IntervalSpec::make(1, true, ExponentValue(0), true), Error);
    CHECK_THROWS_AS(IntervalSpec::make(1, true, ExponentValue(1), false), Error);
    auto p = IntervalSpec::point(2);
    CHECK(p.contains(2));
    CHECK_FALSE(p.contains(ExponentValue(Rational(21, 10))));
    auto r = IntervalSpec::ray(0, false);
    CHECK_FALSE(r.contains(0));
    CHECK(r.contains(parse_exponent("pi")));
  }

  TEST_CASE("free and orthant modules") {
    auto f = BoxModule::free(ExponentVector{1, 0});
    CHECK(f.is_free());
    CHECK(f.contains(ExponentVector{1, 5}));
    CHECK_FALSE(f.contains(ExponentVector{Rational(1, 2), 5}));
    auto o = BoxModule::orthant(ExponentVector{0, 0}, 1);
    CHECK(o.is_orthant());
    CHECK_FALSE(o.is_free());
    CHECK(o.open_lower_mask() == 1);
    CHECK_FALSE(o.contains(ExponentVector{0, 1}));
  }

  TEST_CASE("canonical morphism legality") {
    auto r = BoxModule::free(ExponentVector{0});
    auto m = BoxModule::orthant(ExponentVector{0}, 1);
    auto k = BoxModule::point(ExponentVector{0});
    auto unit = BoxModule({closed_open(0, 1)});
    CHECK(can_map(m, r));       // inclusion of the maximal ideal
    CHECK_FALSE(can_map(r, m));
    CHECK(can_map(r, k));       // quotient to k
    CHECK(can_map(r, unit));
    CHECK_FALSE(can_map(k, r)); // k is not a submodule of R
    CHECK(can_map(unit, unit));
    CHECK_THROWS_AS(CanonicalMorphism(k, r, 1), Error);
    // Disjoint supports: the zero map is always legal.
    CHECK(can_map(BoxModule::free(ExponentVector{2}), unit));
  }

  TEST_CASE("minkowski orthant") {
    auto unit = BoxModule({closed_open(0, 1), closed_open(0, 1)});
    auto m = minkowski_orthant(unit, 1);
    CHECK(m == BoxModule({IntervalSpec::ray(0, false), IntervalSpec::ray(0, true)}));
    CHECK(minkowski_orthant(unit, 0) == BoxModule::free(ExponentVector{0, 0}));
  }

  TEST_CASE("arrangement numbering") {
    CellArrangement arr({{0, 1}, {Rational(1, 2)}});
    CHECK(arr.pieces(0) == 5);
    CHECK(arr.pieces(1) == 3);
    CHECK(arr.cell_count() == 15);
    for (std::size_t c = 0; c < arr.cell_count(); ++c) CHECK(arr.flat_index(arr.cell(c)) == c);
    CHECK(arr.cell(3) == std::vector<std::size_t>{1, 0});
    CHECK(arr.locate(0, 1) == 3);
    CHECK(arr.locate(0, Rational(1, 2)) == 2);
    CHECK(arr.cell_to_string(arr.locate(ExponentVector{0, 1})) == "{0}x(1/2,inf)");
  }

  TEST_CASE("evaluate agrees with pointwise membership") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> d(-2, 10);
    auto pi = parse_exponent("pi");
    std::vector<BoxModule> boxes{
        BoxModule({IntervalSpec::make(0, false, pi, true), IntervalSpec::point(1)}),
        BoxModule({closed_open(1, 3), IntervalSpec::ray(0)}),
        BoxModule::orthant(ExponentVector{Rational(1, 2), 2}, 3)};
    auto arr = build_arrangement(boxes, 2);
    for (int t = 0; t < 400; ++t) {
      ExponentVector x{Rational(d(rng), 2), Rational(d(rng), 2)};
      auto cell = arr.locate(x);
      for (const auto& b : boxes) CHECK(evaluate(b, arr, cell) == (b.contains(x) ? 1 : 0));
    }
  }

  TEST_CASE("refinement coarsens back") {
    CellArrangement arr({{0, 2}});
    auto fine = arr.refined({{1, 3}});
    CHECK(fine.cell_count() == 9);
    for (int twice = -2; twice <= 8; ++twice) {
      ExponentVector x{Rational(twice, 2)};
      CHECK(arr.coarsen(fine, fine.locate(x)) == arr.locate(x));
    }
  }

  TEST_CASE("placement requires critical endpoints") {
    CellArrangement arr(std::vector<std::vector<ExponentValue>>{{ExponentValue(0)}});
    CHECK_THROWS_AS(place(BoxModule::free(ExponentVector{1}), arr), Error);
  }

  TEST_CASE("field config") {
    CHECK(FieldConfig::parse("Q") == FieldConfig::rationals());
    CHECK(FieldConfig::parse("GF(7)").prime == 7);
    CHECK(FieldConfig::parse("p:11").name() == "GF(11)");
    CHECK_THROWS_AS(FieldConfig::prime_field(9), Error);
  }
}
