#include <doctest.h>

#include <random>

#include "realexp/errors.hpp"
#include "realexp/exponents.hpp"

using namespace realexp;

namespace {

ExponentValue random_value(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-40, 40), den(1, 12), coeff(-3, 3);
  auto basis = ConstantBasis::standard();
  ExponentValue v(Rational(num(rng), den(rng)));
  v += ExponentValue::symbol(basis, "pi", coeff(rng));
  v += ExponentValue::symbol(basis, "e", coeff(rng));
  return v;
}

double approx(const ExponentValue& v) {
  auto enc = v.enclose(15);
  return Rational((enc.lo + enc.hi) / 2).get_d();
}

}  // namespace

TEST_SUITE("exponents") {
  TEST_CASE("rational parsing") {
    CHECK(parse_rational("-7/4") == Rational(-7, 4));
    CHECK(parse_rational("0.125") == Rational(1, 8));
    CHECK(parse_rational("-1.5e-3") == Rational(-3, 2000));
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational("abc"), Error);
  }

  TEST_CASE("exponent parsing and printing") {
    auto basis = ConstantBasis::standard();
    for (const char* text : {"2", "1/3", "pi", "2+e", "-3+pi", "2*e", "pi-3", "3*e-8", "-2pi+7", "0"}) {
      auto v = parse_exponent(text, basis);
      CHECK(parse_exponent(v.to_string(), basis) == v);
    }
    CHECK(parse_exponent("pi-3").to_string() == "-3+pi");
    CHECK(parse_exponent("2*e").to_string() == "2*e");
    CHECK_THROWS_AS(parse_exponent("tau"), Error);
    CHECK_THROWS_AS(parse_exponent("pi/2"), Error);
  }

  TEST_CASE("ordering of known constants") {
    auto pi = parse_exponent("pi");
    auto e = parse_exponent("e");
    CHECK(less(e, pi));
    CHECK(less(ExponentValue(3), pi));
    CHECK(less(pi, ExponentValue(Rational(22, 7))));
    CHECK(less(ExponentValue(Rational(2718, 1000)), e));
    CHECK(sign(pi - e - ExponentValue(Rational(1, 2))) < 0);
    CHECK(compare(pi + e, e + pi) == Ordering::Equal);
  }

  TEST_CASE("ordering agrees with floating point on random values") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 300; ++t) {
      auto a = random_value(rng);
      auto b = random_value(rng);
      double da = approx(a), db = approx(b);
      auto o = compare(a, b);
      if (std::abs(da - db) > 1e-9) CHECK((o == Ordering::Less) == (da < db));
      CHECK(compare(b, a) == (o == Ordering::Less ? Ordering::Greater
                              : o == Ordering::Greater ? Ordering::Less
                                                       : Ordering::Equal));
      CHECK(compare(a - b, ExponentValue(0)) == o);
    }
  }

  TEST_CASE("rational_between lies strictly between") {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 200; ++t) {
      auto a = random_value(rng);
      auto b = random_value(rng);
      if (a == b) continue;
      if (less(b, a)) std::swap(a, b);
      ExponentValue q(rational_between(a, b));
      CHECK(less(a, q));
      CHECK(less(q, b));
    }
  }

  TEST_CASE("scaling") {
    auto v = parse_exponent("2+2*pi");
    CHECK(v.scaled(Rational(1, 2)) == parse_exponent("1+pi"));
    CHECK_THROWS_AS(parse_exponent("pi").scaled(Rational(1, 2)), Error);
    CHECK(v.scaled(Integer(-1)) == -v);
  }

  TEST_CASE("vector helpers") {
    ExponentVector a{1, parse_exponent("pi")};
    ExponentVector b{2, 3};
    CHECK(meet(a, b) == ExponentVector{1, 3});
    CHECK(leq(ExponentVector{0, 0}, a));
    CHECK_FALSE(leq(a, b));
    CHECK(a.restricted(1) == ExponentVector{1, 0});
    CHECK(is_strictly_positive(a));
    CHECK_FALSE(is_strictly_positive(a.restricted(2)));
    CHECK(is_nonnegative(a.restricted(2)));
  }

  TEST_CASE("rational lattice group") {
    auto g = ExponentGroup::rational_lattice(2, 3);
    CHECK(is_member(ExponentVector{Rational(2, 3), Rational(-5, 3)}, g).member);
    CHECK_FALSE(is_member(ExponentVector{Rational(1, 2), 0}, g).member);
    auto ray = ray_intersection(g, 0);
    REQUIRE(ray.size() == 1);
    CHECK(ray[0] == ExponentValue(Rational(1, 3)));
    CHECK(in_open_cone(ExponentVector{Rational(1, 3), 1}, g));
    CHECK_FALSE(in_open_cone(ExponentVector{0, 1}, g));
  }

  TEST_CASE("dense group") {
    auto basis = ConstantBasis::standard();
    ExponentGroup g;
    g.n = 2;
    g.basis = basis;
    auto pi = parse_exponent("pi", basis);
    auto e = parse_exponent("e", basis);
    g.generators = {ExponentVector{2, 0}, ExponentVector{pi, 0}, ExponentVector{1, 1}, ExponentVector{0, e}};
    auto ry = ray_intersection(g, 1);
    REQUIRE(ry.size() == 2);
    CHECK(((ry[0] == ExponentValue(2) && ry[1] == e) || (ry[1] == ExponentValue(2) && ry[0] == e)));
    auto rx = ray_intersection(g, 0);
    REQUIRE(rx.size() == 2);
    CHECK(((rx[0] == ExponentValue(2) && rx[1] == pi) || (rx[1] == ExponentValue(2) && rx[0] == pi)));
    auto m = is_member(ExponentVector{1, 1}, g);
    REQUIRE(m.member);
    // The witness reproduces the vector.
    ExponentVector sum = ExponentVector::zero(2);
    for (std::size_t j = 0; j < g.generators.size(); ++j)
      for (std::size_t i = 0; i < 2; ++i) sum[i] += g.generators[j][i].scaled(m.witness[j]);
    CHECK(sum == ExponentVector{1, 1});
    CHECK_FALSE(in_open_cone(ExponentVector{1, 1}, g));
    CHECK(in_open_cone(ExponentVector{2, 2}, g));
    CHECK(in_open_cone(ExponentVector{pi, e}, g));
    CHECK_FALSE(is_member(ExponentVector{0, 1}, g).member);
    CHECK(ray_projection_in_group(ExponentVector{3, e + ExponentValue(1)}, 0, g) == false);
  }
}
