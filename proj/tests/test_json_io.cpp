#include <doctest.h>

#include <algorithm>

#include "realexp/errors.hpp"
#include "realexp/json_io.hpp"

using namespace realexp;
using io::Json;

TEST_SUITE("json_io") {
  TEST_CASE("exponents") {
    auto basis = ConstantBasis::standard();
    CHECK(io::to_json(parse_exponent("2+e")) == Json("2+e"));
    CHECK(io::exponent_from_json(Json(3), basis) == ExponentValue(3));
    CHECK(io::exponent_from_json(Json{{"1", "1/2"}, {"pi", 2}}, basis) == parse_exponent("1/2+2*pi"));
    CHECK_THROWS_AS(io::exponent_from_json(Json::array(), basis), Error);
  }

  TEST_CASE("groups and boxes round trip") {
    auto g = ExponentGroup::rational_lattice(2, 3);
    auto back = io::group_from_json(io::to_json(g));
    CHECK(back.n == 2);
    CHECK(is_member(ExponentVector{Rational(1, 3), 0}, back).member);
    auto box = BoxModule({IntervalSpec::make(0, false, parse_exponent("pi"), true), IntervalSpec::ray(1)});
    CHECK(io::box_from_json(io::to_json(box), ConstantBasis::standard()) == box);
  }

  TEST_CASE("complexes round trip") {
    auto c = ordinary_koszul(ExponentVector{1, parse_exponent("e")});
    CHECK(io::complex_from_json(io::to_json(c), ConstantBasis::standard()) == c);
    auto d = dualize_free(c);
    CHECK(io::complex_from_json(io::to_json(d), ConstantBasis::standard()) == d);
  }

  TEST_CASE("homology outputs") {
    auto t = homology(open_koszul(2));
    auto j = io::to_json(t);
    CHECK(j.at("schema") == "realexp.homology/1");
    CHECK(j.at("cells").size() == 9);
    auto csv = io::to_csv(t);
    CHECK(csv.rfind("cell,H0,H1,H2\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 10);
    CHECK(io::to_grid(t).find("H2:") != std::string::npos);
    CHECK_THROWS_AS(io::to_grid(homology(open_koszul(3))), Error);
  }

  TEST_CASE("sequence round trip") {
    auto s = TruncationSequence::geometric(ExponentVector{1, 3}, 3, 3);
    s.entries[0][1] = parse_exponent("pi");
    auto back = io::sequence_from_json(io::to_json(s), ConstantBasis::standard());
    CHECK(back.entries == s.entries);
  }

  TEST_CASE("certificates re-verify and reject tampering") {
    auto j = io::to_json(ext_n_plus_1(2, 4));
    CHECK(j.at("parameters").at("K_max") == 4);
    CHECK(io::reverify(j));
    auto tampered = j;
    tampered["status"] = "verified-up-to-K99";
    CHECK_FALSE(io::reverify(tampered));
    auto broken = j;
    broken["parameters"].erase("sequence");
    CHECK_FALSE(io::reverify(broken));
  }

  TEST_CASE("error report") {
    auto e = io::error_json("NotInGroup", "bad");
    CHECK(e.at("error").at("code") == "NotInGroup");
    CHECK(e.at("error").at("message") == "bad");
  }
}
