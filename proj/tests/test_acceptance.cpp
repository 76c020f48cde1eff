#include <doctest.h>

#include <random>

#include "realexp/acceptance.hpp"

using namespace realexp;
using namespace realexp::acceptance;

TEST_SUITE("acceptance harness") {
  TEST_CASE("every corrupted criterion fails") {
    for (int id = 1; id <= kCriteria; ++id) {
      Options o;
      o.depth = Depth::Small;
      o.corrupt = {id};
      auto r = run_criterion(id, o);
      CHECK_MESSAGE(!r.passed, "C" << id << " passed on corrupted input");
      CHECK(format(r).rfind("FAIL  C" + std::to_string(id), 0) == 0);
    }
  }

  TEST_CASE("oracle matches hand values") {
    auto c = open_koszul(1);
    CHECK(oracle_homology(c, ExponentVector{0}, 0, 1) == std::vector<int>{1, 0});
    CHECK(oracle_homology(c, ExponentVector{1}, 0, 1) == std::vector<int>{0, 0});
    auto k = ordinary_koszul(ExponentVector{1, 1});
    CHECK(oracle_homology(k, ExponentVector{Rational(1, 2), 0}, 0, 2) == std::vector<int>{1, 0, 0});
    CHECK(oracle_homology(k, ExponentVector{Rational(1, 2), 1}, 0, 2) == std::vector<int>{0, 0, 0});
  }

  TEST_CASE("budgets are pinned") {
    const double expected[] = {5, 1, 30, 10, 30, 60, 1, 60, 60, 60};
    for (int id = 1; id <= kCriteria; ++id) CHECK(budget(id) == expected[id - 1]);
  }
}
