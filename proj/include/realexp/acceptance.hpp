#pragma once

#include <cstdint>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "realexp/certificates.hpp"

namespace realexp::acceptance {

enum class Depth { Small, Full };

struct Options {
  Depth depth = Depth::Full;
  std::uint64_t seed = 20260917;
  std::size_t workers = 1;
  /// Criteria whose inputs are deliberately corrupted; they must fail.
  std::set<int> corrupt;
  /// Run only these criteria (all when empty).
  std::set<int> only;
};

struct Result {
  int id = 0;
  std::string name;
  bool passed = false;
  double seconds = 0;
  double budget = 0;
  std::string detail;
};

/// Wall-clock budget of criterion `id` in seconds.
double budget(int id);
std::string name(int id);
inline constexpr int kCriteria = 10;

Result run_criterion(int id, const Options& options);
std::vector<Result> run_all(const Options& options);

/// "PASS  C3  orthant resolutions  (0.42 s / 30 s)  detail".
std::string format(const Result& r);

/// Homology at a single degree, built from direct interval membership and a
/// dense rank computation; independent of the cell machinery.
std::vector<int> oracle_homology(const BoxComplex& c, const ExponentVector& degree, int min_degree,
                                 int max_degree);

}  // namespace realexp::acceptance
