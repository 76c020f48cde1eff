#include <iostream>
#include <thread>

#include "realexp/acceptance.hpp"

int main(int argc, char** argv) {
  using namespace realexp::acceptance;
  Options options;
  options.depth = Depth::Full;
  options.workers = std::max(1u, std::thread::hardware_concurrency());
  for (int i = 1; i < argc; ++i)
    if (std::string(argv[i]) == "--small") options.depth = Depth::Small;
  int failures = 0;
  for (int id = 1; id <= kCriteria; ++id) {
    auto r = run_criterion(id, options);
    std::cout << format(r) << std::endl;
    if (!r.passed) ++failures;
  }
  std::cout << (failures ? "acceptance: " + std::to_string(failures) + " criteria failed" : std::string("acceptance: all criteria passed"))
            << std::endl;
  return failures ? 1 : 0;
}
