#include <cstdlib>
#include <iostream>
#include <string>

#include "addcomp/acceptance.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 0;
  if (argc > 1) seed = std::stoull(argv[1]);
  bool ok = true;
  for (const auto& r : addcomp::acceptance::run_all(seed)) {
    std::cout << addcomp::acceptance::format_line(r) << std::endl;
    ok = ok && r.outcome == addcomp::acceptance::Outcome::Pass;
  }
  return ok ? EXIT_SUCCESS : EXIT_FAILURE;
}
