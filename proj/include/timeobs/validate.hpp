#pragma once

#include <string>
#include <vector>

namespace timeobs {

struct ValidationCase {
  std::string name;
  double main_value = 0.0;
  double oracle_value = 0.0;
  double rel_diff = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// The standard ten-case cross-check: weights, POVM masses and cosmological
// dwell times against the independent grid oracles, each at 1e-3 relative.
std::vector<ValidationCase> run_validation_suite();

}  // namespace timeobs
