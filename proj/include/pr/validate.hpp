#pragma once

#include <string>
#include <vector>

#include "pr/types.hpp"

namespace pr {

struct PropertyResult {
  std::string name;
  double max_residual;
  double threshold;
  bool pass;
};

// Sampled algebraic-identity and structural-property suites for every
// registered robot, plus the controller/trajectory/serialization invariants.
std::vector<PropertyResult> run_validation(int samples, unsigned seed);

bool all_pass(const std::vector<PropertyResult>& results);

}  // namespace pr
