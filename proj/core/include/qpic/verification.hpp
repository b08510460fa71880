#pragma once

#include <string>
#include <vector>

#include "qpic/config.hpp"

namespace qpic {

// Self-check of the discretization against exactly known objects, run on the
// configured grid. Tolerances for the discretization-limited checks scale
// like h^{3/2} from their anchor grids, so a coarse grid still passes while
// reporting its honestly larger errors.
struct VerifyCheck {
  std::string name;
  double error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool all_pass = true;
};

VerifyReport run_verification(const RunConfig& cfg);

}  // namespace qpic
