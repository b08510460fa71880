#pragma once

#include <string>

#include "qpic/common.hpp"
#include "qpic/grid.hpp"
#include "qpic/synthesis.hpp"

namespace qpic {

// Run parameters, grouped the way the config sections are.
struct RunConfig {
  PhysicsParams physics;        // [physics] alpha_bar, T
  double state_a = 1.0;         // [state] a
  double state_b = 2.0;         // [state] b
  int n_steps = 1024;           // [grid] n_steps
  SynthesisOptions control;     // [control] n_basis, trust_radius, tol_res,
                                //           max_iter, r_max, continuation
  double asym_t_max = 2e-3;     // [asymptotics] t_max
  int asym_n_steps = 4096;      // [asymptotics] n_steps
  std::string out_dir = ".";    // [output] dir

  TimeGrid grid() const { return TimeGrid(physics.T, n_steps); }

  // Rejects values outside the mathematical domain (throws domain_error);
  // shape and parse problems surface earlier as config_error.
  void validate() const;
};

// INI-style parser: [section] headers, key = value lines, '#'/';' comments.
// Unknown sections or keys are config errors, as are malformed numbers.
RunConfig parse_config_ini(const std::string& text);

// The same schema as a JSON object of sections.
RunConfig parse_config_json(const std::string& text);

// Reads the file and dispatches on the .json extension, then validates.
RunConfig load_config(const std::string& path);

}  // namespace qpic
