#pragma once

#include <array>

#include "qpic/common.hpp"
#include "qpic/functional.hpp"
#include "qpic/grid.hpp"

namespace qpic {

struct SynthesisOptions {
  int n_basis = 8;
  double trust_radius = 0.05;  // |target| magnitude the plain solve trusts
  double tol_res = 1e-8;
  int max_iter = 100;
  double r_max = 1.0;          // cap on the H^1 norm of the control
  bool continuation = false;   // ramp the target through r*z, r = 1/4..1

  void validate() const {
    if (n_basis < 2) throw domain_error("n_basis must be at least 2");
    if (!(trust_radius > 0.0) || !(tol_res > 0.0) || !(r_max > 0.0))
      throw domain_error("synthesis tolerances must be positive");
    if (max_iter < 1) throw domain_error("max_iter must be positive");
  }
};

struct ControlResult {
  ControlProfile alpha;
  cplx achieved{};
  double residual = 0.0;
  int iterations = 0;
  std::array<double, 2> sigma{0.0, 0.0};  // jacobian at the starting point
  bool converged = false;
};

// Damped Gauss-Newton on the 2-D residual (Re F - Re z, Im F - Im z) over the
// sine-coefficient vector, with minimum-norm steps through the 2 x 2 normal
// matrix, step halving against the residual and the H^1 cap, and an optional
// target ramp. A rank collapse of the Jacobian throws degenerate_error; a
// stalled solve returns converged = false with the best point found.
// target = 0 is exact with the zero control and returns immediately.
ControlResult solve_control(const FunctionalContext& ctx, cplx target,
                            const SynthesisOptions& opt);

}  // namespace qpic
