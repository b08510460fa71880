#include "qpic/verification.hpp"

#include <algorithm>
#include <cmath>

#include "qpic/functional.hpp"
#include "qpic/kernels.hpp"
#include "qpic/volterra.hpp"

namespace qpic {

namespace {

VerifyCheck make_check(const std::string& name, double err, double tol) {
  return {name, err, tol, err <= tol};
}

// Second-order tolerance scaling from an anchor grid with T = 1: every
// identity below converges as h^2 (measured ratios 3.9-4.0 per halving), so
// the budget follows the same model with ~2x headroom over the anchor error.
double scaled_tol(double base, int anchor_steps, const TimeGrid& g) {
  const double ratio = g.h() * anchor_steps;
  return base * std::pow(std::max(ratio, 1.0e-6), 2.0);
}

}  // namespace

VerifyReport run_verification(const RunConfig& cfg) {
  cfg.validate();
  const PhysicsParams& p = cfg.physics;
  const TimeGrid g = cfg.grid();
  const AbelWeights aw(g);

  VerifyReport rep;

  // 1. Product-integration weights resolve the exact row sums 2 sqrt(t_n).
  {
    double worst = 0.0;
    for (int n = 1; n <= g.n_steps; ++n) {
      const double t = g.node(n);
      worst = std::max(worst,
                       std::abs(aw.row_sum(n) - 2.0 * std::sqrt(t)) /
                           (2.0 * std::sqrt(t)));
    }
    rep.checks.push_back(make_check("abel_row_sums", worst, 1e-12));
  }

  // 2. Bound-state charge: marching solve against the oscillator closed form.
  const auto greg = [&p](double s) { return bound_trace_reg(s, p); };
  {
    const std::vector<cplx> src = abel_source_singular(g, greg);
    const std::vector<double> pot(g.size(), p.alpha_bar);
    const ComplexSeries q = solve_charge(aw, g, src, pot);
    double worst = 0.0;
    for (int j = 0; j < g.size(); ++j) {
      const cplx exact = bound_charge_exact(g.node(j), p);
      worst = std::max(worst, std::abs(q.v[j] - exact) / std::abs(exact));
    }
    rep.checks.push_back(
        make_check("bound_charge", worst, scaled_tol(8e-5, 2048, g)));
  }

  // 3. Resolvent convolution reproduces the same charge by the dual route.
  //    The route integrates closed-form data with a fixed Gauss rule, so its
  //    error does not depend on the marching grid; the budget is flat.
  {
    const std::vector<cplx> q2 = charge_via_resolvent_singular(g, greg, p);
    double worst = 0.0;
    for (int j = 0; j < g.size(); ++j) {
      const cplx exact = bound_charge_exact(g.node(j), p);
      worst = std::max(worst, std::abs(q2[j] - exact) / std::abs(exact));
    }
    rep.checks.push_back(
        make_check("resolvent_convolution", worst, 1e-10));
  }

  // 4. The projection functional vanishes at zero control for the
  //    orthogonalized state.
  const RadialState st = make_initial_state(cfg.state_a, cfg.state_b, p);
  const FunctionalContext ctx(p, st, g);
  const ControlProfile zero(g.T, std::vector<double>(cfg.control.n_basis, 0.0));
  const ComplexSeries v0 = evaluate_V(ctx, zero);
  {
    const double err = std::abs(evaluate_F(ctx, v0));
    rep.checks.push_back(
        make_check("functional_at_zero", err, scaled_tol(5e-7, 4096, g)));
  }

  // 5. Closed zero-point derivative against the discrete Gateaux derivative.
  {
    double worst = 0.0;
    for (int k = 0; k < cfg.control.n_basis; ++k) {
      const std::vector<double> u = basis_on_grid(g, k);
      const cplx closed = d0F_closed(ctx, v0, u);
      const cplx discrete = gateaux_dF(ctx, zero, v0, u);
      worst = std::max(worst, std::abs(closed - discrete));
    }
    rep.checks.push_back(
        make_check("zero_point_derivative", worst, scaled_tol(6e-5, 4096, g)));
  }

  for (const VerifyCheck& c : rep.checks) rep.all_pass = rep.all_pass && c.pass;
  return rep;
}

}  // namespace qpic
