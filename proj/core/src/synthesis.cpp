#include "qpic/synthesis.hpp"

#include <cmath>
#include <vector>

namespace qpic {

namespace {

// Minimum-norm Gauss-Newton step: delta = -J^T (J J^T)^{-1} r with the 2 x 2
// normal matrix assembled from the complex columns.
std::vector<double> gn_step(const std::vector<cplx>& cols, cplx residual) {
  double a = 0.0, b = 0.0, c = 0.0;
  for (const cplx& z : cols) {
    a += z.real() * z.real();
    b += z.real() * z.imag();
    c += z.imag() * z.imag();
  }
  const double det = a * c - b * b;
  if (!(det > 0.0) || !std::isfinite(det))
    throw conditioning_error("gauss-newton normal matrix is singular");
  const double r1 = residual.real();
  const double r2 = residual.imag();
  const double y1 = (c * r1 - b * r2) / det;
  const double y2 = (-b * r1 + a * r2) / det;
  std::vector<double> delta(cols.size());
  for (std::size_t k = 0; k < cols.size(); ++k)
    delta[k] = -(cols[k].real() * y1 + cols[k].imag() * y2);
  return delta;
}

}  // namespace

ControlResult solve_control(const FunctionalContext& ctx, cplx target,
                            const SynthesisOptions& opt) {
  opt.validate();

  ControlResult out;
  std::vector<double> c(opt.n_basis, 0.0);
  out.alpha = ControlProfile(ctx.grid.T, c);

  ComplexSeries v = evaluate_V(ctx, out.alpha);
  cplx f = evaluate_F(ctx, v);
  {
    const std::vector<cplx> cols0 =
        jacobian_columns(ctx, out.alpha, v, opt.n_basis);
    out.sigma = jacobian_sigma(cols0);
  }
  if (out.sigma[1] < std::max(1e-8 * out.sigma[0], 1e-12))
    throw degenerate_error(
        "control directions do not span the target plane (rank collapse)");

  // The zero target is reached exactly by the zero control; the reported
  // residual is the measured value of |F(0)| on this grid, not a literal 0.
  if (target == cplx(0.0, 0.0)) {
    out.achieved = f;
    out.residual = std::abs(f);
    out.iterations = 0;
    out.converged = true;
    return out;
  }

  std::vector<double> ramp{1.0};
  if (opt.continuation && std::abs(target) > opt.trust_radius)
    ramp = {0.25, 0.5, 0.75, 1.0};

  int total_iter = 0;
  bool ok = true;
  for (double r : ramp) {
    const cplx z = r * target;
    bool stage_done = false;
    while (!stage_done && total_iter < opt.max_iter) {
      const double res = std::abs(f - z);
      if (res <= opt.tol_res) {
        stage_done = true;
        break;
      }
      ++total_iter;

      const ControlProfile alpha(ctx.grid.T, c);
      const std::vector<cplx> cols =
          jacobian_columns(ctx, alpha, v, opt.n_basis);
      const std::array<double, 2> sg = jacobian_sigma(cols);
      if (sg[1] < std::max(1e-8 * sg[0], 1e-12))
        throw degenerate_error("jacobian rank collapse during iteration");

      const std::vector<double> delta = gn_step(cols, f - z);
      double lam = 1.0;
      bool accepted = false;
      for (int halve = 0; halve <= 30; ++halve, lam *= 0.5) {
        std::vector<double> ct(c);
        for (int k = 0; k < opt.n_basis; ++k) ct[k] += lam * delta[k];
        const ControlProfile trial(ctx.grid.T, ct);
        if (trial.h1_norm() > opt.r_max) continue;
        const ComplexSeries vt = evaluate_V(ctx, trial);
        const cplx ft = evaluate_F(ctx, vt);
        if (std::abs(ft - z) < res) {
          c = ct;
          v = vt;
          f = ft;
          accepted = true;
          break;
        }
      }
      if (!accepted) break;  // stalled against the damping or the H^1 cap
    }
    if (std::abs(f - z) > opt.tol_res) {
      ok = false;
      break;
    }
  }

  out.alpha = ControlProfile(ctx.grid.T, c);
  out.achieved = f;
  out.residual = std::abs(f - target);
  out.iterations = total_iter;
  out.converged = ok && out.residual <= opt.tol_res;
  return out;
}

}  // namespace qpic
