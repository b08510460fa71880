#include "qpic/asymptotics.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "qpic/kernels.hpp"
#include "qpic/propagation.hpp"
#include "qpic/quadrature.hpp"
#include "qpic/volterra.hpp"

namespace qpic {

namespace {

// Straight-line least squares through (x_i, y_i).
void lsq_line(const std::vector<double>& x, const std::vector<double>& y,
              double& slope, double& intercept) {
  const double n = double(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double det = n * sxx - sx * sx;
  slope = (n * sxy - sx * sy) / det;
  intercept = (sy * sxx - sx * sxy) / det;
}

// Least squares of y on three regressor columns (rows of ph) via the 3 x 3
// normal equations, solved by Cramer's rule.
void lsq_design3(const std::vector<std::array<double, 3>>& ph,
                 const std::vector<double>& y, double& c0, double& c1,
                 double& c2) {
  double m[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
  double r[3] = {0, 0, 0};
  for (std::size_t i = 0; i < ph.size(); ++i) {
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) m[a][b] += ph[i][a] * ph[i][b];
      r[a] += ph[i][a] * y[i];
    }
  }
  auto det3 = [](const double a[3][3]) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
           a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  };
  const double d = det3(m);
  if (std::abs(d) < 1e-300)
    throw conditioning_error("fit normal matrix is singular");
  double mc[3][3];
  double* c[3] = {&c0, &c1, &c2};
  for (int k = 0; k < 3; ++k) {
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) mc[a][b] = (b == k) ? r[a] : m[a][b];
    *c[k] = det3(mc) / d;
  }
}

// Least squares of y on the design [1, sqrt(t), t].
void lsq_one_sqrt_lin(const std::vector<double>& t,
                      const std::vector<double>& y, double& c0, double& c1,
                      double& c2) {
  std::vector<std::array<double, 3>> ph(t.size());
  for (std::size_t i = 0; i < t.size(); ++i)
    ph[i] = {1.0, std::sqrt(t[i]), t[i]};
  lsq_design3(ph, y, c0, c1, c2);
}

// Unwraps a phase sequence in place (consecutive jumps folded into (-pi, pi]).
void unwrap(std::vector<double>& th) {
  for (std::size_t i = 1; i < th.size(); ++i) {
    const double d = std::remainder(th[i] - th[i - 1], 2.0 * kPi);
    th[i] = th[i - 1] + d;
  }
}

double circular_distance(double a, double b) {
  return std::abs(std::remainder(a - b, 2.0 * kPi));
}

// Window nodes: indices j with t_lo <= t_j <= t_hi and nonzero magnitude.
std::vector<int> window_nodes(const TimeGrid& g, const std::vector<cplx>& v,
                              double t_lo, double t_hi) {
  std::vector<int> idx;
  for (int j = 0; j <= g.n_steps; ++j) {
    const double t = g.node(j);
    if (t >= t_lo && t <= t_hi && std::abs(v[j]) > 0.0) idx.push_back(j);
  }
  if (idx.size() < 8)
    throw domain_error("fit window holds too few usable nodes");
  return idx;
}

}  // namespace

LeadingOrder leading_order_and_coefficient(const RadialState& s) {
  const double pref = std::sqrt(2.0 / kPi);
  for (int m = 0; m <= 8; ++m) {
    auto mom = [&s, m](double k) -> cplx {
      return cplx(std::pow(k, 2 * m + 2) * s.fourier_at(k), 0.0);
    };
    auto mom_abs = [&s, m](double k) -> cplx {
      return cplx(std::pow(k, 2 * m + 2) * std::abs(s.fourier_at(k)), 0.0);
    };
    // Orient the absolute tolerance with a coarse positive-integrand pass.
    const double rough =
        std::abs(gl_apply(gauss_legendre(64), mom_abs, 0.0, s.kmax));
    const double tol = std::max(1e-280, 1e-13 * rough);
    const double mm = integrate_adaptive(mom, 0.0, s.kmax, tol).value.real();
    const double mass =
        integrate_adaptive(mom_abs, 0.0, s.kmax, tol).value.real();

    double fact = 1.0;
    for (int q = 2; q <= m; ++q) fact *= q;
    LeadingOrder lo;
    lo.m = m;
    lo.mass = pref * mass / fact;
    if (mass > 0.0 && std::abs(mm) >= 1e-10 * mass) {
      // (-i)^m cycles through {1, -i, -1, i}.
      static const cplx mi[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
      lo.a_m = pref * (mi[m % 4] * mm) / fact;
      return lo;
    }
  }
  throw degenerate_error(
      "every momentum moment through order 8 cancels; no leading term");
}

ExpansionConstants expansion_constants(int m, const PhysicsParams& p) {
  if (m < 0) throw domain_error("expansion_constants: negative order");
  p.validate();
  ExpansionConstants ec;
  ec.A = 4.0 * kSqrtPi * std::beta(double(m + 1), 0.5);
  ec.B = 4.0 * kPi / (m + 1);
  ec.b0 = p.b0();
  ec.c = ec.B / ec.A * std::abs(ec.b0);
  return ec;
}

PowerFit fit_charge_smalltime(const TimeGrid& g, const std::vector<cplx>& v0,
                              const LeadingOrder& lo,
                              const ExpansionConstants& ec, double t_lo,
                              double t_hi) {
  const std::vector<int> idx = window_nodes(g, v0, t_lo, t_hi);
  PowerFit out;
  out.n_used = int(idx.size());
  out.expected_exponent = lo.m + 0.5;
  out.expected_amplitude = ec.A * std::abs(lo.a_m);
  out.expected_second = ec.B * lo.a_m * kRootI * ec.b0;

  // The displayed second term rides on the leading power as the known factor
  // 1 + (B/A) b0 sqrt(t); dividing it out before the log-log regression stops
  // its slope bias from leaking into the exponent and, through the intercept
  // lever arm at t = 1, into the amplitude.
  // A linear-in-t nuisance column soaks up the next remainder order
  // O(t^{m+3/2}) (relative O(t) on the window), which would otherwise bias
  // the exponent and, through the intercept lever arm at t = 1, the
  // amplitude.
  const cplx corr = ec.B / ec.A * ec.b0;
  const double t_cap = g.node(idx.back());
  std::vector<std::array<double, 3>> ph;
  std::vector<double> y;
  ph.reserve(idx.size());
  y.reserve(idx.size());
  for (int j : idx) {
    const double t = g.node(j);
    ph.push_back({1.0, std::log(t), t / t_cap});
    y.push_back(
        std::log(std::abs(v0[j]) / std::abs(1.0 + corr * std::sqrt(t))));
  }
  double icpt, slope, nuis;
  lsq_design3(ph, y, icpt, slope, nuis);
  out.exponent = slope;
  out.amplitude = std::exp(icpt);

  const cplx lead_coeff = ec.A * lo.a_m * kRootI;
  cplx acc = 0.0;
  for (int j : idx) {
    const double t = g.node(j);
    acc += (v0[j] - lead_coeff * std::pow(t, lo.m + 0.5)) /
           std::pow(t, lo.m + 1.0);
  }
  out.second_coeff = acc / double(idx.size());
  return out;
}

ArgFit arg_expansion_check(const TimeGrid& g, const std::vector<cplx>& v0,
                           const LeadingOrder& lo, const ExpansionConstants& ec,
                           const PhysicsParams& p, double t_lo, double t_hi) {
  const std::vector<int> idx = window_nodes(g, v0, t_lo, t_hi);
  const double lambda = p.lambda_bar();

  std::vector<double> th;
  std::vector<double> ts;
  th.reserve(idx.size());
  ts.reserve(idx.size());
  for (int j : idx) {
    const double t = g.node(j);
    th.push_back(std::arg(v0[j] * std::exp(cplx(0.0, -(p.T - t) * lambda))));
    ts.push_back(t);
  }
  unwrap(th);
  for (std::size_t i = 0; i < th.size(); ++i) th[i] -= lambda * ts[i];

  ArgFit out;
  out.n_used = int(idx.size());
  lsq_one_sqrt_lin(ts, th, out.intercept, out.sqrt_slope, out.t_slope);
  out.model_intercept = std::arg(lo.a_m * kRootI) - p.T * lambda;
  out.model_sqrt = ec.c / std::sqrt(2.0);
  out.intercept_err = circular_distance(out.intercept, out.model_intercept);
  out.sqrt_rel_err =
      std::abs(out.sqrt_slope - out.model_sqrt) / std::abs(out.model_sqrt);
  return out;
}

WitnessResult noncontrollability_witness(const TimeGrid& g,
                                         const std::vector<cplx>& v0,
                                         const PhysicsParams& p) {
  const double lambda = p.lambda_bar();
  std::vector<double> th;
  th.reserve(v0.size());
  for (int j = 0; j <= g.n_steps; ++j) {
    if (std::abs(v0[j]) < 1e-12) continue;
    const double t = g.node(j);
    th.push_back(std::arg(v0[j] * std::exp(cplx(0.0, -(p.T - t) * lambda))));
  }
  if (th.size() < 2)
    throw degenerate_error(
        "charge magnitude sits below the phase floor on the whole grid");
  unwrap(th);
  WitnessResult out;
  out.n_used = int(th.size());
  for (std::size_t i = 1; i < th.size(); ++i)
    out.total_variation += std::abs(th[i] - th[i - 1]);
  out.violates = out.total_variation >= 1e-3;
  return out;
}

ShiftedFit shifted_expansion(const FunctionalContext& ctx, double tau_max,
                             int n_fine) {
  // Restart point: earliest node where the trace reaches half its peak.
  double peak = 0.0;
  for (const cplx& z : ctx.trace) peak = std::max(peak, std::abs(z));
  if (!(peak > 0.0))
    throw degenerate_error("origin trace vanishes; no restart point");
  int j0 = -1;
  for (int j = 0; j <= ctx.grid.n_steps; ++j) {
    if (std::abs(ctx.trace[j]) >= 0.5 * peak) {
      j0 = j;
      break;
    }
  }
  ShiftedFit out;
  out.t0 = ctx.grid.node(j0);
  out.a0 = ctx.trace[j0];

  const TimeGrid fine(tau_max, n_fine);
  const AbelWeights aw(fine);
  std::vector<cplx> tr(fine.size());
  for (int j = 0; j < fine.size(); ++j)
    tr[j] = free_prop_origin(ctx.state, out.t0 + fine.node(j));
  const std::vector<cplx> vt =
      charge_via_resolvent_smooth(aw, fine, tr, ctx.phys);

  const double t_lo = 50.0 * fine.h();
  const double t_hi = std::min(1e-3, 0.5 * tau_max);
  const std::vector<int> idx = window_nodes(fine, vt, t_lo, t_hi);
  out.n_used = int(idx.size());

  // Same second-order correction as in fit_charge_smalltime, with the m = 0
  // constants that govern a restart from a non-vanishing trace value.
  const ExpansionConstants ec0 = expansion_constants(0, ctx.phys);
  const cplx corr = ec0.B / ec0.A * ec0.b0;
  std::vector<double> x, y, ts, th;
  for (int j : idx) {
    const double t = fine.node(j);
    x.push_back(std::log(t));
    y.push_back(
        std::log(std::abs(vt[j]) / std::abs(1.0 + corr * std::sqrt(t))));
    ts.push_back(t);
    th.push_back(std::arg(vt[j]));
  }
  double slope, icpt;
  lsq_line(x, y, slope, icpt);
  out.exponent = slope;
  out.amplitude = std::exp(icpt);
  out.expected_amplitude = 8.0 * kSqrtPi * std::abs(out.a0);

  unwrap(th);
  double c0f, c1f, c2f;
  lsq_one_sqrt_lin(ts, th, c0f, c1f, c2f);
  out.sqrt_slope = c1f;
  const double c0 = 0.5 * kSqrtPi * ctx.phys.mu();
  out.model_sqrt = c0 / std::sqrt(2.0);
  out.intercept_err = circular_distance(c0f, std::arg(out.a0 * kRootI));
  return out;
}

AsymptoticsReport run_asymptotics(const FunctionalContext& ctx, double t_max,
                                  int n_fine) {
  AsymptoticsReport rep;
  rep.lo = leading_order_and_coefficient(ctx.state);
  rep.ec = expansion_constants(rep.lo.m, ctx.phys);

  rep.fine = TimeGrid(t_max, n_fine);
  const AbelWeights aw(rep.fine);
  std::vector<cplx> tr(rep.fine.size());
  for (int j = 0; j < rep.fine.size(); ++j)
    tr[j] = free_prop_origin(ctx.state, rep.fine.node(j));
  const std::vector<cplx> src = abel_source_smooth(aw, tr);
  const std::vector<double> pot(rep.fine.size(), ctx.phys.alpha_bar);
  rep.v0_fine = solve_charge(aw, rep.fine, src, pot).v;

  const double t_lo = 50.0 * rep.fine.h();
  const double t_hi = std::min(1e-3, 0.05 * ctx.phys.T);
  rep.power = fit_charge_smalltime(rep.fine, rep.v0_fine, rep.lo, rep.ec, t_lo,
                                   t_hi);
  rep.argfit = arg_expansion_check(rep.fine, rep.v0_fine, rep.lo, rep.ec,
                                   ctx.phys, t_lo, t_hi);

  // Witness on the production grid, where the full horizon is visible.
  const std::vector<double> pot_full(ctx.grid.size(), ctx.phys.alpha_bar);
  const ComplexSeries v0_full =
      solve_charge(ctx.weights, ctx.grid, ctx.source, pot_full);
  rep.witness = noncontrollability_witness(ctx.grid, v0_full.v, ctx.phys);

  rep.shifted = shifted_expansion(ctx, t_max, n_fine);
  return rep;
}

}  // namespace qpic
