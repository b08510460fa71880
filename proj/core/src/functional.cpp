#include "qpic/functional.hpp"

#include <cmath>

#include "qpic/kernels.hpp"
#include "qpic/propagation.hpp"
#include "qpic/quadrature.hpp"

namespace qpic {

FunctionalContext::FunctionalContext(const PhysicsParams& p,
                                     const RadialState& s, const TimeGrid& g)
    : phys(p), grid(g), state(s), weights(g) {
  phys.validate();

  trace.resize(grid.size());
  for (int j = 0; j < grid.size(); ++j)
    trace[j] = free_prop_origin(state, grid.node(j));
  source = abel_source_smooth(weights, trace);

  pair_w = bound_pair_weights(grid, phys);

  overlap_T = overlap_freeprop_bound(state, grid.T, phys);
}

std::vector<cplx> bound_pair_weights(const TimeGrid& g,
                                     const PhysicsParams& p) {
  // trace_b(tau) = g(tau)/sqrt(tau) with g analytic in sqrt(tau): panel
  // moments of trace_b(T-s) against the linear hats are integrated in
  // v = sqrt(T-s), where the coefficient is analytic and Gauss-Legendre is
  // exact to machine precision.
  const int n = g.n_steps;
  const double h = g.h();
  std::vector<cplx> out(g.size(), cplx(0.0, 0.0));
  const GlRule& rule = gauss_legendre(8);
  for (int panel = 0; panel < n; ++panel) {
    const double va = std::sqrt(g.T - g.node(panel));
    const double vb = std::sqrt(std::max(0.0, g.T - g.node(panel + 1)));
    const double mid = 0.5 * (va + vb), rad = 0.5 * (va - vb);
    cplx m0 = 0.0, m1 = 0.0;
    for (std::size_t k = 0; k < rule.x.size(); ++k) {
      const double v = mid + rad * rule.x[k];
      const cplx gv = bound_trace_reg(v * v, p);
      m0 += rule.w[k] * gv;
      m1 += rule.w[k] * (va * va - v * v) * gv;
    }
    m0 *= 2.0 * rad;
    m1 *= 2.0 * rad / h;
    out[panel] += m0 - m1;
    out[panel + 1] += m1;
  }
  return out;
}

std::vector<double> basis_on_grid(const TimeGrid& g, int k) {
  if (k < 0) throw domain_error("basis_on_grid: negative index");
  std::vector<double> u(g.size());
  for (int j = 0; j < g.size(); ++j)
    u[j] = std::sin((k + 1) * kPi * g.node(j) / g.T);
  return u;
}

std::vector<double> potential_on_grid(const ControlProfile& alpha,
                                      const PhysicsParams& p,
                                      const TimeGrid& g) {
  std::vector<double> pot(g.size());
  for (int j = 0; j < g.size(); ++j)
    pot[j] = alpha.eval(g.node(j)) + p.alpha_bar;
  return pot;
}

ComplexSeries evaluate_V(const FunctionalContext& ctx,
                         const ControlProfile& alpha) {
  return solve_charge(ctx.weights, ctx.grid, ctx.source,
                      potential_on_grid(alpha, ctx.phys, ctx.grid));
}

cplx evaluate_F(const FunctionalContext& ctx, const ComplexSeries& v) {
  cplx pairing = 0.0;
  for (int j = 0; j < ctx.grid.size(); ++j) pairing += ctx.pair_w[j] * v.v[j];
  return ctx.overlap_T + cplx(0.0, 1.0) * pairing;
}

cplx evaluate_F(const FunctionalContext& ctx, const ControlProfile& alpha) {
  return evaluate_F(ctx, evaluate_V(ctx, alpha));
}

ComplexSeries gateaux_dV(const FunctionalContext& ctx,
                         const ControlProfile& alpha, const ComplexSeries& v,
                         const std::vector<double>& u_nodes) {
  if (int(u_nodes.size()) != ctx.grid.size())
    throw domain_error("gateaux_dV: direction sampled on a different grid");
  std::vector<cplx> vu(ctx.grid.size());
  for (int j = 0; j < ctx.grid.size(); ++j) vu[j] = v.v[j] * u_nodes[j];
  std::vector<cplx> src = abel_source_smooth(ctx.weights, vu);
  for (cplx& z : src) z = -z;
  return solve_charge(ctx.weights, ctx.grid, src,
                      potential_on_grid(alpha, ctx.phys, ctx.grid));
}

cplx gateaux_dF(const FunctionalContext& ctx, const ControlProfile& alpha,
                const ComplexSeries& v, const std::vector<double>& u_nodes) {
  const ComplexSeries dv = gateaux_dV(ctx, alpha, v, u_nodes);
  cplx pairing = 0.0;
  for (int j = 0; j < ctx.grid.size(); ++j) pairing += ctx.pair_w[j] * dv.v[j];
  return cplx(0.0, 1.0) * pairing;
}

cplx d0F_closed(const FunctionalContext& ctx, const ComplexSeries& v0,
                const std::vector<double>& u_nodes) {
  // The perturbation enters the charge equation with a minus sign
  // (dq = -(I + abar A)^{-1} A [u q]), and pairing the resolvent-solved
  // response against the final-time trace collapses, by time reversal, onto
  // the rotating bound charge as the dual weight.
  const double lambda = ctx.phys.lambda_bar();
  std::vector<cplx> integrand(ctx.grid.size());
  for (int j = 0; j < ctx.grid.size(); ++j) {
    const double tj = ctx.grid.node(j);
    integrand[j] = v0.v[j] * u_nodes[j] *
                   std::exp(cplx(0.0, -(ctx.grid.T - tj) * lambda));
  }
  const cplx integral = simpson_series(integrand, ctx.grid.h());
  return -4.0 * kPi * cplx(0.0, 1.0) *
         std::sqrt(2.0 * std::abs(ctx.phys.alpha_bar)) * integral;
}

std::vector<cplx> jacobian_columns(const FunctionalContext& ctx,
                                   const ControlProfile& alpha,
                                   const ComplexSeries& v, int n_basis) {
  if (n_basis < 1) throw domain_error("jacobian_columns: need n_basis >= 1");
  std::vector<cplx> cols(n_basis);
  const bool at_zero = alpha.is_zero();
  for (int k = 0; k < n_basis; ++k) {
    const std::vector<double> u = basis_on_grid(ctx.grid, k);
    cols[k] = at_zero ? d0F_closed(ctx, v, u) : gateaux_dF(ctx, alpha, v, u);
  }
  return cols;
}

std::array<double, 2> jacobian_sigma(const std::vector<cplx>& cols) {
  double a = 0.0, b = 0.0, c = 0.0;
  for (const cplx& z : cols) {
    a += z.real() * z.real();
    b += z.real() * z.imag();
    c += z.imag() * z.imag();
  }
  const double disc = std::sqrt((a - c) * (a - c) + 4.0 * b * b);
  const double s1 = std::sqrt(std::max(0.0, 0.5 * (a + c + disc)));
  const double s2 = std::sqrt(std::max(0.0, 0.5 * (a + c - disc)));
  return {s1, s2};
}

}  // namespace qpic
