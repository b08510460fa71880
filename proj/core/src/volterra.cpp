#include "qpic/volterra.hpp"

#include <cmath>

#include "qpic/kernels.hpp"
#include "qpic/quadrature.hpp"

namespace qpic {

namespace {

// Hat-function moments over one unit panel at distance d from the singular
// end, in units of sqrt(h). Closed forms cancel badly once d is large, so a
// 1/d expansion takes over there.
void panel_weights(int d, double& left, double& right) {
  if (d < 128) {
    const double dd = d;
    const double dp = d + 1.0;
    const double sd = std::sqrt(dd);
    const double sp = std::sqrt(dp);
    left = (2.0 / 3.0) * (dp * sp + 2.0 * dd * sd - 3.0 * dd * sp);
    right = (2.0 / 3.0) * (2.0 * dp * sp + dd * sd - 3.0 * dp * sd);
  } else {
    const double x = 1.0 / d;
    const double fl =
        x * x *
        (0.75 +
         x * (-0.25 +
              x * (0.140625 +
                   x * (-0.09375 + x * (0.068359375 - 0.052734375 * x)))));
    const double fr =
        x * x *
        (0.75 +
         x * (-0.125 +
              x * (0.046875 +
                   x * (-0.0234375 + x * (0.013671875 - 0.0087890625 * x)))));
    const double d32 = d * std::sqrt(double(d));
    left = (2.0 / 3.0) * d32 * fl;
    right = (2.0 / 3.0) * d32 * fr;
  }
}

}  // namespace

AbelWeights::AbelWeights(const TimeGrid& g) : h(g.h()) {
  const int n = g.n_steps;
  c1.resize(n);
  c2.resize(n);
  const double sh = std::sqrt(h);
  for (int d = 0; d < n; ++d) {
    double l, r;
    panel_weights(d, l, r);
    c1[d] = sh * l;
    c2[d] = sh * r;
  }
}

double AbelWeights::w(int n, int j) const {
  if (n < 1 || j < 0 || j > n) throw domain_error("AbelWeights::w: bad index");
  if (j == 0) return c1[n - 1];
  if (j == n) return c2[0];
  return c1[n - 1 - j] + c2[n - j];
}

double AbelWeights::row_sum(int n) const {
  double s = 0.0;
  for (int j = 0; j <= n; ++j) s += w(n, j);
  return s;
}

cplx abel_row_apply(const AbelWeights& aw, const std::vector<cplx>& u, int n) {
  if (n == 0) return 0.0;
  cplx acc = aw.c1[n - 1] * u[0] + aw.c2[0] * u[n];
  for (int j = 1; j < n; ++j) acc += (aw.c1[n - 1 - j] + aw.c2[n - j]) * u[j];
  return acc;
}

std::vector<cplx> double_singular_apply(const TimeGrid& g,
                                        const std::vector<cplx>& gs) {
  const int n_max = g.n_steps;
  const double h = g.h();
  std::vector<cplx> out(n_max + 1);
  out[0] = kPi * gs[0];
  std::vector<double> m0(n_max + 1), m1(n_max + 1);
  for (int n = 1; n <= n_max; ++n) {
    const double t = h * n;
    for (int j = 0; j <= n; ++j) {
      const double sj = h * j;
      const double ratio = std::min(1.0, double(j) / double(n));
      const double as = std::asin(std::sqrt(ratio));
      m0[j] = 2.0 * as;
      m1[j] = t * as - std::sqrt(std::max(0.0, sj * (t - sj)));
    }
    cplx acc = 0.0;
    for (int p = 0; p < n; ++p) {
      const double dm0 = m0[p + 1] - m0[p];
      const double dm1 = m1[p + 1] - m1[p];
      const double sp = h * p;
      const double sp1 = h * (p + 1);
      acc += gs[p] * ((sp1 * dm0 - dm1) / h) + gs[p + 1] * ((dm1 - sp * dm0) / h);
    }
    out[n] = acc;
  }
  return out;
}

std::vector<cplx> abel_source_smooth(const AbelWeights& aw,
                                     const std::vector<cplx>& trace) {
  std::vector<cplx> out(trace.size());
  out[0] = 0.0;
  for (int n = 1; n < int(trace.size()); ++n)
    out[n] = kFourSqrtPiI * abel_row_apply(aw, trace, n);
  return out;
}

// int_0^t g(s) / (sqrt(s) sqrt(t-s)) ds = 2 int_0^{pi/2} g(t sin^2 th) dth.
// For g analytic in sqrt(s) the theta-integrand is analytic on the closed
// interval, so Gauss-Legendre converges geometrically; 48 points reach
// machine precision for every row at once.
static std::vector<cplx> double_singular_rows(
    const TimeGrid& g, const std::function<cplx(double)>& g_reg) {
  const GlRule& rule = gauss_legendre(48);
  const int m = static_cast<int>(rule.x.size());
  std::vector<double> sin2(m);
  for (int k = 0; k < m; ++k) {
    const double sn = std::sin(0.25 * kPi * (rule.x[k] + 1.0));
    sin2[k] = sn * sn;
  }
  std::vector<cplx> out(g.size());
  out[0] = kPi * g_reg(0.0);
  for (int n = 1; n <= g.n_steps; ++n) {
    const double t = g.node(n);
    cplx acc = 0.0;
    for (int k = 0; k < m; ++k) acc += rule.w[k] * g_reg(t * sin2[k]);
    out[n] = acc * (0.5 * kPi);
  }
  return out;
}

std::vector<cplx> abel_source_singular(
    const TimeGrid& g, const std::function<cplx(double)>& g_reg) {
  std::vector<cplx> out = double_singular_rows(g, g_reg);
  for (cplx& v : out) v *= kFourSqrtPiI;
  return out;
}

ComplexSeries solve_charge(const AbelWeights& aw, const TimeGrid& g,
                           const std::vector<cplx>& source,
                           const std::vector<double>& potential) {
  if (int(source.size()) != g.size() || int(potential.size()) != g.size())
    throw domain_error("solve_charge: size mismatch");
  ComplexSeries q(g);
  std::vector<cplx> kq(g.size());  // kappa_j * q_j, filled as we march

  q.v[0] = source[0];
  kq[0] = kFourSqrtPiI * potential[0] * q.v[0];
  const double diag_w = aw.c2[0];  // (4/3) sqrt(h)
  for (int n = 1; n <= g.n_steps; ++n) {
    cplx s = aw.c1[n - 1] * kq[0];
    for (int j = 1; j < n; ++j) s += (aw.c1[n - 1 - j] + aw.c2[n - j]) * kq[j];
    const cplx kappa_n = kFourSqrtPiI * potential[n];
    const cplx diag = 1.0 + kappa_n * diag_w;
    if (std::abs(diag) < 1e-12)
      throw conditioning_error("solve_charge: vanishing diagonal");
    q.v[n] = (source[n] - s) / diag;
    kq[n] = kappa_n * q.v[n];
  }
  return q;
}

ComplexSeries picard_iterate(const AbelWeights& aw, const TimeGrid& g,
                             const std::vector<cplx>& source,
                             const std::vector<double>& potential,
                             int n_iter) {
  if (n_iter < 0) throw domain_error("picard_iterate: negative count");
  ComplexSeries x(g);
  x.v = source;
  std::vector<cplx> kx(g.size()), next(g.size());
  for (int it = 0; it < n_iter; ++it) {
    for (int j = 0; j < g.size(); ++j)
      kx[j] = kFourSqrtPiI * potential[j] * x.v[j];
    next[0] = source[0];
    for (int n = 1; n <= g.n_steps; ++n)
      next[n] = source[n] - abel_row_apply(aw, kx, n);
    x.v = next;
  }
  return x;
}

double picard_gamma(double m_sup, double t_horizon) {
  if (m_sup < 0.0 || t_horizon < 0.0)
    throw domain_error("picard_gamma: negative argument");
  const double x = 4.0 * kPi * m_sup * std::sqrt(t_horizon);
  if (x == 0.0) return 1.0;
  const double x2 = x * x;
  double e = 1.0;               // x^{2m} / m!
  double o = 2.0 * x / kSqrtPi;  // x^{2m+1} / Gamma(m + 3/2)
  double sum = e + o;
  for (int m = 1; m < 100000; ++m) {
    e *= x2 / m;
    o *= x2 / (m + 0.5);
    sum += e + o;
    if (e + o < 1e-17 * sum) break;
  }
  return sum;
}

double picard_tail(double m_sup, double t_horizon, int n_terms, double f_sup) {
  if (n_terms < 0) throw domain_error("picard_tail: negative term count");
  const double x = 4.0 * kPi * m_sup * std::sqrt(t_horizon);
  if (x == 0.0) return 0.0;
  const double lx = std::log(x);
  double tail = 0.0;
  for (int n = n_terms + 1; n < n_terms + 100000; ++n) {
    const double term = std::exp(n * lx - std::lgamma(0.5 * n + 1.0));
    tail += term;
    if (n > 4.0 * x * x + 8.0 && term < 1e-20 * (tail + 1.0)) break;
  }
  return f_sup * tail;
}

double charge_stability_bound(double diff_sup, double m_sup, double t_horizon,
                              double v_beta_sup) {
  return picard_gamma(m_sup, t_horizon) * 4.0 * kSqrtPi * diff_sup * 2.0 *
         std::sqrt(t_horizon) * v_beta_sup;
}

std::vector<cplx> charge_via_resolvent_smooth(const AbelWeights& aw,
                                              const TimeGrid& g,
                                              const std::vector<cplx>& trace,
                                              const PhysicsParams& p) {
  const int n_max = g.n_steps;
  const double h = g.h();
  std::vector<cplx> gsv(n_max + 1);
  for (int d = 0; d <= n_max; ++d) gsv[d] = kernel_G_smooth(h * d, p);

  std::vector<cplx> out(n_max + 1);
  out[0] = 0.0;
  const cplx pref = 4.0 * kPi * kRootI;
  for (int n = 1; n <= n_max; ++n) {
    const cplx sing = abel_row_apply(aw, trace, n) / kSqrtPi;
    cplx sm = 0.5 * (gsv[n] * trace[0] + gsv[0] * trace[n]);
    for (int j = 1; j < n; ++j) sm += gsv[n - j] * trace[j];
    out[n] = pref * (sing + sm * h);
  }
  return out;
}

std::vector<cplx> charge_via_resolvent_singular(
    const TimeGrid& g, const std::function<cplx(double)>& g_reg,
    const PhysicsParams& p) {
  // q(t) = 4 pi sqrt(i) int_0^t G(t-s) g_reg(s)/sqrt(s) ds, split along
  // G(t) = 1/sqrt(pi t) + G_sm(t). Under s = t sin^2(theta) both pieces are
  // analytic on the closed interval (the kernel and the regularized trace are
  // analytic in the square roots of their arguments), so Gauss-Legendre
  // converges geometrically. No product-integration weights are involved:
  // this route is discretized independently of the marching solver.
  const GlRule& rule = gauss_legendre(48);
  const int m = static_cast<int>(rule.x.size());
  std::vector<double> sin2(m), cos2(m), cs(m);
  for (int k = 0; k < m; ++k) {
    const double th = 0.25 * kPi * (rule.x[k] + 1.0);
    const double sn = std::sin(th);
    sin2[k] = sn * sn;
    cos2[k] = 1.0 - sin2[k];
    cs[k] = std::cos(th);
  }

  std::vector<cplx> out(g.size());
  const cplx pref = 4.0 * kPi * kRootI;
  out[0] = pref * kSqrtPi * g_reg(0.0);
  for (int n = 1; n <= g.n_steps; ++n) {
    const double t = g.node(n);
    cplx sing = 0.0, sm = 0.0;
    for (int k = 0; k < m; ++k) {
      const cplx gr = g_reg(t * sin2[k]);
      sing += rule.w[k] * gr;
      sm += rule.w[k] * cs[k] * kernel_G_smooth(t * cos2[k], p) * gr;
    }
    out[n] = pref * (0.5 * kSqrtPi * sing + 0.5 * kPi * std::sqrt(t) * sm);
  }
  return out;
}

}  // namespace qpic
