#pragma once

#include <utility>
#include <vector>

#include "qpic/common.hpp"

namespace qpic {

// Gauss-Legendre rule on [-1, 1]. Nodes are found at runtime by Newton iteration
// on P_n (no tabulated constants); results are cached per order.
struct GlRule {
  std::vector<double> x;
  std::vector<double> w;
};

const GlRule& gauss_legendre(int n);

template <class F>
cplx gl_apply(const GlRule& rule, F&& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  cplx s{0.0, 0.0};
  for (std::size_t i = 0; i < rule.x.size(); ++i)
    s += rule.w[i] * f(mid + half * rule.x[i]);
  return half * s;
}

struct QuadResult {
  cplx value{0.0, 0.0};
  double error = 0.0;
};

// Adaptive bisection with an embedded GL16/GL32 error estimate, for smooth
// (possibly mildly oscillatory) complex integrands. abs_tol is an absolute
// target for the whole interval.
template <class F>
QuadResult integrate_adaptive(F&& f, double a, double b, double abs_tol,
                              int max_intervals = 200000) {
  const GlRule& lo = gauss_legendre(16);
  const GlRule& hi = gauss_legendre(32);

  struct Seg {
    double a, b, tol;
  };
  std::vector<Seg> stack{{a, b, abs_tol}};
  QuadResult out;
  int used = 0;
  while (!stack.empty()) {
    const Seg s = stack.back();
    stack.pop_back();
    if (++used > max_intervals)
      throw accuracy_error("integrate_adaptive: interval budget exhausted", abs_tol);
    const cplx c_lo = gl_apply(lo, f, s.a, s.b);
    const cplx c_hi = gl_apply(hi, f, s.a, s.b);
    const double err = std::abs(c_hi - c_lo);
    if (err <= s.tol || (s.b - s.a) < 1e-15 * (b - a)) {
      out.value += c_hi;
      out.error += err;
    } else {
      const double m = 0.5 * (s.a + s.b);
      stack.push_back({s.a, m, 0.5 * s.tol});
      stack.push_back({m, s.b, 0.5 * s.tol});
    }
  }
  return out;
}

// Composite rule for integrands g(k) e^{-i k^2 t} on [0, kmax]: panel widths are
// capped so each panel sees at most ~pi of quadratic phase and at least
// min_panels panels resolve the envelope; embedded GL8-in-GL16 error estimate.
template <class F>
QuadResult integrate_quadratic_phase(F&& envelope_times_phase, double kmax, double t,
                                     int min_panels = 64) {
  const GlRule& lo = gauss_legendre(8);
  const GlRule& hi = gauss_legendre(16);
  const double env_w = kmax / min_panels;
  QuadResult out;
  double k = 0.0;
  while (k < kmax) {
    double w = env_w;
    if (t > 0.0) {
      // (k+w)^2 t - k^2 t <= pi
      const double w_phase = -k + std::sqrt(k * k + kPi / t);
      w = std::min(w, w_phase);
    }
    const double k2 = std::min(kmax, k + w);
    const cplx c_lo = gl_apply(lo, envelope_times_phase, k, k2);
    const cplx c_hi = gl_apply(hi, envelope_times_phase, k, k2);
    out.value += c_hi;
    out.error += std::abs(c_hi - c_lo);
    k = k2;
  }
  return out;
}

// Composite Simpson on n+1 equally spaced samples (n even; falls back to a
// trapezoid on the last interval for odd n).
cplx simpson_series(const std::vector<cplx>& y, double h);

}  // namespace qpic
