#pragma once

#include <functional>
#include <vector>

#include "qpic/common.hpp"
#include "qpic/grid.hpp"

namespace qpic {

// Product-integration weights for the weakly singular kernel (t_n - s)^{-1/2}
// on a uniform grid with piecewise-linear reconstruction:
//   int_0^{t_n} u(s) / sqrt(t_n - s) ds  ~=  sum_{j=0}^{n} w(n,j) u_j.
// Stored per panel distance d from the singular end:
//   c1[d] -> left node of the panel, c2[d] -> right node.
// Exact row-sum identity: sum_j w(n,j) = 2 sqrt(t_n).
struct AbelWeights {
  double h = 0.0;
  std::vector<double> c1, c2;

  explicit AbelWeights(const TimeGrid& g);

  // Row access (n >= 1, 0 <= j <= n). O(1); the solver uses c1/c2 directly.
  double w(int n, int j) const;
  double row_sum(int n) const;  // numerically summed, for diagnostics
};

// Applies row n of the weights to a sampled series (first n+1 entries used).
cplx abel_row_apply(const AbelWeights& aw, const std::vector<cplx>& u, int n);

// Doubly singular rule: for smooth g,
//   F_n = int_0^{t_n} g(s) / ( sqrt(s) sqrt(t_n - s) ) ds
// with g piecewise linear and moments of s^{-1/2}(t_n-s)^{-1/2} integrated
// exactly (m0 = 2 asin sqrt(s/t), m1 = t asin sqrt(s/t) - sqrt(s(t-s))).
// Returns all rows; row 0 is the exact limit pi * g(0).
std::vector<cplx> double_singular_apply(const TimeGrid& g,
                                        const std::vector<cplx>& gs);

// Source term of the charge equation, f(t) = 4 sqrt(pi i) int_0^t
// trace(s)/sqrt(t-s) ds, for a trace that is regular at t = 0.
std::vector<cplx> abel_source_smooth(const AbelWeights& aw,
                                     const std::vector<cplx>& trace);

// Same source when the trace diverges like s^{-1/2}; the input is the
// regularized function g(s) = sqrt(s) * trace(s), which for such traces is
// analytic in sqrt(s). Each row is evaluated with the substitution
// s = t sin^2(theta), under which the integrand extends to a smooth periodic
// function and the midpoint rule converges geometrically — the result is
// grid-independent to near machine precision.
std::vector<cplx> abel_source_singular(const TimeGrid& g,
                                       const std::function<cplx(double)>& g_reg);

// Marching solution of the charge equation
//   q(t) + 4 sqrt(pi i) int_0^t [alpha(s) + abar] q(s) / sqrt(t-s) ds = f(t)
// on the grid; `potential` holds alpha(t_j) + abar.
ComplexSeries solve_charge(const AbelWeights& aw, const TimeGrid& g,
                           const std::vector<cplx>& source,
                           const std::vector<double>& potential);

// Fixed-point (Picard) iteration for the same equation, n_iter explicit
// sweeps starting from q = f. Converges when 4 pi M sqrt(T) is small.
ComplexSeries picard_iterate(const AbelWeights& aw, const TimeGrid& g,
                             const std::vector<cplx>& source,
                             const std::vector<double>& potential, int n_iter);

// Growth constant Gamma(M, T) = sum_{n>=0} (4 pi M sqrt(T))^n / Gamma(n/2+1)
// bounding sup|q| / sup|f|, and the tail of the same series past N terms
// (scaled by sup|f|), bounding the distance of the N-th Picard iterate from
// the fixed point.
double picard_gamma(double m_sup, double t_horizon);
double picard_tail(double m_sup, double t_horizon, int n_terms, double f_sup);

// Lipschitz-type stability bound:
//   sup|V(alpha) - V(beta)| <=
//     Gamma(M) * 4 sqrt(pi) * sup|alpha - beta| * 2 sqrt(T) * sup|V(beta)|.
double charge_stability_bound(double diff_sup, double m_sup, double t_horizon,
                              double v_beta_sup);

// Resolvent route to the zero-control charge:
//   q(t) = 4 pi sqrt(i) int_0^t G(t-s) trace(s) ds,
// where G(t) = 1/sqrt(pi t) + smooth part. For a sampled regular trace the
// singular kernel piece goes through the product-integration weights and the
// smooth piece through a trapezoid. The _singular variant takes the function
// g(s) = sqrt(s) * trace(s) for traces with an inverse-sqrt start and
// evaluates both pieces by quadrature, independent of the marching weights.
std::vector<cplx> charge_via_resolvent_smooth(const AbelWeights& aw,
                                              const TimeGrid& g,
                                              const std::vector<cplx>& trace,
                                              const PhysicsParams& p);
std::vector<cplx> charge_via_resolvent_singular(
    const TimeGrid& g, const std::function<cplx(double)>& g_reg,
    const PhysicsParams& p);

}  // namespace qpic
