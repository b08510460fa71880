#pragma once

#include <vector>

#include "qpic/common.hpp"
#include "qpic/functional.hpp"
#include "qpic/grid.hpp"
#include "qpic/states.hpp"

namespace qpic {

// First non-vanishing momentum moment of the state:
//   a_m = sqrt(2/pi) ((-i)^m / m!) int_0^inf k^{2m+2} Fgamma(k) dk,
// scanned over m = 0..8 against a cancellation floor of 1e-10 times the
// same integral with |Fgamma|. Throws degenerate_error when every moment
// cancels (the small-time expansion then has no leading term to fit).
struct LeadingOrder {
  int m = 0;
  cplx a_m{};
  double mass = 0.0;  // no-cancellation magnitude used for the floor
};
LeadingOrder leading_order_and_coefficient(const RadialState& s);

// Constants of the two-term small-time law
//   V(0)(t) = A_m a_m sqrt(i) t^{m+1/2} + B_m a_m sqrt(i) b0 t^{m+1} + ...
// with A_m = 4 sqrt(pi) Beta(m+1, 1/2), B_m = 4 pi/(m+1), b0 = mu e^{i pi/4},
// and the phase-slope constant c = (B_m/A_m) |b0|.
struct ExpansionConstants {
  double A = 0.0;
  double B = 0.0;
  cplx b0{};
  double c = 0.0;
};
ExpansionConstants expansion_constants(int m, const PhysicsParams& p);

// Log-log fit of |V| over a fit window plus the subleading coefficient
// extracted after removing the fitted leading term.
struct PowerFit {
  double exponent = 0.0;
  double amplitude = 0.0;
  double expected_exponent = 0.0;  // m + 1/2
  double expected_amplitude = 0.0; // A_m |a_m|
  cplx second_coeff{};
  cplx expected_second{};          // B_m a_m sqrt(i) b0
  int n_used = 0;
};
PowerFit fit_charge_smalltime(const TimeGrid& g, const std::vector<cplx>& v0,
                              const LeadingOrder& lo,
                              const ExpansionConstants& ec, double t_lo,
                              double t_hi);

// Phase check: theta(t) = arg(V(t) e^{-i (T-t) lambda}) unwrapped, the exact
// linear drift lambda*t removed, then regressed on [1, sqrt(t), t]. The
// sqrt coefficient is compared against c/sqrt(2), the intercept circularly
// against arg(a_m sqrt(i)) - T lambda. T is the physics horizon, independent
// of the (shorter) fit grid.
struct ArgFit {
  double intercept = 0.0;
  double sqrt_slope = 0.0;
  double t_slope = 0.0;  // leftover linear coefficient, diagnostic only
  double model_intercept = 0.0;
  double model_sqrt = 0.0;
  double intercept_err = 0.0;  // circular distance, radians
  double sqrt_rel_err = 0.0;
  int n_used = 0;
};
ArgFit arg_expansion_check(const TimeGrid& g, const std::vector<cplx>& v0,
                           const LeadingOrder& lo, const ExpansionConstants& ec,
                           const PhysicsParams& p, double t_lo, double t_hi);

// Total variation of the unwrapped phase of V(t) e^{-i (T-t) lambda} over the
// nodes where |V| clears an absolute floor of 1e-12. A flat phase (total
// variation < 1e-3) means the bound-state projection direction is frozen and
// targets off that ray are unreachable; `violates` reports that the flatness
// condition fails, i.e. the phase genuinely moves.
struct WitnessResult {
  double total_variation = 0.0;
  bool violates = false;
  int n_used = 0;
};
WitnessResult noncontrollability_witness(const TimeGrid& g,
                                         const std::vector<cplx>& v0,
                                         const PhysicsParams& p);

// Restarted expansion: pick t0 as the earliest node where the origin trace
// reaches half its peak magnitude, rebuild the resolvent convolution
//   Vt(tau) = 4 pi sqrt(i) int_0^tau G(tau - s) U_{t0 + s} gamma(0) ds
// on a fresh fine grid, and fit it with the m = 0 constants and a0 equal to
// the trace value at t0.
struct ShiftedFit {
  double t0 = 0.0;
  cplx a0{};
  double exponent = 0.0;
  double amplitude = 0.0;
  double expected_amplitude = 0.0;  // 8 sqrt(pi) |a0|
  double sqrt_slope = 0.0;
  double model_sqrt = 0.0;          // c0 / sqrt(2), c0 = (sqrt(pi)/2) mu
  double intercept_err = 0.0;
  int n_used = 0;
};
ShiftedFit shifted_expansion(const FunctionalContext& ctx, double tau_max,
                             int n_fine);

// Full small-time analysis driver: leading order of the cached state, the
// fine-grid zero-control charge with its power and phase fits, the witness on
// the production grid, and the restarted fit.
struct AsymptoticsReport {
  LeadingOrder lo;
  ExpansionConstants ec;
  PowerFit power;
  ArgFit argfit;
  WitnessResult witness;
  ShiftedFit shifted;
  TimeGrid fine;
  std::vector<cplx> v0_fine;
};
AsymptoticsReport run_asymptotics(const FunctionalContext& ctx, double t_max,
                                  int n_fine);

}  // namespace qpic
