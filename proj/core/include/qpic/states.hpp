#pragma once

#include <array>
#include <vector>

#include "qpic/common.hpp"

namespace qpic {

// Admissible initial state gamma(r) = r^2 (w0 e^{-a r^2} + w1 e^{-b r^2}) with
// gamma(0) = 0, (gamma, psi_abar) = 0 (w1/w0 fixed by orthogonalization) and
// unit L^2 norm. Carries its exact radial Fourier transform and a sampled
// momentum-grid cache.
struct RadialState {
  double a = 1.0;
  double b = 2.0;
  double beta = 0.0;              // pre-normalization mixing coefficient
  std::array<double, 2> wgt{};    // normalized component weights {s, s*beta}
  double kmax = 0.0;              // momentum cutoff, 40 sqrt(max(a,b))
  double r_big = 0.0;             // radial cutoff for quadratures
  std::vector<double> k_cache;    // uniform momentum grid (4096 samples)
  std::vector<double> f_cache;    // F gamma on k_cache

  double gamma(double r) const;
  cplx gamma_c(cplx y) const;     // entire extension, used by contour quadrature
  double fourier_at(double k) const;  // exact transform of the two-Gaussian family
};

// Builds the state: beta solves the 1-D orthogonality condition against
// psi_abar via adaptive quadrature, then the state is L^2-normalized.
RadialState make_initial_state(double a, double b, const PhysicsParams& p);

// Generic radial Fourier transform by quadrature,
// F gamma(k) = sqrt(2/pi) (1/k) int_0^inf r sin(kr) gamma(r) dr  (limit at k = 0).
double radial_fourier(const RadialState& s, double k);

// Bound state psi_abar(r) = sqrt(2|abar|) e^{-mu r} / r and its transform.
double bound_state_value(double r, const PhysicsParams& p);
double bound_state_fourier(double k, const PhysicsParams& p);

// Overlap (gamma, psi_abar)_{L^2(R^3)} by adaptive quadrature (diagnostic).
double overlap_with_bound(const RadialState& s, const PhysicsParams& p);

// L^2(R^3) norm of the state by quadrature (diagnostic; construction gives 1).
double state_norm(const RadialState& s);

}  // namespace qpic
