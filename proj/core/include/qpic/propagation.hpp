#pragma once

#include <vector>

#include "qpic/common.hpp"
#include "qpic/grid.hpp"
#include "qpic/states.hpp"

namespace qpic {

// Free evolution of the state evaluated at the origin,
//   (U_t gamma)(0) = sqrt(2/pi) int_0^inf k^2 Fgamma(k) e^{-i k^2 t} dk,
// by phase-resolved momentum quadrature (absolute accuracy ~1e-10).
cplx free_prop_origin(const RadialState& s, double t);

// Same value tabulated on every node of a time grid.
ComplexSeries origin_trace(const RadialState& s, const TimeGrid& g);

// Closed-form origin trace for the two-Gaussian family (cross-check path):
// per component  (3/16) a^{-5/2} [ c^{-3/2} - c^{-5/2}/(4a) ],  c = 1/(4a) + it.
cplx free_prop_origin_closed(const RadialState& s, double t);

// Free evolution at radius r > 0 via the 1-D image representation
//   (U_t gamma)(r) = (r sqrt(4 pi i t))^{-1} [ I1 - I2 ],
//   I1/I2 = int_0^inf y gamma(y) e^{i (r -/+ y)^2 / 4t} dy,
// evaluated directly with phase-banded panels when the phase is tame and by
// rotated-contour (steepest-descent) quadrature when it oscillates rapidly.
cplx free_prop_radial(const RadialState& s, double t, double r);

// Overlaps with the bound state:
//   (U_t gamma, psi_abar) = int_0^inf 4 pi k^2 Fgamma(k) e^{-i k^2 t} Fpsi(k) dk
// (bilinear pairing; both transforms are real). The bound-bound overlap has a
// closed form in the scaled complementary error function.
cplx overlap_freeprop_bound(const RadialState& s, double t,
                            const PhysicsParams& p);
cplx overlap_bound_bound(double t, const PhysicsParams& p);

// Full wavefunction at time t on a set of radii:
//   psi(t,r) = (U_t gamma)(r) + i int_0^t U(t-s, r) q(s) ds,
// with the charge integral done by product-Filon panels in the Fresnel
// variable v = r / (2 sqrt(t-s)).
std::vector<cplx> reconstruct_wavefunction(const RadialState& s,
                                           const ComplexSeries& q, double t,
                                           const std::vector<double>& radii);

// L^2(R^3) norm of the reconstruction at time t: radial Simpson rule on a
// window wide enough to hold the ballistically spread density.
double reconstructed_norm(const RadialState& s, const ComplexSeries& q,
                          double t);

}  // namespace qpic
