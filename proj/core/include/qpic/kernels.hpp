#pragma once

#include "qpic/common.hpp"

namespace qpic {

// Resolvent kernel G(t) = 1/sqrt(pi t) - (4 pi abar) sqrt(i) erfcx(4 pi abar sqrt(it)),
// the inverse Laplace transform of 1/(sqrt(p) + 4 pi abar sqrt(i)).
cplx kernel_G(double t, const PhysicsParams& p);

// Smooth part G(t) - 1/sqrt(pi t); continuous, value b0 at t = 0.
cplx kernel_G_smooth(double t, const PhysicsParams& p);

// Free propagation of the bound state evaluated at the origin:
// U_t psi(0) = sqrt(2|abar|/i) [1/sqrt(pi t) - mu sqrt(i) erfcx(mu sqrt(t) e^{i pi/4})].
cplx bound_propagator_origin(double t, const PhysicsParams& p);

// Regularized bound trace g(t) = sqrt(t) * U_t psi(0); continuous with
// g(0) = sqrt(2|abar|/i)/sqrt(pi). This is the smooth factor fed to the
// doubly-singular quadrature rules.
cplx bound_trace_reg(double t, const PhysicsParams& p);

// Free Schroedinger kernel U(t, r) = (4 pi i t)^{-3/2} e^{i r^2/(4t)}.
cplx free_kernel_at(double t, double r);

// Closed form of the bound-state charge, q(t) = 4 pi sqrt(2|abar|) e^{-i t lambda}.
cplx bound_charge_exact(double t, const PhysicsParams& p);

// Closed form of the bound-state Abel source,
// f(t) = 4 pi sqrt(2|abar|) erfcx(mu sqrt(t) e^{i pi/4}).
cplx bound_source_exact(double t, const PhysicsParams& p);

// Closed form of int_t^T G(s-t) U_{T-s} psi(0) ds = sqrt(2|abar|/i) e^{-i(T-t) lambda}.
cplx bound_inverse_charge_exact(double T_minus_t, const PhysicsParams& p);

}  // namespace qpic
