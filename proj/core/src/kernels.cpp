#include "qpic/kernels.hpp"

#include "qpic/faddeeva.hpp"

namespace qpic {

// Below mu^2 t ~ 1e-12 the kernels switch to their two-term expansions; the
// relative error of doing so is O(mu sqrt(t)) ~ 1e-12 there, and it keeps the
// t -> 0 endpoint free of 0 * inf arithmetic in the scaled error function.
static bool tiny_time(double t, double mu) { return mu * mu * t < 1e-12; }

cplx kernel_G(double t, const PhysicsParams& p) {
  if (!(t > 0.0)) throw domain_error("kernel_G: requires t > 0");
  return 1.0 / std::sqrt(kPi * t) + kernel_G_smooth(t, p);
}

cplx kernel_G_smooth(double t, const PhysicsParams& p) {
  if (!(t >= 0.0)) throw domain_error("kernel_G_smooth: requires t >= 0");
  const double a = 4.0 * kPi * p.alpha_bar;  // negative
  if (tiny_time(t, p.mu())) return p.b0();
  // -a sqrt(i) erfcx(a sqrt(t) e^{i pi/4}); the argument has negative real part
  // for abar < 0 and erfcx reflects internally with a unimodular e^{z^2}.
  return -a * kRootI * erfcx_complex(a * std::sqrt(t) * kRootI);
}

cplx bound_propagator_origin(double t, const PhysicsParams& p) {
  if (!(t > 0.0)) throw domain_error("bound_propagator_origin: requires t > 0");
  const double mu = p.mu();
  const cplx amp = std::sqrt(2.0 * std::abs(p.alpha_bar)) * kInvRootI;
  if (tiny_time(t, mu)) return amp * (1.0 / std::sqrt(kPi * t) - mu * kRootI);
  return amp * (1.0 / std::sqrt(kPi * t) -
                mu * kRootI * erfcx_complex(mu * std::sqrt(t) * kRootI));
}

cplx bound_trace_reg(double t, const PhysicsParams& p) {
  if (!(t >= 0.0)) throw domain_error("bound_trace_reg: requires t >= 0");
  const double mu = p.mu();
  const cplx amp = std::sqrt(2.0 * std::abs(p.alpha_bar)) * kInvRootI;
  if (tiny_time(t, mu))
    return amp * (1.0 / kSqrtPi - mu * kRootI * std::sqrt(t));
  return amp * (1.0 / kSqrtPi -
                mu * kRootI * std::sqrt(t) * erfcx_complex(mu * std::sqrt(t) * kRootI));
}

cplx free_kernel_at(double t, double r) {
  if (t == 0.0) throw domain_error("free_kernel_at: requires t != 0");
  const cplx denom = std::pow(cplx(0.0, 4.0 * kPi * t), 1.5);
  return std::exp(cplx(0.0, r * r / (4.0 * t))) / denom;
}

cplx bound_charge_exact(double t, const PhysicsParams& p) {
  const double mu = p.mu();
  return 4.0 * kPi * std::sqrt(2.0 * std::abs(p.alpha_bar)) *
         std::exp(cplx(0.0, mu * mu * t));
}

cplx bound_source_exact(double t, const PhysicsParams& p) {
  const double mu = p.mu();
  return 4.0 * kPi * std::sqrt(2.0 * std::abs(p.alpha_bar)) *
         erfcx_complex(mu * std::sqrt(t) * kRootI);
}

cplx bound_inverse_charge_exact(double T_minus_t, const PhysicsParams& p) {
  const double mu = p.mu();
  return std::sqrt(2.0 * std::abs(p.alpha_bar)) * kInvRootI *
         std::exp(cplx(0.0, mu * mu * T_minus_t));
}

}  // namespace qpic
