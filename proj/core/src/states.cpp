#include "qpic/states.hpp"

#include <algorithm>
#include <cmath>

#include "qpic/quadrature.hpp"

namespace qpic {

namespace {

// int_0^inf r^3 exp(-c r^2 - mu r) dr, the 1-D moment behind the
// orthogonality condition against the bound state.
double mixed_moment(double c, double mu) {
  const double upper = std::sqrt(70.0 / c) + 70.0 / mu;
  auto f = [c, mu](double r) -> cplx {
    return cplx(r * r * r * std::exp(-c * r * r - mu * r), 0.0);
  };
  return integrate_adaptive(f, 0.0, std::min(upper, std::sqrt(90.0 / c)), 1e-15)
      .value.real();
}

// Exact transform of one component r^2 e^{-c r^2}:
//   sqrt(2/pi) (1/k) int_0^inf r^3 sin(kr) e^{-c r^2} dr
//     = 2^{-3/2} c^{-5/2} (3/2 - k^2/(4c)) e^{-k^2/(4c)}.
double component_fourier(double c, double k) {
  const double q = k * k / (4.0 * c);
  return std::pow(2.0, -1.5) * std::pow(c, -2.5) * (1.5 - q) * std::exp(-q);
}

}  // namespace

double RadialState::gamma(double r) const {
  return r * r * (wgt[0] * std::exp(-a * r * r) + wgt[1] * std::exp(-b * r * r));
}

cplx RadialState::gamma_c(cplx y) const {
  const cplx y2 = y * y;
  return y2 * (wgt[0] * std::exp(-a * y2) + wgt[1] * std::exp(-b * y2));
}

double RadialState::fourier_at(double k) const {
  return wgt[0] * component_fourier(a, k) + wgt[1] * component_fourier(b, k);
}

RadialState make_initial_state(double a, double b, const PhysicsParams& p) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw domain_error("state rates must be positive");
  }
  if (std::abs(a - b) <= 1e-9 * std::max(a, b)) {
    throw degenerate_error("state rates coincide; orthogonal family degenerates");
  }
  p.validate();

  RadialState st;
  st.a = a;
  st.b = b;

  const double mu = p.mu();
  const double ia = mixed_moment(a, mu);
  const double ib = mixed_moment(b, mu);
  st.beta = -ia / ib;

  // Closed-form L^2(R^3) norm of r^2(e^{-ar^2} + beta e^{-br^2}) from the
  // sixth radial moment int_0^inf r^6 e^{-cr^2} dr = (15/16) sqrt(pi) c^{-7/2}.
  const double m = 4.0 * kPi * (15.0 / 16.0) * kSqrtPi;
  const double nrm2 =
      m * (std::pow(2.0 * a, -3.5) + 2.0 * st.beta * std::pow(a + b, -3.5) +
           st.beta * st.beta * std::pow(2.0 * b, -3.5));
  if (!(nrm2 > 0.0) || !std::isfinite(nrm2)) {
    throw degenerate_error("orthogonalized state has vanishing norm");
  }
  const double s = 1.0 / std::sqrt(nrm2);
  st.wgt = {s, s * st.beta};

  st.kmax = 40.0 * std::sqrt(std::max(a, b));
  st.r_big = std::sqrt(70.0 / std::min(a, b));

  constexpr int kCacheSize = 4096;
  st.k_cache.resize(kCacheSize);
  st.f_cache.resize(kCacheSize);
  const double dk = st.kmax / (kCacheSize - 1);
  for (int i = 0; i < kCacheSize; ++i) {
    st.k_cache[i] = dk * i;
    st.f_cache[i] = st.fourier_at(st.k_cache[i]);
  }

  // Construction guarantees: recompute the overlap independently and make
  // sure the normalization really produced a unit vector.
  const double ov = overlap_with_bound(st, p);
  if (std::abs(ov) > 1e-10) {
    throw accuracy_error("bound-state orthogonalization missed tolerance",
                         std::abs(ov));
  }
  const double nq = state_norm(st);
  if (std::abs(nq - 1.0) > 1e-9) {
    throw accuracy_error("state normalization missed tolerance",
                         std::abs(nq - 1.0));
  }
  return st;
}

double radial_fourier(const RadialState& s, double k) {
  if (k < 0.0) throw domain_error("radial_fourier: negative momentum");
  const double pref = std::sqrt(2.0 / kPi);
  if (k < 1e-12) {
    auto f = [&s](double r) -> cplx { return cplx(r * r * s.gamma(r), 0.0); };
    return pref * integrate_adaptive(f, 0.0, s.r_big, 1e-14).value.real();
  }
  auto f = [&s, k](double r) -> cplx {
    return cplx(r * std::sin(k * r) * s.gamma(r), 0.0);
  };
  return pref / k * integrate_adaptive(f, 0.0, s.r_big, 1e-14).value.real();
}

double bound_state_value(double r, const PhysicsParams& p) {
  if (!(r > 0.0)) throw domain_error("bound_state_value: r must be positive");
  return std::sqrt(2.0 * std::abs(p.alpha_bar)) * std::exp(-p.mu() * r) / r;
}

double bound_state_fourier(double k, const PhysicsParams& p) {
  const double mu = p.mu();
  return std::sqrt(2.0 * std::abs(p.alpha_bar)) * std::sqrt(2.0 / kPi) /
         (k * k + mu * mu);
}

double overlap_with_bound(const RadialState& s, const PhysicsParams& p) {
  const double mu = p.mu();
  const double amp = std::sqrt(2.0 * std::abs(p.alpha_bar));
  auto f = [&](double r) -> cplx {
    return cplx(r * s.gamma(r) * std::exp(-mu * r), 0.0);
  };
  return 4.0 * kPi * amp *
         integrate_adaptive(f, 0.0, s.r_big, 1e-15).value.real();
}

double state_norm(const RadialState& s) {
  auto f = [&s](double r) -> cplx {
    const double g = s.gamma(r);
    return cplx(r * r * g * g, 0.0);
  };
  const double n2 =
      4.0 * kPi * integrate_adaptive(f, 0.0, s.r_big, 1e-14).value.real();
  return std::sqrt(n2);
}

}  // namespace qpic
