#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace qpic {

using cplx = std::complex<double>;

// Principal-branch constants used throughout: sqrt(i) = e^{i pi/4}.
inline constexpr double kPi = 3.14159265358979323846;
inline const double kSqrtPi = std::sqrt(kPi);
inline const cplx kRootI{std::sqrt(0.5), std::sqrt(0.5)};        // e^{i pi/4}
inline const cplx kInvRootI{std::sqrt(0.5), -std::sqrt(0.5)};    // e^{-i pi/4}
inline const cplx kFourSqrtPiI = 4.0 * kSqrtPi * kRootI;         // 4 sqrt(pi i)

struct domain_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Quadrature / resolution failures carry the offending error estimate.
struct accuracy_error : std::runtime_error {
  double estimate;
  accuracy_error(const std::string& what, double est)
      : std::runtime_error(what + " (error estimate " + std::to_string(est) + ")"),
        estimate(est) {}
};

struct degenerate_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct conditioning_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Interaction strength and horizon, units with hbar = 1, 2m = 1 (H = -Laplacian).
struct PhysicsParams {
  double alpha_bar = -0.25;  // interaction strength, must be < 0
  double T = 1.0;            // control horizon

  double mu() const { return 4.0 * kPi * std::abs(alpha_bar); }
  double lambda_bar() const { return -16.0 * kPi * kPi * alpha_bar * alpha_bar; }
  // Leading constant of the smooth part of the resolvent kernel, b0 = -4 pi abar sqrt(i).
  cplx b0() const { return -4.0 * kPi * alpha_bar * kRootI; }

  void validate() const {
    if (!(alpha_bar < 0.0)) throw domain_error("alpha_bar must be strictly negative");
    if (!(T > 0.0)) throw domain_error("horizon T must be positive");
  }
};

}  // namespace qpic
