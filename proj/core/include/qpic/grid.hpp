#pragma once

#include <vector>

#include "qpic/common.hpp"

namespace qpic {

// Uniform discretization of [0, T]; nodes t_j = j*h, h = T/n_steps.
struct TimeGrid {
  double T = 1.0;
  int n_steps = 1024;

  TimeGrid() = default;
  TimeGrid(double horizon, int steps) : T(horizon), n_steps(steps) {
    if (!(T > 0.0)) throw domain_error("TimeGrid: T must be positive");
    if (n_steps < 2) throw domain_error("TimeGrid: n_steps must be >= 2");
  }

  double h() const { return T / n_steps; }
  double node(int j) const { return h() * j; }
  int size() const { return n_steps + 1; }
};

// A complex trajectory sampled on a TimeGrid (charges, sources, kernels).
struct ComplexSeries {
  TimeGrid grid;
  std::vector<cplx> v;

  ComplexSeries() = default;
  explicit ComplexSeries(const TimeGrid& g) : grid(g), v(g.size(), cplx{0.0, 0.0}) {}

  int size() const { return static_cast<int>(v.size()); }
  cplx& operator[](int j) { return v[j]; }
  const cplx& operator[](int j) const { return v[j]; }

  double max_abs() const {
    double m = 0.0;
    for (const cplx& z : v) m = std::max(m, std::abs(z));
    return m;
  }
};

ComplexSeries operator+(const ComplexSeries& a, const ComplexSeries& b);
ComplexSeries operator-(const ComplexSeries& a, const ComplexSeries& b);
ComplexSeries operator*(cplx s, const ComplexSeries& a);

// Element of H^1_0(0,T) as coefficients over sin(k pi t / T); the decision variable.
struct ControlProfile {
  double T = 1.0;
  std::vector<double> c;

  ControlProfile() = default;
  ControlProfile(double horizon, std::vector<double> coeffs)
      : T(horizon), c(std::move(coeffs)) {
    if (!(T > 0.0)) throw domain_error("ControlProfile: T must be positive");
  }

  double eval(double t) const;
  // Exact H^1 norm from sine-basis orthogonality:
  // ||a||^2 = sum c_k^2 (T/2)(1 + (k pi/T)^2).
  double h1_norm() const;
  double sup_norm_bound() const;  // sum |c_k|, an upper bound for ||alpha||_inf
  bool is_zero() const;
};

}  // namespace qpic
