#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "qpic/common.hpp"
#include "qpic/grid.hpp"
#include "qpic/quadrature.hpp"

using qpic::cplx;
using qpic::kPi;

TEST_CASE("time grid bookkeeping") {
  qpic::TimeGrid g{2.0, 8};
  CHECK(g.h() == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(g.node(0) == 0.0);
  CHECK(g.node(8) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(g.size() == 9);
  CHECK_THROWS_AS((qpic::TimeGrid{-1.0, 8}), qpic::domain_error);
  CHECK_THROWS_AS((qpic::TimeGrid{1.0, 1}), qpic::domain_error);
}

TEST_CASE("control profiles vanish at both endpoints and obey their bounds") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    qpic::ControlProfile a;
    a.T = 1.7;
    a.c.resize(6);
    for (double& x : a.c) x = 0.3 * U(rng);

    CHECK(std::abs(a.eval(0.0)) < 1e-15);
    CHECK(std::abs(a.eval(a.T)) < 1e-12);

    double sup = 0.0;
    for (int j = 0; j <= 2000; ++j)
      sup = std::max(sup, std::abs(a.eval(a.T * j / 2000.0)));
    CHECK(a.sup_norm_bound() >= sup - 1e-12);

    // H^1 norm against a dense trapezoid of alpha^2 + alpha'^2.
    const int n = 200000;
    const double h = a.T / n;
    double acc = 0.0;
    for (int j = 0; j <= n; ++j) {
      const double t = j * h;
      double ap = 0.0;
      for (std::size_t k = 0; k < a.c.size(); ++k) {
        const double w = (k + 1) * kPi / a.T;
        ap += a.c[k] * w * std::cos(w * t);
      }
      const double v = a.eval(t) * a.eval(t) + ap * ap;
      acc += (j == 0 || j == n) ? 0.5 * v : v;
    }
    acc *= h;
    CHECK(a.h1_norm() == doctest::Approx(std::sqrt(acc)).epsilon(1e-8));
  }

  qpic::ControlProfile z;
  z.T = 1.0;
  z.c = {0.0, 0.0};
  CHECK(z.is_zero());
}

TEST_CASE("gauss-legendre rules integrate polynomials exactly") {
  for (int n : {4, 8, 16, 32}) {
    const auto& r = qpic::gauss_legendre(n);
    // x^k on [-1, 1] for all k up to 2n-1.
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double acc = 0.0;
      for (int j = 0; j < n; ++j) acc += r.w[j] * std::pow(r.x[j], k);
      const double want = (k % 2 == 1) ? 0.0 : 2.0 / (k + 1);
      CHECK(std::abs(acc - want) < 1e-13);
    }
  }
}

TEST_CASE("adaptive integration hits library answers") {
  const cplx g = qpic::integrate_adaptive(
                     [](double x) { return cplx(std::exp(-x * x), 0.0); }, 0.0,
                     10.0, 1e-14)
                     .value;
  CHECK(std::abs(g.real() - 0.5 * std::sqrt(kPi)) < 1e-13);

  const cplx osc = qpic::integrate_adaptive(
                       [](double x) { return std::exp(cplx(0.0, x)); }, 0.0,
                       10.0, 1e-13)
                       .value;
  const cplx osc_want =
      (std::exp(cplx(0.0, 10.0)) - 1.0) / cplx(0.0, 1.0);
  CHECK(std::abs(osc - osc_want) < 1e-12);
}

TEST_CASE("quadratic-phase integrator handles long oscillatory ranges") {
  // int_0^inf e^{-k^2} e^{-i k^2 t} dk = (sqrt(pi)/2) (1 + i t)^{-1/2}.
  for (double t : {0.0, 0.5, 3.0, 20.0}) {
    const auto qr = qpic::integrate_quadratic_phase(
        [&](double k) {
          return std::exp(cplx(-k * k, 0.0)) * std::exp(cplx(0.0, -k * k * t));
        },
        12.0, t);
    const cplx want = 0.5 * std::sqrt(kPi) / std::sqrt(cplx(1.0, t));
    CHECK(std::abs(qr.value - want) < 1e-11);
    CHECK(qr.error < 1e-9);
  }
}

TEST_CASE("simpson series weights") {
  // Cubic integrated exactly on an even number of panels.
  {
    const int n = 64;
    const double h = 1.0 / n;
    std::vector<cplx> v(n + 1);
    for (int j = 0; j <= n; ++j) {
      const double t = j * h;
      v[j] = cplx(t * t * t - 2.0 * t + 1.0, 0.0);
    }
    const cplx got = qpic::simpson_series(v, h);
    CHECK(std::abs(got - cplx(0.25, 0.0)) < 1e-14);
  }
  // Smooth exponential with an odd panel count exercises the patch row.
  {
    const int n = 129;
    const double h = 1.0 / n;
    std::vector<cplx> v(n + 1);
    for (int j = 0; j <= n; ++j) v[j] = std::exp(cplx(0.0, 2.0) * (j * h));
    const cplx want = (std::exp(cplx(0.0, 2.0)) - 1.0) / cplx(0.0, 2.0);
    CHECK(std::abs(qpic::simpson_series(v, h) - want) < 1e-8);
  }
}
