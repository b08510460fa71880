#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "qpic/common.hpp"
#include "qpic/grid.hpp"
#include "qpic/kernels.hpp"
#include "qpic/propagation.hpp"
#include "qpic/states.hpp"
#include "qpic/volterra.hpp"

using qpic::cplx;
using qpic::kPi;

namespace {

const qpic::PhysicsParams kP{-0.25, 1.0};

std::function<cplx(double)> bound_reg_trace(
    const qpic::PhysicsParams& p = kP) {
  return [p](double s) { return qpic::bound_trace_reg(s, p); };
}

double sup_rel_err(const std::vector<cplx>& got,
                   const std::function<cplx(double)>& want,
                   const qpic::TimeGrid& g, double t_min = 0.0) {
  double worst = 0.0;
  for (int j = 0; j <= g.n_steps; ++j) {
    const double t = g.node(j);
    if (t < t_min) continue;
    const cplx w = want(t);
    worst = std::max(worst, std::abs(got[j] - w) / std::abs(w));
  }
  return worst;
}

std::vector<double> random_potential(const qpic::TimeGrid& g, double abar,
                                     double amp, std::mt19937& rng) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  qpic::ControlProfile a;
  a.T = g.T;
  a.c.resize(6);
  for (double& x : a.c) x = amp * U(rng);
  std::vector<double> pot(g.size());
  for (int j = 0; j < g.size(); ++j) pot[j] = a.eval(g.node(j)) + abar;
  return pot;
}

}  // namespace

TEST_CASE("weight rows integrate constants and linears exactly") {
  const qpic::TimeGrid g{1.7, 700};
  const qpic::AbelWeights aw(g);
  for (int n : {1, 2, 10, 127, 128, 129, 500, 700}) {
    const double t = g.node(n);
    CHECK(std::abs(aw.row_sum(n) - 2.0 * std::sqrt(t)) <
          1e-12 * 2.0 * std::sqrt(t));
    // u(s) = s: exact value (4/3) t^{3/2}.
    double acc = 0.0;
    for (int j = 0; j <= n; ++j) acc += aw.w(n, j) * g.node(j);
    CHECK(std::abs(acc - 4.0 / 3.0 * std::pow(t, 1.5)) < 1e-12 * std::pow(t, 1.5));
    for (int j = 0; j <= n; ++j) CHECK(aw.w(n, j) > 0.0);
  }
}

TEST_CASE("weight rows converge at second order on curvature") {
  // u(s) = s^2 against the exact (16/15) t^{5/2}.
  auto err_at = [](int n) {
    const qpic::TimeGrid g{1.0, n};
    const qpic::AbelWeights aw(g);
    std::vector<cplx> u(g.size());
    for (int j = 0; j < g.size(); ++j) u[j] = g.node(j) * g.node(j);
    const cplx got = qpic::abel_row_apply(aw, u, n);
    return std::abs(got - cplx(16.0 / 15.0, 0.0));
  };
  const double e64 = err_at(64), e128 = err_at(128);
  CHECK(e128 < 1e-4);
  CHECK(e64 / e128 > 3.5);
}

TEST_CASE("doubly singular rule: exact moments and row identities") {
  const qpic::TimeGrid g{0.9, 300};
  std::vector<cplx> ones(g.size(), cplx(1.0, 0.0));
  const auto rows1 = qpic::double_singular_apply(g, ones);
  CHECK(std::abs(rows1[0] - cplx(kPi, 0.0)) < 1e-13);
  for (int n = 1; n <= g.n_steps; n += 37)
    CHECK(std::abs(rows1[n] - cplx(kPi, 0.0)) < 1e-12);

  std::vector<cplx> lin(g.size());
  for (int j = 0; j < g.size(); ++j) lin[j] = g.node(j);
  const auto rows2 = qpic::double_singular_apply(g, lin);
  for (int n = 1; n <= g.n_steps; n += 41) {
    const double want = 0.5 * kPi * g.node(n);
    CHECK(std::abs(rows2[n] - cplx(want, 0.0)) < 1e-12 * std::max(want, 1.0));
  }

  // Quadratic data converges at second order: exact value (3 pi / 8) t^2.
  auto err_at = [](int n) {
    const qpic::TimeGrid g2{1.0, n};
    std::vector<cplx> sq(g2.size());
    for (int j = 0; j < g2.size(); ++j) sq[j] = g2.node(j) * g2.node(j);
    const auto rows = qpic::double_singular_apply(g2, sq);
    return std::abs(rows[n] - cplx(3.0 * kPi / 8.0, 0.0));
  };
  const double e64 = err_at(64), e128 = err_at(128);
  CHECK(e128 < 1e-3);
  CHECK(e64 / e128 > 3.5);
}

TEST_CASE("singular source assembly against the closed bound form") {
  // Starting value is exact: f(0) = 4 pi sqrt(2 |abar|).
  const qpic::TimeGrid g{1.0, 64};
  const auto src = qpic::abel_source_singular(g, bound_reg_trace());
  CHECK(std::abs(src[0] - cplx(8.885765876316732, 0.0)) < 1e-12);

  // The assembled rows are grid-independent: every node matches the closed
  // form to near machine precision already at a coarse step.
  for (int n : {64, 512}) {
    const qpic::TimeGrid gn{1.0, n};
    const auto s = qpic::abel_source_singular(gn, bound_reg_trace());
    const double e = sup_rel_err(
        s, [&](double t) { return qpic::bound_source_exact(t, kP); }, gn,
        1e-9);
    CHECK(e < 1e-11);
  }
}

TEST_CASE("marching solver reproduces the rotating bound charge") {
  auto err_at = [](int n) {
    const qpic::TimeGrid g{1.0, n};
    const qpic::AbelWeights aw(g);
    const auto src = qpic::abel_source_singular(g, bound_reg_trace());
    const std::vector<double> pot(g.size(), kP.alpha_bar);
    const auto q = qpic::solve_charge(aw, g, src, pot);
    return sup_rel_err(
        q.v, [&](double t) { return qpic::bound_charge_exact(t, kP); }, g);
  };
  const double e512 = err_at(512), e1024 = err_at(1024);
  CHECK(e1024 < 1e-3);
  CHECK(e512 / e1024 > 2.5);
}

TEST_CASE("growth constant against its special-function closure") {
  for (double x : {0.05, 0.3, 1.0, 1.405, 2.5}) {
    // sum x^n / Gamma(n/2 + 1) = e^{x^2} (1 + erf x).
    const double want = std::exp(x * x) * (1.0 + std::erf(x));
    const double m = 1.0, T = x * x / (16.0 * kPi * kPi * m * m);
    CHECK(qpic::picard_gamma(m, T) == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("iteration tail equals the truncated growth series") {
  const double m = 0.5, T = 0.05, f_sup = 2.3;
  const double x = 4.0 * kPi * m * std::sqrt(T);
  for (int N : {4, 12, 25}) {
    double partial = 0.0;
    for (int n = 0; n <= N; ++n)
      partial += std::exp(n * std::log(x) - std::lgamma(0.5 * n + 1.0));
    const double want = (qpic::picard_gamma(m, T) - partial) * f_sup;
    CHECK(qpic::picard_tail(m, T, N, f_sup) ==
          doctest::Approx(want).epsilon(1e-10));
  }
}

TEST_CASE("picard sweeps land on the marching fixed point") {
  const qpic::PhysicsParams p{-0.1, 0.05};
  const qpic::TimeGrid g{0.05, 512};
  const qpic::AbelWeights aw(g);
  const auto src = qpic::abel_source_singular(g, bound_reg_trace(p));
  const std::vector<double> pot(g.size(), p.alpha_bar);

  const auto direct = qpic::solve_charge(aw, g, src, pot);
  double f_sup = 0.0;
  for (const cplx& z : src) f_sup = std::max(f_sup, std::abs(z));

  const auto iterated = qpic::picard_iterate(aw, g, src, pot, 12);
  double diff = 0.0;
  for (int j = 0; j < g.size(); ++j)
    diff = std::max(diff, std::abs(iterated[j] - direct[j]));
  CHECK(diff <= qpic::picard_tail(0.1, 0.05, 12, f_sup) + 1e-12);
}

TEST_CASE("growth bound holds across a random potential ensemble") {
  const qpic::TimeGrid g{0.05, 512};
  const qpic::AbelWeights aw(g);
  const auto src = qpic::abel_source_singular(g, bound_reg_trace());
  double f_sup = 0.0;
  for (const cplx& z : src) f_sup = std::max(f_sup, std::abs(z));

  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto pot = random_potential(g, kP.alpha_bar, 0.08, rng);
    double m_sup = 0.0;
    for (double v : pot) m_sup = std::max(m_sup, std::abs(v));
    REQUIRE(m_sup <= 0.5);
    const auto q = qpic::solve_charge(aw, g, src, pot);
    CHECK(q.max_abs() <= qpic::picard_gamma(m_sup, g.T) * f_sup);
  }
}

TEST_CASE("stability bound controls the charge difference") {
  const qpic::PhysicsParams p{-0.25, 0.05};
  const qpic::TimeGrid g{0.05, 512};
  const qpic::AbelWeights aw(g);
  const auto s = qpic::make_initial_state(1.0, 2.0, p);
  const auto trace = qpic::origin_trace(s, g);
  const auto src = qpic::abel_source_smooth(aw, trace.v);

  std::mt19937 rng(11);
  for (int trial = 0; trial < 8; ++trial) {
    const auto pa = random_potential(g, p.alpha_bar, 0.05, rng);
    const auto pb = random_potential(g, p.alpha_bar, 0.05, rng);
    const auto qa = qpic::solve_charge(aw, g, src, pa);
    const auto qb = qpic::solve_charge(aw, g, src, pb);
    double diff = 0.0, pot_diff = 0.0, m_sup = 0.0, vb_sup = 0.0;
    for (int j = 0; j < g.size(); ++j) {
      diff = std::max(diff, std::abs(qa[j] - qb[j]));
      pot_diff = std::max(pot_diff, std::abs(pa[j] - pb[j]));
      m_sup = std::max({m_sup, std::abs(pa[j]), std::abs(pb[j])});
      vb_sup = std::max(vb_sup, std::abs(qb[j]));
    }
    CHECK(diff <= qpic::charge_stability_bound(pot_diff, m_sup, g.T, vb_sup));
  }
}

TEST_CASE("resolvent route reproduces the bound charge") {
  // Quadrature-based route: the error is set by the rule, not the grid, so
  // every node matches the rotating closed form to near machine precision.
  for (int n : {64, 512}) {
    const qpic::TimeGrid g{1.0, n};
    const auto q = qpic::charge_via_resolvent_singular(g, bound_reg_trace(), kP);
    const double e = sup_rel_err(
        q, [&](double t) { return qpic::bound_charge_exact(t, kP); }, g);
    CHECK(e < 1e-11);
  }
}

TEST_CASE("resolvent and marching routes agree for the admissible state") {
  const qpic::TimeGrid g{1.0, 512};
  const qpic::AbelWeights aw(g);
  const auto s = qpic::make_initial_state(1.0, 2.0, kP);
  const auto trace = qpic::origin_trace(s, g);
  const auto src = qpic::abel_source_smooth(aw, trace.v);
  const std::vector<double> pot(g.size(), kP.alpha_bar);

  const auto via_solve = qpic::solve_charge(aw, g, src, pot);
  const auto via_resolvent =
      qpic::charge_via_resolvent_smooth(aw, g, trace.v, kP);

  double diff = 0.0;
  for (int j = 0; j < g.size(); ++j)
    diff = std::max(diff, std::abs(via_solve[j] - via_resolvent[j]));
  CHECK(diff < 0.02 * std::max(via_solve.max_abs(), 1e-6));
}

TEST_CASE("solver rejects mismatched inputs") {
  const qpic::TimeGrid g{1.0, 64};
  const qpic::AbelWeights aw(g);
  std::vector<cplx> src(g.size(), cplx(1.0, 0.0));
  std::vector<double> pot_bad(g.size() - 1, -0.25);
  CHECK_THROWS_AS(qpic::solve_charge(aw, g, src, pot_bad), qpic::domain_error);
}
