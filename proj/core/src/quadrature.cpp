#include "qpic/quadrature.hpp"

#include <map>
#include <mutex>

namespace qpic {

static GlRule compute_gl(int n) {
  if (n < 2 || n > 128) throw domain_error("gauss_legendre: order out of range");
  GlRule r;
  r.x.resize(n);
  r.w.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev-based initial guess, then Newton on P_n(x).
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    r.x[i] = -x;
    r.x[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    r.w[i] = w;
    r.w[n - 1 - i] = w;
  }
  return r;
}

const GlRule& gauss_legendre(int n) {
  static std::mutex mtx;
  static std::map<int, GlRule> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gl(n)).first;
  return it->second;
}

cplx simpson_series(const std::vector<cplx>& y, double h) {
  const int n = static_cast<int>(y.size()) - 1;
  if (n < 1) return {0.0, 0.0};
  if (n == 1) return 0.5 * h * (y[0] + y[1]);  // two nodes: trapezoid is all there is
  cplx s{0.0, 0.0};
  const int last = (n % 2 == 0) ? n : n - 3;  // odd count: leave three panels for 3/8
  for (int j = 0; j + 2 <= last; j += 2) s += y[j] + 4.0 * y[j + 1] + y[j + 2];
  s *= h / 3.0;
  if (n % 2 == 1)
    s += 0.375 * h * (y[n - 3] + 3.0 * y[n - 2] + 3.0 * y[n - 1] + y[n]);
  return s;
}

}  // namespace qpic
