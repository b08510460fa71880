#include "qpic/faddeeva.hpp"

namespace qpic {

// Poppe-Wijers region algorithm. The scaled radius qrho = (x/6.3)^2 +
// (y/4.4)^2 picks one of three evaluations, each with its working depth tuned
// to the radius: a power series near the origin, a Taylor re-expansion with
// backward recurrence in the middle ring, and a pure continued fraction
// outside. Quadrant reflections map the input into x, y >= 0 first.
cplx faddeeva_w(cplx z) {
  const double in_real = z.real();
  const double in_imag = z.imag();
  if (!std::isfinite(in_real) || !std::isfinite(in_imag))
    throw domain_error("faddeeva_w: non-finite argument");

  constexpr double factor = 1.12837916709551257388;  // 2/sqrt(pi)

  const double xabs = std::abs(in_real);
  const double yabs = std::abs(in_imag);
  const double xr = xabs / 6.3;
  const double yr = yabs / 4.4;
  const double qrho = xr * xr + yr * yr;

  const double xquad = xabs * xabs - yabs * yabs;  // Re((x+iy)^2)
  const double yquad = 2.0 * xabs * yabs;          // Im((x+iy)^2)

  const bool near_origin = qrho < 0.085264;
  double u = 0.0, v = 0.0;
  double u2 = 0.0, v2 = 0.0;  // e^{-z^2}, kept for the lower-half reflection

  if (near_origin) {
    // w(z) = e^{-z^2} (1 - z erf-series); n terms chosen from the radius.
    const double q = (1.0 - 0.85 * yr) * std::sqrt(qrho);
    const int n = static_cast<int>(std::lround(6.0 + 72.0 * q));
    int j = 2 * n + 1;
    double xsum = 1.0 / j;
    double ysum = 0.0;
    for (int i = n; i >= 1; --i) {
      j -= 2;
      const double xaux = (xsum * xquad - ysum * yquad) / i;
      ysum = (xsum * yquad + ysum * xquad) / i;
      xsum = xaux + 1.0 / j;
    }
    const double u1 = -factor * (xsum * yabs + ysum * xabs) + 1.0;
    const double v1 = factor * (xsum * xabs - ysum * yabs);
    const double daux = std::exp(-xquad);
    u2 = daux * std::cos(yquad);
    v2 = -daux * std::sin(yquad);
    u = u1 * u2 - v1 * v2;
    v = u1 * v2 + v1 * u2;
  } else {
    double h = 0.0, qlambda = 0.0;
    int kapn = 0, nu;
    if (qrho >= 1.0) {
      nu = static_cast<int>(3.0 + 1442.0 / (26.0 * std::sqrt(qrho) + 77.0));
    } else {
      const double q = (1.0 - yr) * std::sqrt(1.0 - qrho);
      h = 1.88 * q;
      kapn = static_cast<int>(std::lround(7.0 + 34.0 * q));
      nu = static_cast<int>(std::lround(16.0 + 26.0 * q));
      qlambda = std::pow(2.0 * h, kapn);
    }
    const bool rescaled = h > 0.0;

    double rx = 0.0, ry = 0.0, sx = 0.0, sy = 0.0;
    for (int n = nu; n >= 0; --n) {
      const double np1 = n + 1;
      const double tx = yabs + h + np1 * rx;
      const double ty = xabs - np1 * ry;
      const double c = 0.5 / (tx * tx + ty * ty);
      rx = c * tx;
      ry = c * ty;
      if (rescaled && n <= kapn) {
        const double saux = qlambda + sx;
        sx = rx * saux - ry * sy;
        sy = ry * saux + rx * sy;
        qlambda /= 2.0 * h;
      }
    }
    u = factor * (rescaled ? sx : rx);
    v = factor * (rescaled ? sy : ry);
    if (yabs == 0.0) u = std::exp(-xabs * xabs);
  }

  if (in_imag < 0.0) {
    // w(z) = 2 e^{-z^2} - w(-z); may overflow deep in the lower half-plane,
    // which is inherent to w itself there.
    if (!near_origin) {
      const double w1 = 2.0 * std::exp(-xquad);
      u2 = w1 * std::cos(yquad);
      v2 = -w1 * std::sin(yquad);
    } else {
      u2 *= 2.0;
      v2 *= 2.0;
    }
    u = u2 - u;
    v = v2 - v;
    if (in_real > 0.0) v = -v;
  } else if (in_real < 0.0) {
    v = -v;  // w(-conj(z)) = conj(w(z))
  }

  return {u, v};
}

cplx erfcx_complex(cplx z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw domain_error("erfcx_complex: non-finite argument");
  if (z.real() >= 0.0) {
    // erfcx(z) = w(iz) for Re z >= 0 (then Im(iz) >= 0: the stable region of w).
    return faddeeva_w(cplx(-z.imag(), z.real()));
  }
  // Reflection erfcx(-z) = 2 e^{z^2} - erfcx(z); e^{z^2} may be large for
  // arguments far from the +-45 degree rays, which is intrinsic to erfcx there.
  const cplx zz = z * z;
  return 2.0 * std::exp(zz) - erfcx_complex(-z);
}

cplx erfc_complex(cplx z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw domain_error("erfc_complex: non-finite argument");
  if (z.real() < 0.0) return 2.0 - erfc_complex(-z);
  return std::exp(-z * z) * erfcx_complex(z);
}

cplx erf_complex(cplx z) { return 1.0 - erfc_complex(z); }

cplx fresnel_e(double x) {
  if (!(x >= 0.0)) throw domain_error("fresnel_e: requires x >= 0");
  // (sqrt(pi)/2) e^{i pi/4} [1 - erfc(x e^{-i pi/4})]; the erfc argument sits on
  // the ray where e^{-z^2} is unimodular, so this is stable for any x.
  const cplx w = x * kInvRootI;
  return 0.5 * kSqrtPi * kRootI * (1.0 - erfc_complex(w));
}

cplx fresnel_e_inf() { return 0.5 * kSqrtPi * kRootI; }

}  // namespace qpic
