#pragma once

#include "qpic/common.hpp"

namespace qpic {

// Faddeeva function w(z) = e^{-z^2} erfc(-iz), accurate to ~1e-13 relative over
// the upper half-plane (worst measured ~7e-13 near the evaluation-region seam at
// |z| ~ 5.5, Im z ~ 0). Lower half-plane values go through the reflection
// w(z) = 2 e^{-z^2} - w(-z), which can overflow for large |Im z| (inherent to w).
cplx faddeeva_w(cplx z);

// Scaled complementary error function e^{z^2} erfc(z). For Re z < 0 uses the
// reflection 2 e^{z^2} - erfcx(-z); on the rays z = x e^{+- i pi/4} the factor
// e^{z^2} is unimodular, so the kernels built on it never overflow.
cplx erfcx_complex(cplx z);

// Analytic continuation of erfc; erfc(z) = e^{-z^2} erfcx(z).
cplx erfc_complex(cplx z);

cplx erf_complex(cplx z);

// Fresnel-type integral F(x) = int_0^x e^{i v^2} dv for real x >= 0,
// = (sqrt(pi)/2) e^{i pi/4} erf(x e^{-i pi/4}). Stable for all x.
cplx fresnel_e(double x);

// Limit of fresnel_e as x -> infinity: (sqrt(pi)/2) e^{i pi/4}.
cplx fresnel_e_inf();

}  // namespace qpic
