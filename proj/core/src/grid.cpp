#include "qpic/grid.hpp"

namespace qpic {

static void check_same_shape(const ComplexSeries& a, const ComplexSeries& b) {
  if (a.size() != b.size()) throw domain_error("ComplexSeries: size mismatch");
}

ComplexSeries operator+(const ComplexSeries& a, const ComplexSeries& b) {
  check_same_shape(a, b);
  ComplexSeries r = a;
  for (int j = 0; j < r.size(); ++j) r[j] += b[j];
  return r;
}

ComplexSeries operator-(const ComplexSeries& a, const ComplexSeries& b) {
  check_same_shape(a, b);
  ComplexSeries r = a;
  for (int j = 0; j < r.size(); ++j) r[j] -= b[j];
  return r;
}

ComplexSeries operator*(cplx s, const ComplexSeries& a) {
  ComplexSeries r = a;
  for (int j = 0; j < r.size(); ++j) r[j] *= s;
  return r;
}

double ControlProfile::eval(double t) const {
  if (t < -1e-14 * T || t > T * (1.0 + 1e-14))
    throw domain_error("ControlProfile::eval: t outside [0, T]");
  // Endpoints are exactly zero by construction of the basis.
  if (t <= 0.0 || t >= T) return 0.0;
  double s = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k)
    s += c[k] * std::sin((k + 1) * kPi * t / T);
  return s;
}

double ControlProfile::h1_norm() const {
  double s2 = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double w = (k + 1) * kPi / T;
    s2 += c[k] * c[k] * 0.5 * T * (1.0 + w * w);
  }
  return std::sqrt(s2);
}

double ControlProfile::sup_norm_bound() const {
  double s = 0.0;
  for (double ck : c) s += std::abs(ck);
  return s;
}

bool ControlProfile::is_zero() const {
  for (double ck : c)
    if (ck != 0.0) return false;
  return true;
}

}  // namespace qpic
