#include "lrc/freqsys.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lrc {

Complex QuarticCoefficients::operator()(Complex w) const {
  Complex acc = a[4];
  for (int k = 3; k >= 0; --k) acc = acc * w + a[k];
  return acc;
}

Complex QuarticCoefficients::derivative(Complex w) const {
  Complex acc = 4.0 * a[4];
  for (int k = 3; k >= 1; --k) acc = acc * w + static_cast<double>(k) * a[k];
  return acc;
}

double QuarticCoefficients::max_coefficient() const {
  double mx = 0.0;
  for (const Complex& c : a) mx = std::max(mx, std::abs(c));
  return mx;
}

Mat2c system_matrix(const NormalizedCircuit& n, Complex w) {
  const Complex w2 = w * w;
  const Complex jw = kJ * w;
  Mat2c m;
  m(0, 0) = -w2 + jw * n.g1t + 1.0;
  m(0, 1) = -w2 * n.mt * n.c2t + jw * n.mt * n.g2t;
  m(1, 0) = -w2 * n.mt + jw * n.mt * n.g1t;
  m(1, 1) = -w2 * n.l2t * n.c2t + jw * n.l2t * n.g2t + 1.0;
  return m;
}

Mat2c system_matrix(const QuadraticPencil& p, Complex w) {
  return -(w * w) * p.B.cast<Complex>() + (kJ * w) * p.D.cast<Complex>() + p.U.cast<Complex>();
}

Vec2c apply(const QuadraticPencil& pencil, Complex w, const VoltageState& v) {
  return system_matrix(pencil, w) * Vec2c(v.v1, v.v2);
}

Mat2c monic_matrix(const QuadraticPencil& p, Complex w) {
  return (w * w) * Mat2c::Identity() + w * p.P + p.Q;
}

QuadraticPencil monic_pencil(const NormalizedCircuit& n) {
  QuadraticPencil p;
  p.B << 1.0, n.mt * n.c2t, n.mt, n.l2t * n.c2t;
  p.D << n.g1t, n.mt * n.g2t, n.mt * n.g1t, n.l2t * n.g2t;
  p.U.setIdentity();
  p.detB = n.c2t * (n.l2t - n.mt * n.mt);
  if (!(std::abs(p.detB) > std::numeric_limits<double>::min()) || !std::isfinite(p.detB)) {
    throw SingularLeadingCoefficient("leading coefficient B is singular");
  }

  Mat2d b_inv;
  b_inv << p.B(1, 1), -p.B(0, 1), -p.B(1, 0), p.B(0, 0);
  b_inv /= p.detB;
  p.P = -kJ * (b_inv * p.D).cast<Complex>();
  p.Q = (-b_inv).cast<Complex>();
  return p;
}

namespace {

using Quadratic = std::array<Complex, 3>;

// Entry (i, k) of M̄ as a polynomial in ω̃: U + jD·ω̃ − B·ω̃².
Quadratic entry_poly(const QuadraticPencil& p, int i, int k) {
  return {Complex(p.U(i, k)), kJ * p.D(i, k), Complex(-p.B(i, k))};
}

std::array<Complex, 5> multiply(const Quadratic& x, const Quadratic& y) {
  std::array<Complex, 5> r{};
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) r[i + k] += x[i] * y[k];
  return r;
}

}  // namespace

QuarticCoefficients char_quartic(const QuadraticPencil& p) {
  const auto diag = multiply(entry_poly(p, 0, 0), entry_poly(p, 1, 1));
  const auto off = multiply(entry_poly(p, 0, 1), entry_poly(p, 1, 0));
  QuarticCoefficients q;
  // Leading term is B00·B11 − B01·B10 = det B.
  q.system_scale = p.detB;
  for (int k = 0; k < 5; ++k) q.a[k] = (diag[k] - off[k]) / p.detB;
  q.a[4] = 1.0;
  return q;
}

}  // namespace lrc
