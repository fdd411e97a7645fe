#include "lrc/freqsys.hpp"
#include "lrc/verify.hpp"

#include "test_helpers.hpp"

using namespace lrc;

namespace {

std::vector<Complex> random_points(Rng& rng, int count) {
  std::vector<Complex> out;
  for (int i = 0; i < count; ++i) out.emplace_back(rng.uniform(-2, 2), rng.uniform(-2, 2));
  return out;
}

}  // namespace

TEST_CASE("system matrix entries") {
  const auto n = make_normalized(1, 1, 0, 0, 0.6);
  CHECK(max_abs(system_matrix(n, 0.0) - Mat2c::Identity()) == 0.0);
  Mat2c want;
  want << 0.0, -0.6, -0.6, 0.0;
  CHECK(max_abs(system_matrix(n, 1.0) - want) <= 1e-15);

  const auto decoupled = make_normalized(1.7, 0.4, 0.3, -0.2, 0.0);
  const Mat2c m = system_matrix(decoupled, {0.3, 1.1});
  CHECK(m(0, 1) == Complex(0.0));
  CHECK(m(1, 0) == Complex(0.0));

  const auto g = make_normalized(2.0, 0.5, 0.3, -0.2, 0.7);
  const Complex w{0.4, -0.9};
  const Mat2c s = system_matrix(g, w);
  check_close(s(0, 0), -w * w + kJ * w * 0.3 + 1.0, 1e-15);
  check_close(s(0, 1), -w * w * 0.7 * 0.5 + kJ * w * 0.7 * -0.2, 1e-15);
  check_close(s(1, 0), -w * w * 0.7 + kJ * w * 0.7 * 0.3, 1e-15);
  check_close(s(1, 1), -w * w * 2.0 * 0.5 + kJ * w * 2.0 * -0.2 + 1.0, 1e-15);
  CHECK(max_abs(system_matrix(monic_pencil(g), w) - s) <= 1e-15);
}

TEST_CASE("monic pencil examples") {
  const auto p = monic_pencil(make_normalized(1, 1, 0, 0, 0.6));
  CHECK(max_abs(p.P) <= 1e-15);
  Mat2c q;
  q << -1.5625, 0.9375, 0.9375, -1.5625;
  CHECK(max_abs(p.Q - q) <= 1e-14);
  check_close(p.detB, 0.64, 1e-15);
  CHECK(max_abs(p.U - Mat2d::Identity()) == 0.0);

  const auto d = monic_pencil(make_normalized(1, 1, 0, 0, 0));
  CHECK(max_abs(d.P) == 0.0);
  CHECK(max_abs(d.Q + Mat2c::Identity()) == 0.0);

  const auto l = monic_pencil(make_normalized(1, 1, 0.2, 0.2, 0));
  Mat2c pl = Mat2c::Zero();
  pl(0, 0) = pl(1, 1) = Complex(0, -0.2);
  CHECK(max_abs(l.P - pl) <= 1e-15);
  CHECK(max_abs(l.Q + Mat2c::Identity()) <= 1e-15);
}

TEST_CASE("monic identity holds on random circuits") {
  Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    const auto n = random_circuit(rng);
    const auto p = monic_pencil(n);
    for (const Complex w : random_points(rng, 8)) {
      const Mat2c lhs = -p.B.inverse().cast<Complex>() * system_matrix(n, w);
      CHECK(max_abs(lhs - monic_matrix(p, w)) <= 1e-12 * (1 + std::norm(w)));
    }
  }
}

TEST_CASE("char_quartic examples") {
  const auto d = char_quartic(monic_pencil(make_normalized(1, 1, 0, 0, 0)));
  const std::array<double, 5> want = {1, 0, -2, 0, 1};
  for (int k = 0; k < 5; ++k) check_close(d.a[k], want[k], 1e-15);

  const auto l = char_quartic(monic_pencil(make_normalized(1, 1, 0, 0, 0.6)));
  for (double r : {0.79056941504209483, 1.5811388300841897}) {
    CHECK(std::abs(l(r)) <= 1e-14);
    CHECK(std::abs(l(-r)) <= 1e-14);
  }

  // PT m=0.6, g=0.5; in x = w^2 the quartic is 0.64x^2 - 1.84x + 1 up to scale.
  const auto pt = char_quartic(monic_pencil(make_normalized(1, 1, 0.5, -0.5, 0.6)));
  check_close(pt.a[4], 1.0, 1e-15);
  check_close(pt.a[3], 0.0, 1e-15);
  check_close(pt.a[2], -1.84 / 0.64, 1e-14);
  check_close(pt.a[1], 0.0, 1e-15);
  check_close(pt.a[0], 1.0 / 0.64, 1e-14);
  check_close(pt.system_scale, 0.64, 1e-15);
}

TEST_CASE("determinant consistency on random circuits") {
  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    const auto n = random_circuit(rng);
    const auto p = monic_pencil(n);
    const auto q = char_quartic(p);
    CHECK(q.a[4] == Complex(1.0));
    check_close(q.system_scale, p.detB, 1e-15 * std::abs(p.detB));
    for (const Complex w : random_points(rng, 8)) {
      const Complex det = system_matrix(n, w).determinant();
      const double scale = std::abs(p.detB) * q.max_coefficient() * std::max(1.0, std::pow(std::abs(w), 4));
      CHECK(std::abs(det - q.system_scale * q(w)) <= 1e-11 * scale);
      CHECK(std::abs(monic_matrix(p, w).determinant() - q(w)) <= 1e-11 * scale / std::abs(p.detB));
    }
  }
}

TEST_CASE("substituting s = jw gives real coefficients") {
  Rng rng(13);
  for (int i = 0; i < 100; ++i) {
    const auto q = char_quartic(monic_pencil(random_circuit(rng)));
    // p(w) = sum a_k w^k = sum a_k (-j)^k s^k
    const Complex factors[5] = {1.0, -kJ, -1.0, kJ, 1.0};
    for (int k = 0; k < 5; ++k) {
      const Complex c = q.a[k] * factors[k];
      CHECK(std::abs(c.imag()) <= 1e-14 * std::max(1.0, std::abs(c)));
    }
  }
}

TEST_CASE("decoupled quartic factors into single-tank quadratics") {
  const double l2t = 2.3, c2t = 0.6, g1 = 0.4, g2 = -0.25;
  const auto q = char_quartic(monic_pencil(make_normalized(l2t, c2t, g1, g2, 0.0)));
  // (w^2 - j g1 w - 1)(w^2 - j g2/c2t w - 1/(l2t c2t)), both monic
  const Complex a1 = -kJ * g1, a0 = -1.0;
  const Complex b1 = -kJ * (g2 / c2t), b0 = -1.0 / (l2t * c2t);
  const std::array<Complex, 5> want = {a0 * b0, a1 * b0 + a0 * b1, a0 + a1 * b1 + b0, a1 + b1, 1.0};
  for (int k = 0; k < 5; ++k) check_close(q.a[k], want[k], 1e-14);
}

TEST_CASE("apply evaluates the system on voltages") {
  const auto p = monic_pencil(make_normalized(1, 1, 0, 0, 0.6));
  const Vec2c sym = apply(p, 1.0 / std::sqrt(1.6), {1.0, 1.0});
  CHECK(sym.cwiseAbs().maxCoeff() <= 1e-15);
  const Vec2c anti = apply(p, 1.0 / std::sqrt(0.4), {1.0, -1.0});
  CHECK(anti.cwiseAbs().maxCoeff() <= 1e-14);
}
