#include "lrc/roots.hpp"
#include "lrc/verify.hpp"

#include "test_helpers.hpp"

#include <algorithm>

using namespace lrc;

namespace {

QuarticCoefficients from_roots(const std::array<Complex, 4>& r, Complex lead = 1.0) {
  // expand lead * prod (w - r_i)
  std::array<Complex, 5> c{};
  c[0] = 1.0;
  int deg = 0;
  for (const Complex& root : r) {
    for (int k = deg + 1; k >= 1; --k) c[k] = c[k - 1] - root * c[k];
    c[0] = -root * c[0];
    ++deg;
  }
  QuarticCoefficients q;
  for (int k = 0; k < 5; ++k) q.a[k] = lead * c[k];
  return q;
}

// Largest relative distance after the best of all 24 matchings.
double matched_gap(std::array<Complex, 4> got, const std::array<Complex, 4>& want) {
  std::array<int, 4> perm = {0, 1, 2, 3};
  double best = std::numeric_limits<double>::infinity();
  do {
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) {
      worst = std::max(worst, std::abs(got[perm[i]] - want[i]) / std::max(1.0, std::abs(want[i])));
    }
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

QuarticCoefficients circuit_quartic(double l2t, double c2t, double g1, double g2, double mt) {
  return char_quartic(monic_pencil(make_normalized(l2t, c2t, g1, g2, mt)));
}

}  // namespace

TEST_CASE("double roots of (w^2 - 1)^2") {
  QuarticCoefficients q;
  q.a = {1.0, 0.0, -2.0, 0.0, 1.0};
  const RootSet s = quartic_roots(q);
  const std::array<double, 4> want = {-1, -1, 1, 1};
  for (int i = 0; i < 4; ++i) check_close(s.roots[i], want[i], 1e-14);
  CHECK(s.has_cluster());
  CHECK(s.clusters.size() == 2);
}

TEST_CASE("lossless and pt circuit roots") {
  const RootSet l = quartic_roots(circuit_quartic(1, 1, 0, 0, 0.6));
  const std::array<double, 4> lw = {-1.5811388300841897, -0.79056941504209483,
                                    0.79056941504209483, 1.5811388300841897};
  for (int i = 0; i < 4; ++i) check_close(l.roots[i], lw[i], 1e-14);
  CHECK_FALSE(l.has_cluster());

  const RootSet pt = quartic_roots(circuit_quartic(1, 1, 0.5, -0.5, 0.6));
  const std::array<double, 4> pw = {-1.4653885297848602, -0.85301609408906571,
                                    0.85301609408906571, 1.4653885297848602};
  for (int i = 0; i < 4; ++i) check_close(pt.roots[i], pw[i], 1e-13);
}

TEST_CASE("residuals respect the bound and order is lexicographic") {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const auto q = char_quartic(monic_pencil(random_circuit(rng)));
    const RootSet s = quartic_roots(q);
    for (int k = 0; k < 4; ++k) {
      CHECK(s.residuals[k] <= 1e-10 * root_residual_scale(q, s.roots[k]));
      CHECK(s.residuals[k] == std::abs(q(s.roots[k])));
    }
    CHECK(std::is_sorted(s.roots.begin(), s.roots.end(), root_less));
  }
}

TEST_CASE("planted roots are recovered") {
  Rng rng(17);
  for (int i = 0; i < 500; ++i) {
    std::array<Complex, 4> planted;
    for (auto& r : planted) r = {rng.uniform(-3, 3), rng.uniform(-3, 3)};
    const RootSet s = quartic_roots(from_roots(planted));
    CHECK(matched_gap(s.roots, planted) <= 1e-9);
  }
}

TEST_CASE("scaling the coefficients leaves the roots unchanged") {
  Rng rng(19);
  for (int i = 0; i < 100; ++i) {
    const auto q = char_quartic(monic_pencil(random_circuit(rng)));
    const Complex factor = std::polar(rng.log_uniform(1e-3, 1e3), rng.uniform(-3, 3));
    QuarticCoefficients scaled = q;
    for (Complex& c : scaled.a) c *= factor;
    const RootSet a = quartic_roots(q);
    const RootSet b = quartic_roots(scaled);
    CHECK(matched_gap(b.roots, a.roots) <= 1e-12);
  }
}

TEST_CASE("root sets of real circuits are closed under -conj") {
  Rng rng(23);
  for (int i = 0; i < 200; ++i) {
    const RootSet s = quartic_roots(char_quartic(monic_pencil(random_circuit(rng))));
    std::array<Complex, 4> mirrored;
    for (int k = 0; k < 4; ++k) mirrored[k] = -std::conj(s.roots[k]);
    CHECK(matched_gap(mirrored, s.roots) <= 1e-9);
  }
}

TEST_CASE("identical input gives identical output") {
  const auto q = circuit_quartic(2.1, 0.3, 0.4, -0.1, 0.9);
  const RootSet a = quartic_roots(q);
  const RootSet b = quartic_roots(q);
  for (int k = 0; k < 4; ++k) CHECK(a.roots[k] == b.roots[k]);
}

TEST_CASE("close but distinct roots are not merged") {
  const std::array<Complex, 4> planted = {-1.0, 0.5, 0.5 + 1e-5, 2.0};
  const RootSet s = quartic_roots(from_roots(planted));
  CHECK(matched_gap(s.roots, planted) <= 1e-9);
  CHECK(s.roots[1] != s.roots[2]);
  CHECK_FALSE(s.has_cluster());
}

TEST_CASE("degenerate and non-finite input") {
  QuarticCoefficients q;
  q.a = {1.0, 0.0, -2.0, 0.0, 0.0};
  CHECK_THROWS_AS(quartic_roots(q), DegenerateLeadingCoefficient);
  q.a[4] = 1.0;
  q.a[1] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(quartic_roots(q), NonFiniteInput);
}

TEST_CASE("root_less is lexicographic") {
  CHECK(root_less({-1, 5}, {0, -5}));
  CHECK(root_less({1, -1}, {1, 1}));
  CHECK_FALSE(root_less({1, 1}, {1, 1}));
}
