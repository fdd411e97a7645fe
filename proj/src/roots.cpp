#include "lrc/roots.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace lrc {

namespace {

constexpr double kResidualBound = 1e-10;
constexpr double kClusterTol = 1e-8;
constexpr double kMergeTol = 1e-6;

struct Polished {
  Complex root;
  double residual;
};

// Newton iterations are confined to a neighbourhood of the starting estimate
// so that two estimates of a close pair cannot collapse onto one root.
Polished polish(const QuarticCoefficients& q, Complex start, double max_move,
                const RootOptions& opt) {
  Complex z = start;
  double r = std::abs(q(z));
  for (int it = 0; it < opt.max_iterations; ++it) {
    if (r <= opt.polish_target * root_residual_scale(q, z)) break;
    const Complex d = q.derivative(z);
    if (d == Complex(0.0)) break;
    const Complex next = z - q(z) / d;
    if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) break;
    if (std::abs(next - start) > max_move) break;
    const double rn = std::abs(q(next));
    if (!(rn < r)) break;
    z = next;
    r = rn;
  }
  return {z, r};
}

// Rounding level of evaluating the quartic at z by Horner's rule.
double evaluation_floor(const QuarticCoefficients& q, Complex z) {
  double acc = 0.0;
  const double mag = std::abs(z);
  for (int k = 4; k >= 0; --k) acc = acc * mag + std::abs(q.a[k]);
  return 4.0 * std::numeric_limits<double>::epsilon() * acc;
}

// Two estimates of a double root are only resolved to ~sqrt(eps). A simple
// root of p' between them that p annihilates to rounding level is the double
// root at full precision.
std::optional<Complex> merge_double_root(const QuarticCoefficients& q, Complex x, Complex y) {
  Complex z = 0.5 * (x + y);
  auto d1 = [&](Complex w) { return q.derivative(w); };
  auto d2 = [&](Complex w) {
    return 12.0 * q.a[4] * w * w + 6.0 * q.a[3] * w + 2.0 * q.a[2];
  };
  double r = std::abs(d1(z));
  for (int it = 0; it < 50; ++it) {
    const Complex h = d2(z);
    if (h == Complex(0.0)) break;
    const Complex next = z - d1(z) / h;
    const double rn = std::abs(d1(next));
    if (!(rn < r)) break;
    z = next;
    r = rn;
  }
  if (std::abs(z - 0.5 * (x + y)) > std::abs(x - y)) return std::nullopt;
  if (std::abs(q(z)) <= evaluation_floor(q, z)) return z;
  return std::nullopt;
}

}  // namespace

double root_residual_scale(const QuarticCoefficients& q, Complex root) {
  const double mag = std::max(1.0, std::abs(root));
  return q.max_coefficient() * mag * mag * mag * mag;
}

bool root_less(Complex a, Complex b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

RootSet quartic_roots(const QuarticCoefficients& q, const RootOptions& opt) {
  if (!(std::abs(q.a[4]) >= 1e-300)) {
    throw DegenerateLeadingCoefficient("quartic leading coefficient vanishes");
  }
  for (const Complex& c : q.a) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw NonFiniteInput("quartic coefficients must be finite");
    }
  }

  Eigen::Matrix4cd companion = Eigen::Matrix4cd::Zero();
  for (int i = 1; i < 4; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < 4; ++i) companion(i, 3) = -q.a[i] / q.a[4];
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(companion, false);
  if (solver.info() != Eigen::Success) {
    throw NoConvergence("companion eigenvalue iteration failed", Complex(0.0),
                        std::numeric_limits<double>::infinity());
  }
  const Eigen::Vector4cd estimates = solver.eigenvalues();

  std::array<Polished, 4> polished;
  for (int i = 0; i < 4; ++i) {
    double separation = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 4; ++k) {
      if (k != i) separation = std::min(separation, std::abs(estimates[i] - estimates[k]));
    }
    const double max_move = std::max(0.5 * separation, 1e-7 * (1.0 + std::abs(estimates[i])));
    polished[i] = polish(q, estimates[i], max_move, opt);
    const double bound = kResidualBound * root_residual_scale(q, polished[i].root);
    if (!(polished[i].residual <= bound)) {
      throw NoConvergence("root polishing did not reach the residual bound", polished[i].root,
                          polished[i].residual);
    }
  }
  for (int i = 0; i < 4; ++i) {
    for (int k = i + 1; k < 4; ++k) {
      const Complex x = polished[i].root;
      const Complex y = polished[k].root;
      const double scale = 1.0 + std::max(std::abs(x), std::abs(y));
      if (x == y || std::abs(x - y) >= kMergeTol * scale) continue;
      if (const auto merged = merge_double_root(q, x, y)) {
        const double res = std::abs(q(*merged));
        polished[i] = {*merged, res};
        polished[k] = {*merged, res};
      }
    }
  }
  std::sort(polished.begin(), polished.end(),
            [](const Polished& x, const Polished& y) { return root_less(x.root, y.root); });

  RootSet set;
  for (int i = 0; i < 4; ++i) {
    set.roots[i] = polished[i].root;
    set.residuals[i] = polished[i].residual;
  }
  for (int i = 0; i < 4; ++i) {
    for (int k = i + 1; k < 4; ++k) {
      const double scale = 1.0 + std::max(std::abs(set.roots[i]), std::abs(set.roots[k]));
      if (std::abs(set.roots[i] - set.roots[k]) < kClusterTol * scale) {
        set.clusters.emplace_back(i, k);
      }
    }
  }
  return set;
}

}  // namespace lrc
