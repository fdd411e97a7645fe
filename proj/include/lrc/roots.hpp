#pragma once

#include "lrc/freqsys.hpp"

#include <utility>
#include <vector>

namespace lrc {

/// The four roots of a quartic, sorted ascending by (real, imaginary) part.
struct RootSet {
  std::array<Complex, 4> roots{};
  std::array<double, 4> residuals{};
  /// Index pairs (i < k) closer than 1e-8·(1 + |root|): exceptional-point hints.
  std::vector<std::pair<int, int>> clusters;

  bool has_cluster() const { return !clusters.empty(); }
};

struct RootOptions {
  double polish_target = 1e-13;  // |p(r)| target relative to coefficient scale
  int max_iterations = 50;
};

/// Residual scale used for the bounds on one root: max|a_k|·max(1, |r|)^4.
double root_residual_scale(const QuarticCoefficients& coeffs, Complex root);

/// Eigenvalues of the 4×4 companion matrix, each polished by Newton's method.
/// Throws DegenerateLeadingCoefficient or NoConvergence.
RootSet quartic_roots(const QuarticCoefficients& coeffs, const RootOptions& options = {});

/// Lexicographic (Re, Im) order with exact comparison.
bool root_less(Complex a, Complex b);

}  // namespace lrc
