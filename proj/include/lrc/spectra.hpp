#pragma once

#include "lrc/analysis.hpp"

namespace lrc {

/// Eigen-decomposition of a 2×2 Hamiltonian in closed form.
struct Spectrum {
  Complex omega_plus;
  Complex omega_minus;
  Vec2c v_plus;
  Vec2c v_minus;
  Complex discriminant;  // κ12·κ21 + ((Ω̃1 − Ω̃2)/2)²
  Complex mean;          // (Ω̃+ + Ω̃−)/2
  bool defective = false;
};

/// Principal square root, with the branch cut resolved towards +j.
Complex principal_sqrt(Complex z);

Complex discriminant(const Mat2c& H);
/// Of a branch's working H_ext, in its working precision.
Complex discriminant(const HamiltonianBranch& branch);

/// Ω̃± = (Ω̃1 + Ω̃2)/2 ± sqrt(discriminant); v± = [κ12/(Ω̃± − Ω̃1), 1], falling
/// back to [1, κ21/(Ω̃± − Ω̃2)] when the first denominator vanishes.
Spectrum eigenpairs(const Mat2c& H);
/// Of a branch's working H_ext, in its working precision.
Spectrum eigenpairs(const HamiltonianBranch& branch);

struct EpResult {
  NormalizedCircuit base;  // l2t, c2t, mt held fixed
  double g_ep = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  Complex discriminant_at_ep;
  std::array<int, 2> pair{};  // root pair of the tracked branch at g_ep
  bool heuristic = false;     // |discriminant| minimization instead of a sign change
};

/// Balanced gain/loss profile g1t = g, g2t = −g·c2t on top of `base`.
NormalizedCircuit with_pt_gain(const NormalizedCircuit& base, double g);

/// Locates the first exceptional point of the branch whose two eigenvalues
/// approach each other fastest at g_lo. The branch is followed by continuity of
/// its eigenvalue mean through a march over [g_lo, g_hi], then the sign change
/// of Re(discriminant) is bisected to width `tol`. Throws NoSignChange or
/// BranchTrackingLost.
EpResult find_ep(const NormalizedCircuit& base, double g_lo, double g_hi, double tol,
                 const Tolerances& tolerances = {});

}  // namespace lrc
