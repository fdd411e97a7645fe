#pragma once

#include "lrc/extended.hpp"
#include "lrc/roots.hpp"

#include <span>
#include <vector>

namespace lrc {

enum class BranchStatus { valid, rejected_degenerate };

/// One factorization −B⁻¹·M̄(ω̃) = (ω̃I − H)(ω̃I + K) built from a pair of
/// quartic roots. H carries the effective frequencies and couplings, K the
/// second basis transform T2 = ω̃I + K.
struct HamiltonianBranch {
  std::array<int, 2> pair{};                // indices into the sorted RootSet
  std::array<Complex, 2> eigenvalues{};     // roots[pair[0]], roots[pair[1]]
  Mat2c H = Mat2c::Zero();                  // rounding of H_ext
  Mat2c K = Mat2c::Zero();                  // rounding of K_ext
  // Working values. Badly scaled branches (‖H‖ up to ~1e7) need more than 53
  // bits for the factorization to hold to 1e-9; residuals are taken on these.
  Mat2q H_ext = Mat2q::Zero();
  Mat2q K_ext = Mat2q::Zero();              // P + H_ext
  bool quad = false;                        // refined and checked in 113-bit precision
  std::array<Vec2c, 2> left_rows{};         // normalized left null rows (rows of W)
  double subspace_condition = 0.0;          // reciprocal ∞-norm condition of W
  double residual = 0.0;                    // factorization identity residual
  double solvent_residual = 0.0;            // ‖H² + HP + Q‖_max
  BranchStatus status = BranchStatus::rejected_degenerate;

  bool valid() const { return status == BranchStatus::valid; }

  Complex omega1() const { return H(0, 0); }
  Complex kappa12() const { return H(0, 1); }
  Complex kappa21() const { return H(1, 0); }
  Complex omega2() const { return H(1, 1); }
  Complex omega1_prime() const { return -K(0, 0); }
  Complex kappa12_prime() const { return K(0, 1); }
  Complex kappa21_prime() const { return K(1, 0); }
  Complex omega2_prime() const { return -K(1, 1); }
};

/// Root pairs in the fixed order (0,1),(0,2),(0,3),(1,2),(1,3),(2,3).
inline constexpr std::array<std::array<int, 2>, 6> kRootPairs = {
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

struct BranchSet {
  std::array<HamiltonianBranch, 6> branches{};
  int valid_count = 0;
};

struct BranchOptions {
  double tol_subspace = 1e-10;
};

/// Branches with subspace_condition below this are refined in quad precision.
inline constexpr double kQuadBelow = 1e-4;

/// Left row u with u·A = 0 for a singular 2×2 A, taken from the adjugate.
/// When A vanishes numerically, or is numerically full rank (a semisimple
/// multiple root evaluated with rounding error), the whole plane is null and the
/// unit row e_slot is returned. Rows are scaled to unit max-magnitude with the first nonzero
/// entry real positive.
Vec2c left_null_row(const Mat2c& A, double scale, int slot);

/// Throws InconsistentInputs when a root does not annihilate the pencil's quartic.
BranchSet enumerate_branches(const QuadraticPencil& pencil, const RootSet& roots,
                             const BranchOptions& options = {});

double solvent_residual(const Mat2c& H, const QuadraticPencil& pencil);
double solvent_residual(const Mat2q& H, const QuadraticPencil& pencil);

/// max over samples of ‖(−B⁻¹)·M̄(ω̃) − (ω̃I − H)(ω̃I + K)‖_max / (1 + |ω̃|²),
/// evaluated on H_ext and K_ext in the branch's working precision.
/// Throws RejectedBranch for a degenerate branch.
double residual_identity(const HamiltonianBranch& branch, const QuadraticPencil& pencil,
                         std::span<const Complex> samples);

/// Deterministic spiral of `count` points inside |ω̃| ≤ radius.
std::vector<Complex> identity_samples(int count = 16, double radius = 2.0);

}  // namespace lrc
