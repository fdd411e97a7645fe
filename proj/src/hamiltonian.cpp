#include "lrc/hamiltonian.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lrc {

namespace {

constexpr double kNullTol = 1e-12;
constexpr double kFullRankRatio = 1e-3;
constexpr double kRootConsistency = 1e-8;

Vec2c normalize_row(Vec2c row) {
  const double mx = max_abs(row);
  row /= mx;
  for (int i = 0; i < 2; ++i) {
    const double mag = std::abs(row[i]);
    if (mag > kNullTol) {
      row *= std::conj(row[i]) / mag;
      row[i] = mag;
      break;
    }
  }
  return row;
}

double inf_norm(const Mat2c& m) {
  return std::max(std::abs(m(0, 0)) + std::abs(m(0, 1)), std::abs(m(1, 0)) + std::abs(m(1, 1)));
}

Mat2c adjugate(const Mat2c& m) {
  Mat2c a;
  a << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
  return a;
}

template <typename C>
Mat2t<C> solvent_error(const Mat2t<C>& H, const QuadraticPencil& p) {
  return H * H + H * convert_matrix<C>(p.P) + convert_matrix<C>(p.Q);
}

// Newton steps on H² + HP + Q = 0 in working precision C, to remove the
// rounding that W⁻¹ amplifies when W is poorly conditioned. The correction E
// solves H·E + E·(H + P) = −F. Steps are rounding-sized; anything larger would
// leave the branch.
template <typename C>
Mat2t<C> refine_solvent(Mat2t<C> H, const QuadraticPencil& p) {
  using R = real_t<C>;
  using Mat4 = Eigen::Matrix<C, 4, 4>;
  using Vec4 = Eigen::Matrix<C, 4, 1>;
  const Mat2t<C> P = convert_matrix<C>(p.P);
  R r = max_magnitude(solvent_error(H, p));
  for (int it = 0; it < 8 && r > 0; ++it) {
    const Mat2t<C> K = H + P;
    Mat4 L;
    for (int j = 0; j < 4; ++j) {
      Mat2t<C> E = Mat2t<C>::Zero();
      E(j % 2, j / 2) = C(1);
      const Mat2t<C> image = H * E + E * K;
      L.col(j) << image(0, 0), image(1, 0), image(0, 1), image(1, 1);
    }
    const Eigen::FullPivLU<Mat4> lu(L);
    if (lu.rank() < 4) break;
    const Mat2t<C> F = solvent_error(H, p);
    Vec4 rhs;
    rhs << -F(0, 0), -F(1, 0), -F(0, 1), -F(1, 1);
    const Vec4 e = lu.solve(rhs);
    Mat2t<C> step;
    step << e[0], e[2], e[1], e[3];
    if (!(max_magnitude(step) <= R(1e-6) * (1 + max_magnitude(H)))) break;
    const Mat2t<C> next = H + step;
    const R rn = max_magnitude(solvent_error(next, p));
    if (!(rn < r)) break;
    H = next;
    r = rn;
  }
  return H;
}

template <typename C>
double identity_residual(const Mat2t<C>& H, const Mat2t<C>& K, const QuadraticPencil& pencil,
                         std::span<const Complex> samples) {
  const Mat2t<C> B = convert_matrix<C>(pencil.B.cast<Complex>());
  const Mat2t<C> D = convert_matrix<C>(pencil.D.cast<Complex>());
  const Mat2t<C> U = convert_matrix<C>(pencil.U.cast<Complex>());
  // −B⁻¹ for the real symmetric 2×2 B.
  const C det = B(0, 0) * B(1, 1) - B(0, 1) * B(1, 0);
  Mat2t<C> left;
  left << -B(1, 1) / det, B(0, 1) / det, B(1, 0) / det, -B(0, 0) / det;
  const Mat2t<C> I = Mat2t<C>::Identity();
  const C j(0, 1);
  double worst = 0.0;
  for (const Complex& sample : samples) {
    const C w = convert<C>(sample);
    const Mat2t<C> m = -w * w * B + j * w * D + U;
    const Mat2t<C> diff = left * m - (w * I - H) * (w * I + K);
    worst = std::max(worst, static_cast<double>(max_magnitude(diff)) / (1.0 + std::norm(sample)));
  }
  return worst;
}

}  // namespace

Vec2c left_null_row(const Mat2c& A, double scale, int slot) {
  const Vec2c unit = slot == 0 ? Vec2c(1.0, 0.0) : Vec2c(0.0, 1.0);
  const double mx = max_abs(A);
  if (mx <= kNullTol * scale) return unit;
  // A numerically full rank although det A(λ) = 0 in exact arithmetic: the error
  // of a semisimple multiple root dominates and the true A(λ) vanishes.
  if (std::abs(A.determinant()) > kFullRankRatio * mx * mx) return unit;

  const Mat2c adj = adjugate(A);
  const Vec2c r0 = adj.row(0).transpose();
  const Vec2c r1 = adj.row(1).transpose();
  const double n0 = max_abs(r0);
  const double n1 = max_abs(r1);
  return normalize_row(n0 >= n1 ? r0 : r1);
}

double solvent_residual(const Mat2q& H, const QuadraticPencil& p) {
  return static_cast<double>(max_magnitude(solvent_error(H, p)));
}

double solvent_residual(const Mat2c& H, const QuadraticPencil& p) {
  return static_cast<double>(max_magnitude(solvent_error(convert_matrix<ComplexX>(H), p)));
}

BranchSet enumerate_branches(const QuadraticPencil& pencil, const RootSet& roots,
                             const BranchOptions& opt) {
  const QuarticCoefficients quartic = char_quartic(pencil);
  for (const Complex& r : roots.roots) {
    if (!(std::abs(quartic(r)) <= kRootConsistency * root_residual_scale(quartic, r))) {
      throw InconsistentInputs("root set does not belong to this pencil");
    }
  }

  const double p_norm = max_abs(pencil.P);
  const double q_norm = max_abs(pencil.Q);
  const auto samples = identity_samples();

  BranchSet set;
  for (std::size_t b = 0; b < kRootPairs.size(); ++b) {
    HamiltonianBranch& branch = set.branches[b];
    branch.pair = kRootPairs[b];
    for (int s = 0; s < 2; ++s) {
      const Complex lambda = roots.roots[branch.pair[s]];
      branch.eigenvalues[s] = lambda;
      const double scale = std::norm(lambda) + std::abs(lambda) * p_norm + q_norm;
      branch.left_rows[s] = left_null_row(monic_matrix(pencil, lambda), scale, s);
    }

    Mat2c W;
    W.row(0) = branch.left_rows[0].transpose();
    W.row(1) = branch.left_rows[1].transpose();
    const Complex det = W.determinant();
    const Mat2c adj = adjugate(W);
    branch.subspace_condition = std::abs(det) / (inf_norm(W) * inf_norm(adj));
    if (!(branch.subspace_condition >= opt.tol_subspace)) {
      branch.status = BranchStatus::rejected_degenerate;
      continue;
    }

    const Mat2c lambda = Vec2c(branch.eigenvalues[0], branch.eigenvalues[1]).asDiagonal();
    const Mat2c start = adj * lambda * W / det;
    branch.quad = branch.subspace_condition < kQuadBelow;
    branch.H_ext = branch.quad
                       ? refine_solvent(convert_matrix<ComplexQ>(start), pencil)
                       : convert_matrix<ComplexQ>(refine_solvent(convert_matrix<ComplexX>(start), pencil));
    branch.K_ext = convert_matrix<ComplexQ>(pencil.P) + branch.H_ext;
    branch.H = convert_matrix<Complex>(branch.H_ext);
    branch.K = convert_matrix<Complex>(branch.K_ext);
    branch.status = BranchStatus::valid;
    branch.solvent_residual = solvent_residual(branch.H_ext, pencil);
    branch.residual = residual_identity(branch, pencil, samples);
    ++set.valid_count;
  }
  return set;
}

double residual_identity(const HamiltonianBranch& branch, const QuadraticPencil& pencil,
                         std::span<const Complex> samples) {
  if (!branch.valid()) throw RejectedBranch("identity residual requested for a rejected branch");
  if (branch.quad) return identity_residual(branch.H_ext, branch.K_ext, pencil, samples);
  return identity_residual(convert_matrix<ComplexX>(branch.H_ext),
                           convert_matrix<ComplexX>(branch.K_ext), pencil, samples);
}

std::vector<Complex> identity_samples(int count, double radius) {
  const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
  std::vector<Complex> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    const double r = radius * (k + 1) / count;
    const double theta = 2.0 * std::numbers::pi * golden * k;
    out.push_back(std::polar(r, theta));
  }
  return out;
}

}  // namespace lrc
