#include "lrc/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace lrc {

Complex principal_sqrt(Complex z) {
  if (z.imag() == 0.0 && z.real() < 0.0) return {0.0, std::sqrt(-z.real())};
  return std::sqrt(z);
}

namespace {

constexpr double kDenominatorTol = 1e-12;
constexpr double kDefectiveTol = 1e-10;

template <typename C>
C disc_t(const Mat2t<C>& H) {
  const C half_gap = (H(0, 0) - H(1, 1)) / real_t<C>(2);
  return H(0, 1) * H(1, 0) + half_gap * half_gap;
}

template <typename C>
C principal_sqrt_t(const C& z) {
  using std::sqrt;
  if (z.imag() == 0 && z.real() < 0) return C(real_t<C>(0), sqrt(-z.real()));
  return sqrt(z);
}

template <typename C>
real_t<C> norm2(const C& z) {
  return z.real() * z.real() + z.imag() * z.imag();
}

template <typename C>
Vec2t<C> eigenvector(const Mat2t<C>& H, const C& omega, const real_t<C>& h_norm, int slot) {
  using R = real_t<C>;
  const R tiny = R(kDenominatorTol) * h_norm;
  const C one(1);
  const C zero(0);
  const C d1 = omega - H(0, 0);
  if (magnitude(d1) >= tiny && magnitude(d1) > 0) return Vec2t<C>(H(0, 1) / d1, one);
  const C d2 = omega - H(1, 1);
  if (magnitude(d2) >= tiny && magnitude(d2) > 0) return Vec2t<C>(one, H(1, 0) / d2);
  // Ω̃ coincides with both diagonal entries.
  if (magnitude(H(0, 1)) <= tiny && magnitude(H(1, 0)) <= tiny) {
    return slot == 0 ? Vec2t<C>(one, zero) : Vec2t<C>(zero, one);
  }
  return magnitude(H(1, 0)) <= magnitude(H(0, 1)) ? Vec2t<C>(one, zero) : Vec2t<C>(zero, one);
}

template <typename C>
Spectrum eigenpairs_t(const Mat2t<C>& H) {
  using R = real_t<C>;
  using std::sqrt;
  Spectrum s;
  const C disc = disc_t(H);
  const C centre = (H(0, 0) + H(1, 1)) / R(2);
  const C root = principal_sqrt_t(disc);
  const C plus = centre + root;
  const C minus = centre - root;
  s.discriminant = convert<Complex>(disc);
  s.omega_plus = convert<Complex>(plus);
  s.omega_minus = convert<Complex>(minus);
  s.mean = convert<Complex>((plus + minus) / R(2));

  R h_norm = 0;
  for (int i = 0; i < 4; ++i) h_norm += norm2(H(i / 2, i % 2));
  h_norm = sqrt(h_norm);
  const Vec2t<C> vp = eigenvector(H, plus, h_norm, 0);
  const Vec2t<C> vm = eigenvector(H, minus, h_norm, 1);
  s.v_plus = Vec2c(convert<Complex>(vp[0]), convert<Complex>(vp[1]));
  s.v_minus = Vec2c(convert<Complex>(vm[0]), convert<Complex>(vm[1]));
  const C cross = vp[0] * vm[1] - vp[1] * vm[0];
  const R np = sqrt(norm2(vp[0]) + norm2(vp[1]));
  const R nm = sqrt(norm2(vm[0]) + norm2(vm[1]));
  s.defective = magnitude(cross) <= R(kDefectiveTol) * np * nm;
  return s;
}

}  // namespace

Complex discriminant(const Mat2c& H) { return convert<Complex>(disc_t(convert_matrix<ComplexX>(H))); }

Complex discriminant(const HamiltonianBranch& b) {
  if (b.quad) return convert<Complex>(disc_t(b.H_ext));
  return convert<Complex>(disc_t(convert_matrix<ComplexX>(b.H_ext)));
}

Spectrum eigenpairs(const Mat2c& H) { return eigenpairs_t(convert_matrix<ComplexX>(H)); }

Spectrum eigenpairs(const HamiltonianBranch& b) {
  if (b.quad) return eigenpairs_t(b.H_ext);
  return eigenpairs_t(convert_matrix<ComplexX>(b.H_ext));
}

NormalizedCircuit with_pt_gain(const NormalizedCircuit& base, double g) {
  return make_normalized(base.l2t, base.c2t, g, -g * base.c2t, base.mt);
}

// -----------------------------------------------------------------------------
// Exceptional-point search
// -----------------------------------------------------------------------------

namespace {

struct Tracked {
  double g = 0.0;
  int branch = -1;
  std::array<int, 2> pair{};
  std::array<Complex, 2> values{};
  Complex centre;
  Complex disc;
};

Tracked make_tracked(double g, const BranchSet& set, int b) {
  const HamiltonianBranch& br = set.branches[b];
  Tracked t;
  t.g = g;
  t.branch = b;
  t.pair = br.pair;
  t.values = br.eigenvalues;
  t.centre = (br.eigenvalues[0] + br.eigenvalues[1]) / 2.0;
  t.disc = discriminant(br);
  return t;
}

double set_distance(const std::array<Complex, 2>& a, const std::array<Complex, 2>& b) {
  return std::min(std::abs(a[0] - b[0]) + std::abs(a[1] - b[1]),
                  std::abs(a[0] - b[1]) + std::abs(a[1] - b[0]));
}

// Valid branch whose eigenvalue mean is nearest to the reference.
Tracked follow(double g, const BranchSet& set, const Tracked& ref) {
  int best = -1;
  double best_d = std::numeric_limits<double>::infinity();
  int second = -1;
  double second_d = std::numeric_limits<double>::infinity();
  for (int b = 0; b < 6; ++b) {
    if (!set.branches[b].valid()) continue;
    const auto& ev = set.branches[b].eigenvalues;
    const double d = std::abs((ev[0] + ev[1]) / 2.0 - ref.centre);
    if (d < best_d) {
      second = best;
      second_d = best_d;
      best = b;
      best_d = d;
    } else if (d < second_d) {
      second = b;
      second_d = d;
    }
  }
  if (best < 0) throw BranchTrackingLost("no valid branch to follow");
  if (second >= 0 && second_d - best_d <= 1e-9 * (1.0 + std::abs(ref.centre)) &&
      set_distance(set.branches[best].eigenvalues, set.branches[second].eigenvalues) > 1e-9) {
    throw BranchTrackingLost("two branches are equally close to the tracked one");
  }
  return make_tracked(g, set, best);
}

// Branch whose eigenvalue separation shrinks fastest (relative rate) on a
// small step above g_lo.
Tracked select_colliding(double g_lo, double step, const NormalizedCircuit& base,
                         const Tolerances& tol) {
  const Analysis a0 = analyze(with_pt_gain(base, g_lo), tol);
  const Analysis a1 = analyze(with_pt_gain(base, g_lo + step), tol);
  int best = -1;
  double best_rate = std::numeric_limits<double>::infinity();
  for (int b = 0; b < 6; ++b) {
    const HamiltonianBranch& br = a0.branches.branches[b];
    if (!br.valid()) continue;
    int match = -1;
    double match_d = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 6; ++k) {
      const HamiltonianBranch& other = a1.branches.branches[k];
      if (!other.valid()) continue;
      const double d = set_distance(br.eigenvalues, other.eigenvalues);
      if (d < match_d) {
        match_d = d;
        match = k;
      }
    }
    if (match < 0) continue;
    const auto& ev1 = a1.branches.branches[match].eigenvalues;
    const double d0 = std::abs(br.eigenvalues[0] - br.eigenvalues[1]);
    const double d1 = std::abs(ev1[0] - ev1[1]);
    const double rate = (d1 - d0) / std::max(d0, std::numeric_limits<double>::min());
    if (best < 0 || rate < best_rate - 1e-9 * std::abs(best_rate)) {
      best_rate = rate;
      best = b;
    }
  }
  if (best < 0) throw BranchTrackingLost("no valid branch at the lower bracket end");
  return make_tracked(g_lo, a0.branches, best);
}

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace

EpResult find_ep(const NormalizedCircuit& base, double g_lo, double g_hi, double tol,
                 const Tolerances& tolerances) {
  if (!(g_hi > g_lo) || !(tol > 0.0)) throw NoSignChange("empty search interval");
  constexpr int kMarchSteps = 32;

  const double span = g_hi - g_lo;
  std::vector<Tracked> march;
  march.reserve(kMarchSteps + 1);
  march.push_back(select_colliding(g_lo, 1e-3 * span / kMarchSteps, base, tolerances));
  for (int k = 1; k <= kMarchSteps; ++k) {
    const double g = k == kMarchSteps ? g_hi : g_lo + span * k / kMarchSteps;
    const Analysis a = analyze(with_pt_gain(base, g), tolerances);
    march.push_back(follow(g, a.branches, march.back()));
  }

  auto evaluate = [&](double g, const Tracked& ref) {
    const Analysis a = analyze(with_pt_gain(base, g), tolerances);
    return follow(g, a.branches, ref);
  };

  EpResult result;
  result.base = base;
  const bool pt = classify(with_pt_gain(base, g_lo), tolerances.scenario).pt_symmetric;

  if (pt) {
    std::optional<std::size_t> bracket;
    for (std::size_t k = 0; k + 1 < march.size(); ++k) {
      const int s0 = sign_of(march[k].disc.real());
      const int s1 = sign_of(march[k + 1].disc.real());
      if (s0 == 0 || s0 != s1) {
        bracket = k;
        break;
      }
    }
    if (!bracket) throw NoSignChange("Re(discriminant) keeps its sign over the interval");

    Tracked lo = march[*bracket];
    Tracked hi = march[*bracket + 1];
    const int s_lo = sign_of(lo.disc.real());
    if (s_lo == 0) hi = lo;
    while (hi.g - lo.g > tol) {
      const Tracked mid = evaluate(0.5 * (lo.g + hi.g), lo);
      if (sign_of(mid.disc.real()) == s_lo) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    result.bracket_lo = lo.g;
    result.bracket_hi = hi.g;
    result.g_ep = 0.5 * (lo.g + hi.g);
    const Tracked at = evaluate(result.g_ep, lo);
    result.discriminant_at_ep = at.disc;
    result.pair = at.pair;
    return result;
  }

  // Without PT balance the discriminant is complex; minimize its magnitude.
  std::size_t k_min = 0;
  for (std::size_t k = 1; k < march.size(); ++k) {
    if (std::abs(march[k].disc) < std::abs(march[k_min].disc)) k_min = k;
  }
  const Tracked ref = march[k_min];
  double a = march[k_min == 0 ? 0 : k_min - 1].g;
  double b = march[std::min(k_min + 1, march.size() - 1)].g;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  while (b - a > tol) {
    const double x1 = b - inv_phi * (b - a);
    const double x2 = a + inv_phi * (b - a);
    if (std::abs(evaluate(x1, ref).disc) <= std::abs(evaluate(x2, ref).disc)) {
      b = x2;
    } else {
      a = x1;
    }
  }
  result.bracket_lo = a;
  result.bracket_hi = b;
  result.g_ep = 0.5 * (a + b);
  const Tracked at = evaluate(result.g_ep, ref);
  result.discriminant_at_ep = at.disc;
  result.pair = at.pair;
  result.heuristic = true;
  return result;
}

}  // namespace lrc
