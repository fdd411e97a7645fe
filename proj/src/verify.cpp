#include "lrc/verify.hpp"

#include "lrc/closed_forms.hpp"
#include "lrc/spectra.hpp"
#include "lrc/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lrc {

namespace {

double relative(Complex a, Complex b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

std::string describe(const NormalizedCircuit& n) {
  std::ostringstream out;
  out.precision(17);
  out << "l2t=" << n.l2t << " c2t=" << n.c2t << " g1t=" << n.g1t << " g2t=" << n.g2t
      << " mt=" << n.mt;
  return out.str();
}

}  // namespace

double Rng::log_uniform(double lo, double hi) {
  return std::exp(uniform(std::log(lo), std::log(hi)));
}

NormalizedCircuit random_circuit(Rng& rng) {
  const double l2t = rng.log_uniform(0.1, 10.0);
  const double c2t = rng.log_uniform(0.1, 10.0);
  const double mt = rng.uniform(-1.0, 1.0) * std::sqrt(0.95 * l2t);
  const double g1t = rng.uniform(-1.0, 1.0);
  const double g2t = rng.uniform(-1.0, 1.0);
  return make_normalized(l2t, c2t, g1t, g2t, mt);
}

OracleCheck check_oracle(const Analysis& a) {
  OracleCheck out;
  out.valid_count = a.branches.valid_count;
  const double pq = 1.0 + max_abs(a.pencil.P) + max_abs(a.pencil.Q);
  std::array<bool, 4> used{};
  for (const HamiltonianBranch& b : a.branches.branches) {
    if (!b.valid()) continue;
    out.solvent_ratio = std::max(out.solvent_ratio, solvent_residual(b.H_ext, a.pencil) / pq);
    out.identity_residual = std::max(out.identity_residual, b.residual);
    const Spectrum s = eigenpairs(b);
    const Complex r0 = a.roots.roots[b.pair[0]];
    const Complex r1 = a.roots.roots[b.pair[1]];
    const double straight = std::max(relative(s.omega_plus, r0), relative(s.omega_minus, r1));
    const double crossed = std::max(relative(s.omega_plus, r1), relative(s.omega_minus, r0));
    out.eigen_mismatch = std::max(out.eigen_mismatch, std::min(straight, crossed));
    used[b.pair[0]] = used[b.pair[1]] = true;
  }
  out.covers_roots = std::all_of(used.begin(), used.end(), [](bool u) { return u; });
  for (const Complex& r : a.roots.roots) {
    double best = std::numeric_limits<double>::infinity();
    for (const Complex& s : a.roots.roots) best = std::min(best, std::abs(-std::conj(r) - s));
    out.conjugate_gap = std::max(out.conjugate_gap, best / (1.0 + std::abs(r)));
  }
  return out;
}

void VerifyReport::expect(bool condition, const std::string& what) {
  ++checks;
  if (!condition) failures.push_back(what);
}

VerifyReport verify_random(int count, std::uint64_t seed, const Tolerances& tol) {
  VerifyReport report;
  Rng rng(seed);
  for (int i = 0; i < count; ++i) {
    const NormalizedCircuit circuit = random_circuit(rng);
    const std::string tag = "random #" + std::to_string(i) + " (" + describe(circuit) + ")";
    try {
      const OracleCheck c = check_oracle(analyze(circuit, tol));
      report.expect(c.valid_count > 0, tag + ": no valid branch");
      report.expect(c.solvent_ratio <= tol.residual, tag + ": solvent residual above bound");
      report.expect(c.identity_residual <= tol.residual, tag + ": factorization identity above bound");
      report.expect(c.eigen_mismatch <= 1e-8, tag + ": branch eigenvalues differ from oracle roots");
      report.expect(c.covers_roots, tag + ": valid branches do not cover all roots");
      report.expect(c.conjugate_gap <= 1e-9, tag + ": root set not closed under -conj");
    } catch (const Error& e) {
      report.expect(false, tag + ": " + e.what());
    }
  }
  return report;
}

VerifyReport verify_fixed(const Tolerances& tol) {
  VerifyReport report;
  auto guarded = [&](const std::string& name, auto&& body) {
    try {
      body();
    } catch (const Error& e) {
      report.expect(false, name + ": " + e.what());
    }
  };

  guarded("lossless identical", [&] {
    for (int k = 1; k <= 9; ++k) {
      const double mt = 0.1 * k;
      const std::string tag = "lossless mt=" + std::to_string(mt);
      const Analysis a = analyze(make_normalized(1.0, 1.0, 0.0, 0.0, mt), tol);
      const std::array<double, 4> expected = {-1.0 / std::sqrt(1.0 - mt), -1.0 / std::sqrt(1.0 + mt),
                                              1.0 / std::sqrt(1.0 + mt), 1.0 / std::sqrt(1.0 - mt)};
      double gap = 0.0;
      for (int i = 0; i < 4; ++i) gap = std::max(gap, std::abs(a.roots.roots[i] - expected[i]));
      report.expect(gap <= 1e-10, tag + ": roots differ from 1/sqrt(1 +- mt)");
      report.expect(a.branches.valid_count == 4, tag + ": expected 4 valid branches");
      for (const HamiltonianBranch& b : a.branches.branches) {
        if (!b.valid()) continue;
        report.expect(std::abs(b.H(0, 0) - b.H(1, 1)) <= 1e-10 &&
                          std::abs(b.H(0, 1) - b.H(1, 0)) <= 1e-10,
                      tag + ": valid branch is not symmetric");
        const Spectrum s = eigenpairs(b);
        for (const Vec2c& v : {s.v_plus, s.v_minus}) {
          const Complex ratio = v[0] / v[1];
          report.expect(std::min(std::abs(ratio - 1.0), std::abs(ratio + 1.0)) <= 1e-9,
                        tag + ": eigenvector not proportional to [+-1, 1]");
        }
      }
    }
  });

  guarded("decoupled lossless", [&] {
    const Analysis a = analyze(make_normalized(1.0, 1.0, 0.0, 0.0, 0.0), tol);
    report.expect(a.branches.valid_count == 6, "decoupled lossless: expected 6 valid branches");
    const auto cmp = closed_forms::compare(
        closed_forms::closed_lossless(a.circuit, tol.scenario), a.branches, tol.compare);
    bool tight = cmp.mismatches == 0;
    for (const auto& row : cmp.rows) tight = tight && (row.skipped || row.abs_gap <= 1e-10);
    report.expect(tight, "decoupled lossless: closed forms should match the branches");
  });

  guarded("lossless closed-form gap", [&] {
    const Analysis a = analyze(make_normalized(1.0, 1.0, 0.0, 0.0, 0.6), tol);
    const auto cmp = closed_forms::compare(
        closed_forms::closed_lossless(a.circuit, tol.scenario), a.branches, tol.compare);
    bool found = false;
    for (const auto& row : cmp.rows) {
      if (row.role == closed_forms::Role::diagonal && !row.match &&
          std::abs(row.closed_value - 1.2258074802513517) < 1e-6) {
        found = row.rel_gap >= 0.03 && row.rel_gap <= 0.04;
      }
    }
    report.expect(found, "lossless mt=0.6: documented diagonal gap not reported");
  });

  guarded("pt exceptional point", [&] {
    const NormalizedCircuit base = make_normalized(1.0, 1.0, 0.0, 0.0, 0.6);
    const EpResult ep = find_ep(base, 0.3, 1.3, tol.ep, tol);
    report.expect(std::abs(ep.g_ep - std::sqrt(0.625)) <= 1e-6, "pt mt=0.6: g_ep != sqrt(0.625)");

    const Analysis below = analyze(with_pt_gain(base, 0.5), tol);
    double imag = 0.0;
    for (const Complex& r : below.roots.roots) imag = std::max(imag, std::abs(r.imag()));
    report.expect(imag <= 1e-9, "pt mt=0.6 g=0.5: roots should be real");

    GridSpec spec{SweepScenario::pt_symmetric, {0.6, 0.6, 1}, {1.0, 1.0, 1}};
    const GridCell cell = sweep_grid(spec, {1, false, tol}).front();
    report.expect(std::abs(cell.re_dev_p) <= 1e-9 && std::abs(cell.re_dev_m) <= 1e-9,
                  "pt mt=0.6 g=1: tracked pair should have equal real parts");
    report.expect(std::abs(cell.im_dev_p + cell.im_dev_m) <= 1e-9 && std::abs(cell.im_dev_p) >= 0.01,
                  "pt mt=0.6 g=1: tracked pair should have opposite imaginary parts");
  });

  guarded("equal-loss sweep", [&] {
    GridSpec spec{SweepScenario::equal_loss, {0.05, 0.9, 6}, {0.0, 1.0, 6}};
    const auto cells = sweep_grid(spec, {1, false, tol});
    bool symmetric = true;
    for (const GridCell& c : cells) {
      symmetric = symmetric && std::abs(c.re_dev_p + c.re_dev_m) <= 1e-12 &&
                  std::abs(c.im_dev_p + c.im_dev_m) <= 1e-12;
    }
    report.expect(symmetric, "equal-loss sweep: deviations are not opposite");
    bool increasing = true;
    for (int r = 1; r < spec.m_axis.count; ++r) {
      increasing = increasing && cells[r * 6].re_mean > cells[(r - 1) * 6].re_mean;
    }
    report.expect(increasing, "equal-loss sweep: re_mean not increasing in m at g=0");
  });

  return report;
}

}  // namespace lrc
