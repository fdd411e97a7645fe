#pragma once

#include "lrc/analysis.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace lrc {

/// std::mt19937_64 with a fixed 53-bit mapping to [0, 1), so a seed draws the
/// same circuits on every platform (the std distributions are not portable).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double log_uniform(double lo, double hi);

 private:
  std::mt19937_64 engine_;
};

/// l2t, c2t log-uniform in [0.1, 10]; mt uniform with mt² ≤ 0.95·l2t;
/// g1t, g2t uniform in [−1, 1].
NormalizedCircuit random_circuit(Rng& rng);

/// Numerical health of one analysed circuit.
struct OracleCheck {
  double solvent_ratio = 0.0;    // max over valid branches of ‖H² + HP + Q‖ / (1 + ‖P‖ + ‖Q‖)
  double identity_residual = 0.0;
  double eigen_mismatch = 0.0;   // max relative distance from eig(H) to the branch roots
  bool covers_roots = false;     // valid branches together use all four roots
  double conjugate_gap = 0.0;    // root set vs its image under ω̃ → −conj(ω̃)
  int valid_count = 0;
};

OracleCheck check_oracle(const Analysis& analysis);

struct VerifyReport {
  int checks = 0;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
  void expect(bool condition, const std::string& what);
};

/// Oracle, identity and conjugate-symmetry checks on `count` random circuits.
VerifyReport verify_random(int count, std::uint64_t seed, const Tolerances& tol = {});

/// Lossless, decoupled, exceptional-point and sweep invariants at fixed points.
VerifyReport verify_fixed(const Tolerances& tol = {});

}  // namespace lrc
