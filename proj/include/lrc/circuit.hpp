#pragma once

#include "lrc/common.hpp"

#include <string_view>

namespace lrc {

/// Physical lumped-element description of two parallel L‖C‖G tanks coupled
/// through the mutual inductance m. Negative conductance models gain.
struct RawCircuit {
  double l1 = 1.0;
  double c1 = 1.0;
  double g1 = 0.0;
  double l2 = 1.0;
  double c2 = 1.0;
  double g2 = 0.0;
  double m = 0.0;
};

/// Tank rates, kept as reciprocal products (L·G, M·C, M·G) so that G = 0 and
/// M = 0 are ordinary values instead of poles.
struct DerivedRates {
  double omega1 = 0.0;
  double omega2 = 0.0;
  double recip_alpha1 = 0.0;     // L1·G1
  double recip_alpha2 = 0.0;     // L2·G2
  double recip_kappa1_sq = 0.0;  // M·C1
  double recip_kappa2_sq = 0.0;  // M·C2
  double recip_gamma1 = 0.0;     // M·G1
  double recip_gamma2 = 0.0;     // M·G2
};

enum class ScenarioKind { general, equal_loss, pt_symmetric, lossless };

std::string_view to_string(ScenarioKind kind);

/// Special-case classification. A lossless pair of matched tanks satisfies all
/// three special conditions; `kind` reports the most specific one, the flags
/// report each condition separately.
struct Scenario {
  ScenarioKind kind = ScenarioKind::general;
  double tau1 = 0.0;  // G1/C1
  double tau2 = 0.0;  // G2/C2
  bool frequencies_match = false;
  bool equal_loss = false;
  bool pt_symmetric = false;
  bool lossless = false;
};

/// A RawCircuit certified against its invariants. Only `validate` makes one.
class ValidatedCircuit {
 public:
  const RawCircuit& raw() const { return raw_; }
  const DerivedRates& rates() const { return rates_; }
  const Scenario& scenario() const { return scenario_; }

 private:
  friend ValidatedCircuit validate(const RawCircuit&, double);
  ValidatedCircuit(RawCircuit raw, DerivedRates rates, Scenario scenario)
      : raw_(raw), rates_(rates), scenario_(scenario) {}

  RawCircuit raw_;
  DerivedRates rates_;
  Scenario scenario_;
};

/// Dimensionless circuit: tank 1 sets the unit of inductance, capacitance and
/// frequency (ω̃ = ω/ω1).
struct NormalizedCircuit {
  double l2t = 1.0;
  double c2t = 1.0;
  double g1t = 0.0;
  double g2t = 0.0;
  double mt = 0.0;
  double omega1_scale = 1.0;

  bool operator==(const NormalizedCircuit&) const = default;
};

/// Throws NonFiniteInput, NonPositiveElement or OvercoupledError.
ValidatedCircuit validate(const RawCircuit& raw, double tol_scenario = 1e-12);

NormalizedCircuit normalize(const ValidatedCircuit& valid);

/// Validates the canonical realization l1 = c1 = 1 of the given dimensionless
/// values and normalizes it; the result carries omega1_scale = 1.
NormalizedCircuit make_normalized(double l2t, double c2t, double g1t, double g2t, double mt);

/// Canonical raw realization (l1 = c1 = 1) of a normalized circuit.
RawCircuit canonical_raw(const NormalizedCircuit& norm);

Scenario classify(const NormalizedCircuit& norm, double tol_scenario = 1e-12);

Complex denormalize_frequency(Complex omega_tilde, const NormalizedCircuit& norm);

}  // namespace lrc
