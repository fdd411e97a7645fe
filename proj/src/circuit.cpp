#include "lrc/circuit.hpp"

#include <algorithm>
#include <cmath>

namespace lrc {

std::string_view to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::general:
      return "general";
    case ScenarioKind::equal_loss:
      return "equal-loss";
    case ScenarioKind::pt_symmetric:
      return "pt-symmetric";
    case ScenarioKind::lossless:
      return "lossless";
  }
  return "general";
}

namespace {

bool close_relative(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

// g1n, g2n are the conductances in units of sqrt(C1/L1).
Scenario classify_rates(double omega1, double omega2, double tau1, double tau2, double g1n,
                        double g2n, double tol) {
  Scenario s;
  s.tau1 = tau1;
  s.tau2 = tau2;
  s.frequencies_match = close_relative(omega1, omega2, tol);
  const double tau_scale = std::max(std::abs(tau1), std::abs(tau2));
  s.equal_loss = s.frequencies_match && std::abs(tau1 - tau2) <= tol * tau_scale;
  s.pt_symmetric = s.frequencies_match && std::abs(tau1 + tau2) <= tol * tau_scale;
  s.lossless = s.frequencies_match && std::abs(g1n) <= tol && std::abs(g2n) <= tol;

  if (s.lossless) {
    s.kind = ScenarioKind::lossless;
  } else if (s.equal_loss) {
    s.kind = ScenarioKind::equal_loss;
  } else if (s.pt_symmetric) {
    s.kind = ScenarioKind::pt_symmetric;
  } else {
    s.kind = ScenarioKind::general;
  }
  return s;
}

}  // namespace

ValidatedCircuit validate(const RawCircuit& raw, double tol_scenario) {
  for (double v : {raw.l1, raw.c1, raw.g1, raw.l2, raw.c2, raw.g2, raw.m}) {
    if (!std::isfinite(v)) throw NonFiniteInput("circuit parameters must be finite");
  }
  if (raw.l1 <= 0 || raw.c1 <= 0 || raw.l2 <= 0 || raw.c2 <= 0) {
    throw NonPositiveElement("inductances and capacitances must be strictly positive");
  }
  if (raw.m * raw.m >= raw.l1 * raw.l2) {
    throw OvercoupledError("mutual inductance must satisfy m^2 < l1*l2");
  }

  DerivedRates rates;
  rates.omega1 = 1.0 / std::sqrt(raw.l1 * raw.c1);
  rates.omega2 = 1.0 / std::sqrt(raw.l2 * raw.c2);
  rates.recip_alpha1 = raw.l1 * raw.g1;
  rates.recip_alpha2 = raw.l2 * raw.g2;
  rates.recip_kappa1_sq = raw.m * raw.c1;
  rates.recip_kappa2_sq = raw.m * raw.c2;
  rates.recip_gamma1 = raw.m * raw.g1;
  rates.recip_gamma2 = raw.m * raw.g2;
  if (!std::isfinite(rates.omega1) || !std::isfinite(rates.omega2)) {
    throw NonFiniteInput("natural frequencies overflow");
  }

  const double g_unit = std::sqrt(raw.l1 / raw.c1);
  Scenario scenario = classify_rates(rates.omega1, rates.omega2, raw.g1 / raw.c1,
                                     raw.g2 / raw.c2, raw.g1 * g_unit, raw.g2 * g_unit,
                                     tol_scenario);
  return ValidatedCircuit(raw, rates, scenario);
}

NormalizedCircuit normalize(const ValidatedCircuit& valid) {
  const RawCircuit& r = valid.raw();
  const double g_unit = std::sqrt(r.l1 / r.c1);
  NormalizedCircuit n;
  n.l2t = r.l2 / r.l1;
  n.c2t = r.c2 / r.c1;
  n.g1t = g_unit * r.g1;
  n.g2t = g_unit * r.g2;
  n.mt = r.m / r.l1;
  n.omega1_scale = 1.0 / std::sqrt(r.l1 * r.c1);
  return n;
}

RawCircuit canonical_raw(const NormalizedCircuit& norm) {
  return RawCircuit{1.0, 1.0, norm.g1t, norm.l2t, norm.c2t, norm.g2t, norm.mt};
}

NormalizedCircuit make_normalized(double l2t, double c2t, double g1t, double g2t, double mt) {
  return normalize(validate(RawCircuit{1.0, 1.0, g1t, l2t, c2t, g2t, mt}));
}

Scenario classify(const NormalizedCircuit& norm, double tol_scenario) {
  return classify_rates(1.0, 1.0 / std::sqrt(norm.l2t * norm.c2t), norm.g1t,
                        norm.g2t / norm.c2t, norm.g1t, norm.g2t, tol_scenario);
}

Complex denormalize_frequency(Complex omega_tilde, const NormalizedCircuit& norm) {
  return omega_tilde * norm.omega1_scale;
}

}  // namespace lrc
