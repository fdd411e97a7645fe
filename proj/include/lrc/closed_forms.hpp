#pragma once

// Printed closed-form Hamiltonian solutions, evaluated as written with the
// normalized values substituted one-for-one (L2→l2t, C2→c2t, G1→g1t, G2→g2t,
// M→mt) and principal square roots throughout. Nothing here is corrected; the
// comparison harness reports how far each value sits from the numerical
// solvent path, which remains authoritative.

#include "lrc/hamiltonian.hpp"

#include <string>
#include <vector>

namespace lrc::closed_forms {

struct ClosedFormIntermediates {
  Complex Gamma;
  Complex GammaPrime;
  Complex Lambda;
};

ClosedFormIntermediates intermediates(const NormalizedCircuit& norm);

/// Ω̃(Ω̃2) = sqrt((Ω̃2 − jG2/(2C2))² + Γ² − Λ²).
Complex omega_of_omega2(Complex omega2, const NormalizedCircuit& norm);

/// Ω̃±(Ω̃2) = Ω̃2 ± Ω̃(Ω̃2) − jG2/(2C2), sign = ±1.
Complex omega_pm_of_omega2(Complex omega2, int sign, const NormalizedCircuit& norm);

/// {Ω̃(Ω̃2)² − Γ²}{Ω̃±(Ω̃2)² − Γ'²} + M².
Complex implicit_constraint(Complex omega2, int sign, const NormalizedCircuit& norm);

struct KappaPrimeCoefficients {
  Complex c0, c1, c2, c3;
};

KappaPrimeCoefficients kappa12_prime_coefficients(Complex omega2, const NormalizedCircuit& norm);

/// One (Ω̃1±, Ω̃2±) solution of the implicit constraint with its couplings and
/// transform parameters.
struct GeneralSolution {
  int sign = 1;
  Complex omega1, omega2;
  Complex kappa12, kappa21;
  Complex omega1_prime, omega2_prime, kappa12_prime, kappa21_prime;
  Complex omega_of_omega2, omega_pm_of_omega2;
  KappaPrimeCoefficients c;
  double constraint_residual = 0.0;
  bool finite = true;  // false when an auxiliary formula divides by zero
};

/// Coefficients (ascending powers of z = (Ω̃2 − jG2/(2C2))²) of the polynomial
/// obtained by squaring away the inner root of the implicit constraint. Its
/// degree is three, dropping to two when Γ' = 0.
std::array<Complex, 4> reduced_polynomial(const NormalizedCircuit& norm);

/// Solves the reduced polynomial through the quartic oracle and evaluates the
/// printed formulas at each solution. Throws ReductionFailure on non-finite
/// intermediates.
std::vector<GeneralSolution> closed_general(const NormalizedCircuit& norm);

enum class SpecialCase { identical, pt_symmetric, lossless };

std::string_view to_string(SpecialCase kind);

struct SpecialValue {
  Complex omega1, omega2;
  bool has_coupling = false;  // lossless case only
  Complex kappa12, kappa21;
  Complex omega_plus, omega_minus;
  Vec2c v_plus, v_minus;
  bool finite = true;
  int family = 0;  // pt case: 1 or 2
};

struct SpecialCaseSolutions {
  SpecialCase kind = SpecialCase::identical;
  std::vector<SpecialValue> values;
  bool first_family_undefined = false;  // pt case with G1 = 0
};

/// Four values ±sqrt(Γ² ± sqrt(Γ⁴ − M²))/√2 + jG1/2. Throws WrongScenario.
SpecialCaseSolutions closed_identical(const NormalizedCircuit& norm, double tol_scenario = 1e-12);

/// Two first-family and four second-family values. Throws WrongScenario.
SpecialCaseSolutions closed_pt(const NormalizedCircuit& norm, double tol_scenario = 1e-12);

/// Four values with κ12 = κ21 = M/(2Ω̃1), Ω̃± = Ω̃1 ± κ12, v± = [±1, 1].
/// Throws WrongScenario.
SpecialCaseSolutions closed_lossless(const NormalizedCircuit& norm, double tol_scenario = 1e-12);

// -----------------------------------------------------------------------------
// Comparison against the numerical branches
// -----------------------------------------------------------------------------

enum class Role { diagonal, coupling, transform_diagonal, transform_coupling, eigenvector };

std::string_view to_string(Role role);

struct ComparisonRow {
  std::string label;
  Role role = Role::diagonal;
  Complex closed_value;
  Complex nearest_numerical_value;
  double abs_gap = 0.0;
  double rel_gap = 0.0;  // abs_gap / max(1, |closed|, |numerical|)
  bool match = false;
  bool skipped = false;  // closed value undefined, or nothing to compare with
};

struct ComparisonReport {
  std::string source;
  std::vector<ComparisonRow> rows;
  int matches = 0;
  int mismatches = 0;
  int skipped = 0;
  std::string provenance;
};

ComparisonReport compare(const SpecialCaseSolutions& closed, const BranchSet& numerical,
                         double tol_compare = 1e-6);
ComparisonReport compare(const std::vector<GeneralSolution>& closed, const BranchSet& numerical,
                         double tol_compare = 1e-6);

}  // namespace lrc::closed_forms
