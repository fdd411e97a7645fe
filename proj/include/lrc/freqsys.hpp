#pragma once

#include "lrc/circuit.hpp"

#include <array>

namespace lrc {

/// The frequency-domain system M̄(ω̃) = −ω̃²·B + jω̃·D + U acting on the voltage
/// phasors [v1, v2], and its monic form
///
///     −B⁻¹·M̄(ω̃) = ω̃²·I + ω̃·P + Q,   P = −j·B⁻¹·D,  Q = −B⁻¹.
struct QuadraticPencil {
  Mat2d B;
  Mat2d D;
  Mat2d U;
  Mat2c P;
  Mat2c Q;
  double detB = 0.0;
};

/// Voltage phasors on which M̄ acts.
struct VoltageState {
  Complex v1;
  Complex v2;
};

/// Polynomial coefficients indexed by power: a[k] multiplies ω̃^k.
/// For char_quartic the polynomial is monic and det M̄(ω̃) = system_scale·p(ω̃).
struct QuarticCoefficients {
  std::array<Complex, 5> a{};
  double system_scale = 1.0;

  Complex operator()(Complex w) const;
  Complex derivative(Complex w) const;
  double max_coefficient() const;
};

Mat2c system_matrix(const NormalizedCircuit& norm, Complex omega_tilde);

/// Same matrix rebuilt from the stored coefficients (B, D, U).
Mat2c system_matrix(const QuadraticPencil& pencil, Complex omega_tilde);

/// Residual M̄(ω̃)·v.
Vec2c apply(const QuadraticPencil& pencil, Complex omega_tilde, const VoltageState& v);

/// ω̃²·I + ω̃·P + Q.
Mat2c monic_matrix(const QuadraticPencil& pencil, Complex omega_tilde);

/// Throws SingularLeadingCoefficient when det B vanishes.
QuadraticPencil monic_pencil(const NormalizedCircuit& norm);

/// Expands det M̄ symbolically from (B, D, U) and divides by det B.
QuarticCoefficients char_quartic(const QuadraticPencil& pencil);

}  // namespace lrc
