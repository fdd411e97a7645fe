#include "lrc/closed_forms.hpp"

#include "lrc/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace lrc::closed_forms {

namespace {

constexpr double kTrimTol = 1e-12;

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

Complex csqrt(Complex z) { return principal_sqrt(z); }

void require_scenario(bool ok, std::string_view what) {
  if (!ok) throw WrongScenario(std::string("circuit does not satisfy the ") + std::string(what) +
                               " conditions");
}

}  // namespace

std::string_view to_string(SpecialCase kind) {
  switch (kind) {
    case SpecialCase::identical:
      return "identical";
    case SpecialCase::pt_symmetric:
      return "pt-symmetric";
    case SpecialCase::lossless:
      return "lossless";
  }
  return "identical";
}

std::string_view to_string(Role role) {
  switch (role) {
    case Role::diagonal:
      return "diagonal";
    case Role::coupling:
      return "coupling";
    case Role::transform_diagonal:
      return "transform-diagonal";
    case Role::transform_coupling:
      return "transform-coupling";
    case Role::eigenvector:
      return "eigenvector";
  }
  return "diagonal";
}

ClosedFormIntermediates intermediates(const NormalizedCircuit& n) {
  const double L2 = n.l2t, C2 = n.c2t, G1 = n.g1t, G2 = n.g2t, M = n.mt;
  const double M2 = M * M;
  ClosedFormIntermediates im;
  im.Gamma = 0.5 * csqrt(Complex((4 * L2 - G1 * G1 * L2 + G1 * G1 * M2) / (L2 - M2)));
  im.Lambda =
      1.0 / (2 * C2) * csqrt(Complex((4 * C2 - G2 * G2 * L2 + G2 * G2 * M2) / (L2 - M2)));
  im.GammaPrime = kJ * (G2 / (2 * C2) - G1 / 2);
  return im;
}

Complex omega_of_omega2(Complex omega2, const NormalizedCircuit& n) {
  const ClosedFormIntermediates im = intermediates(n);
  const Complex shifted = omega2 - kJ * n.g2t / (2 * n.c2t);
  return csqrt(shifted * shifted + (im.Gamma * im.Gamma - im.Lambda * im.Lambda));
}

Complex omega_pm_of_omega2(Complex omega2, int sign, const NormalizedCircuit& n) {
  return omega2 + static_cast<double>(sign) * omega_of_omega2(omega2, n) -
         kJ * n.g2t / (2 * n.c2t);
}

Complex implicit_constraint(Complex omega2, int sign, const NormalizedCircuit& n) {
  const ClosedFormIntermediates im = intermediates(n);
  const Complex w = omega_of_omega2(omega2, n);
  const Complex wpm = omega_pm_of_omega2(omega2, sign, n);
  return (w * w - im.Gamma * im.Gamma) * (wpm * wpm - im.GammaPrime * im.GammaPrime) +
         n.mt * n.mt;
}

KappaPrimeCoefficients kappa12_prime_coefficients(Complex omega2, const NormalizedCircuit& n) {
  const double L2 = n.l2t, C2 = n.c2t, G1 = n.g1t, G2 = n.g2t, M = n.mt;
  KappaPrimeCoefficients c;
  c.c1 = kJ * G1 * omega2 / M + L2 / (M * (L2 - M * M)) + G1 * G2 / (C2 * M);
  c.c2 = -omega2 / M + kJ * (G1 / M + G2 / (C2 * M));
  c.c3 = -1.0 / M;
  c.c0 = L2 * (C2 * omega2 - kJ * G2) / (C2 * M * (L2 - M * M));
  return c;
}

std::array<Complex, 4> reduced_polynomial(const NormalizedCircuit& n) {
  const ClosedFormIntermediates im = intermediates(n);
  const Complex G2sq = im.Gamma * im.Gamma;
  const Complex a = im.Lambda * im.Lambda;
  const Complex c = G2sq - a;
  const Complex b = c - im.GammaPrime * im.GammaPrime;
  const Complex p = b - 2.0 * a;
  const Complex r = n.mt * n.mt - a * b;
  // (A(z))² − 4z(z − a)²(z + c) with A(z) = (z − a)(2z + b) + M².
  return {r * r, 2.0 * p * r - 4.0 * a * a * c, p * p + 4.0 * r - 4.0 * a * a + 8.0 * a * c,
          -4.0 * im.GammaPrime * im.GammaPrime};
}

namespace {

// Roots of a polynomial of degree ≤ 3 via the quartic oracle: the polynomial
// is padded with roots at ±R beyond its Cauchy bound, which are dropped again.
std::vector<Complex> reduced_roots(const std::array<Complex, 4>& coeffs) {
  double scale = 0.0;
  for (const Complex& c : coeffs) scale = std::max(scale, std::abs(c));
  int degree = 3;
  while (degree > 0 && std::abs(coeffs[degree]) <= kTrimTol * scale) --degree;
  if (degree == 0) return {};
  if (degree == 1) return {-coeffs[0] / coeffs[1]};

  double bound = 0.0;
  for (int k = 0; k < degree; ++k) bound = std::max(bound, std::abs(coeffs[k] / coeffs[degree]));
  const double R = 2.0 * (1.0 + bound) + 1.0;

  std::array<Complex, 5> padded{};
  std::vector<Complex> pads;
  if (degree == 3) {
    pads = {Complex(R)};
    for (int k = 0; k <= 3; ++k) {
      padded[k + 1] += coeffs[k];
      padded[k] -= R * coeffs[k];
    }
  } else {
    pads = {Complex(R), Complex(-R)};
    for (int k = 0; k <= 2; ++k) {
      padded[k + 2] += coeffs[k];
      padded[k] -= R * R * coeffs[k];
    }
  }
  QuarticCoefficients q;
  q.a = padded;
  ::lrc::RootSet found = quartic_roots(q);

  std::vector<Complex> roots(found.roots.begin(), found.roots.end());
  for (const Complex& pad : pads) {
    auto it = std::min_element(roots.begin(), roots.end(), [&](Complex x, Complex y) {
      return std::abs(x - pad) < std::abs(y - pad);
    });
    roots.erase(it);
  }

  // Newton clean-up on the unpadded polynomial.
  auto eval = [&](Complex z) {
    Complex acc = coeffs[degree];
    for (int k = degree - 1; k >= 0; --k) acc = acc * z + coeffs[k];
    return acc;
  };
  auto deriv = [&](Complex z) {
    Complex acc = static_cast<double>(degree) * coeffs[degree];
    for (int k = degree - 1; k >= 1; --k) acc = acc * z + static_cast<double>(k) * coeffs[k];
    return acc;
  };
  for (Complex& z : roots) {
    for (int it = 0; it < 8; ++it) {
      const Complex d = deriv(z);
      if (d == Complex(0.0)) break;
      const Complex next = z - eval(z) / d;
      if (!(std::abs(eval(next)) < std::abs(eval(z)))) break;
      z = next;
    }
  }
  return roots;
}

GeneralSolution evaluate_solution(Complex omega2, int sign, const NormalizedCircuit& n,
                                  const ClosedFormIntermediates& im) {
  const double C2 = n.c2t, G1 = n.g1t, G2 = n.g2t, M = n.mt;
  GeneralSolution s;
  s.sign = sign;
  s.omega2 = omega2;
  s.omega_of_omega2 = omega_of_omega2(omega2, n);
  s.omega_pm_of_omega2 = omega_pm_of_omega2(omega2, sign, n);
  s.omega1 = kJ * G1 / 2.0 + static_cast<double>(sign) * s.omega_of_omega2;
  s.constraint_residual = std::abs(implicit_constraint(omega2, sign, n));

  s.kappa12 = M / (-kJ * G2 / C2 + s.omega1 + s.omega2);
  const Complex shifted1 = s.omega1 - kJ * G1 / 2.0;
  s.kappa21 = (im.Gamma * im.Gamma - shifted1 * shifted1) / s.kappa12;

  s.omega1_prime = kJ * G1 - s.omega1;
  s.omega2_prime = C2 * M / (kJ * G2 - C2 * s.omega1 - C2 * s.omega2);
  s.c = kappa12_prime_coefficients(omega2, n);
  const Complex w1 = s.omega1;
  s.kappa12_prime = s.c.c3 * w1 * w1 * w1 + s.c.c2 * w1 * w1 + s.c.c1 * w1 + s.c.c0;
  s.kappa21_prime = s.omega2 - kJ * G2 / C2;

  for (Complex v : {s.omega1, s.omega2, s.kappa12, s.kappa21, s.omega1_prime, s.omega2_prime,
                    s.kappa12_prime, s.kappa21_prime}) {
    if (!is_finite(v)) s.finite = false;
  }
  return s;
}

}  // namespace

std::vector<GeneralSolution> closed_general(const NormalizedCircuit& n) {
  const ClosedFormIntermediates im = intermediates(n);
  for (Complex v : {im.Gamma, im.GammaPrime, im.Lambda}) {
    if (!is_finite(v)) throw ReductionFailure("closed-form intermediates are not finite");
  }
  const double beta = n.g2t / (2 * n.c2t);
  const Complex a = im.Lambda * im.Lambda;
  const Complex c = im.Gamma * im.Gamma - a;

  const auto poly = reduced_polynomial(n);
  double poly_scale = 0.0;
  for (const Complex& k : poly) poly_scale = std::max(poly_scale, std::abs(k));
  const double input_scale = 1.0 + std::norm(im.Gamma) + std::norm(im.Lambda) + n.mt * n.mt;

  std::vector<GeneralSolution> out;
  if (poly_scale <= 1e-14 * input_scale * input_scale * input_scale * input_scale) {
    // The squared constraint vanishes identically (M = 0, Γ' = 0): solve the
    // two factors of the constraint separately.
    const Complex lam = im.Lambda;
    out.push_back(evaluate_solution(lam + kJ * beta, +1, n, im));
    out.push_back(evaluate_solution(-lam + kJ * beta, -1, n, im));
    if (std::abs(im.GammaPrime) > 0.0) {
      for (Complex t : {im.GammaPrime, -im.GammaPrime}) {
        const Complex y = (t * t - c) / (2.0 * t);
        const Complex w2 = y + kJ * beta;
        const int sign = std::abs(implicit_constraint(w2, +1, n)) <=
                                 std::abs(implicit_constraint(w2, -1, n))
                             ? +1
                             : -1;
        out.push_back(evaluate_solution(w2, sign, n, im));
      }
    } else if (std::abs(c) <= 1e-14 * input_scale) {
      // Ω̃− ≡ 0 for every Ω̃2; y = 0 represents the continuum.
      out.push_back(evaluate_solution(Complex(0.0, beta), +1, n, im));
    }
    return out;
  }

  for (const Complex& z : reduced_roots(poly)) {
    const Complex y0 = csqrt(z);
    for (Complex y : {y0, -y0}) {
      const Complex w2 = y + kJ * beta;
      const int sign = std::abs(implicit_constraint(w2, +1, n)) <=
                               std::abs(implicit_constraint(w2, -1, n))
                           ? +1
                           : -1;
      out.push_back(evaluate_solution(w2, sign, n, im));
    }
  }
  return out;
}

SpecialCaseSolutions closed_identical(const NormalizedCircuit& n, double tol_scenario) {
  require_scenario(classify(n, tol_scenario).equal_loss,
                   "identical frequency and decay rate");
  const ClosedFormIntermediates im = intermediates(n);
  const Complex g2 = im.Gamma * im.Gamma;
  const Complex inner = csqrt(-n.mt * n.mt + g2 * g2);
  SpecialCaseSolutions out;
  out.kind = SpecialCase::identical;
  for (int outer : {+1, -1}) {
    for (int in : {+1, -1}) {
      SpecialValue v;
      v.omega1 = static_cast<double>(outer) * csqrt(g2 + static_cast<double>(in) * inner) /
                     std::numbers::sqrt2 +
                 kJ * n.g1t / 2.0;
      v.omega2 = v.omega1;
      v.finite = is_finite(v.omega1);
      out.values.push_back(v);
    }
  }
  return out;
}

SpecialCaseSolutions closed_pt(const NormalizedCircuit& n, double tol_scenario) {
  require_scenario(classify(n, tol_scenario).pt_symmetric, "balanced gain/loss");
  const ClosedFormIntermediates im = intermediates(n);
  const double G1 = n.g1t, M = n.mt;
  const Complex g2 = im.Gamma * im.Gamma;
  SpecialCaseSolutions out;
  out.kind = SpecialCase::pt_symmetric;

  if (G1 == 0.0) {
    out.first_family_undefined = true;
  } else {
    const Complex root = csqrt(M * M - G1 * G1 * g2);
    for (int s : {+1, -1}) {
      SpecialValue v;
      v.family = 1;
      v.omega1 = kJ * (G1 / 2.0 + static_cast<double>(s) * root / G1);
      v.omega2 = -v.omega1;
      v.finite = is_finite(v.omega1);
      out.values.push_back(v);
    }
  }

  const Complex quarter = G1 * G1 / 4.0;
  const Complex inner = csqrt(-M * M + (g2 + quarter) * (g2 + quarter));
  for (int outer : {+1, -1}) {
    for (int in : {+1, -1}) {
      SpecialValue v;
      v.family = 2;
      v.omega2 = static_cast<double>(outer) *
                     csqrt(g2 - quarter + static_cast<double>(in) * inner) /
                     std::numbers::sqrt2 -
                 kJ * G1 / 2.0;
      v.omega1 = v.omega2 + kJ * G1;
      v.finite = is_finite(v.omega1) && is_finite(v.omega2);
      out.values.push_back(v);
    }
  }
  return out;
}

SpecialCaseSolutions closed_lossless(const NormalizedCircuit& n, double tol_scenario) {
  require_scenario(classify(n, tol_scenario).lossless, "identical lossless");
  const double L2 = n.l2t, M = n.mt;
  const double M2 = M * M;
  const Complex inner = csqrt(Complex(L2 * L2 - M2 * (M2 - L2) * (M2 - L2)));
  SpecialCaseSolutions out;
  out.kind = SpecialCase::lossless;
  for (int outer : {+1, -1}) {
    for (int in : {+1, -1}) {
      SpecialValue v;
      v.omega1 = static_cast<double>(outer) *
                 csqrt((L2 + static_cast<double>(in) * inner) / (2.0 * (L2 - M2)));
      v.omega2 = v.omega1;
      v.has_coupling = true;
      v.kappa12 = M / (2.0 * v.omega1);
      v.kappa21 = v.kappa12;
      v.omega_plus = v.omega1 + v.kappa12;
      v.omega_minus = v.omega1 - v.kappa12;
      v.v_plus = Vec2c(1.0, 1.0);
      v.v_minus = Vec2c(-1.0, 1.0);
      v.finite = is_finite(v.omega1) && is_finite(v.kappa12);
      out.values.push_back(v);
    }
  }
  return out;
}

// -----------------------------------------------------------------------------

namespace {

const char* kProvenance =
    "closed forms evaluated as printed with normalized values substituted one-for-one "
    "(L2->l2t, C2->c2t, G1->g1t, G2->g2t, M->mt), principal square roots; the numerical "
    "solvent branches are authoritative and this comparison is informational";

struct Pools {
  std::vector<Complex> diagonal, coupling, transform_diagonal, transform_coupling;
  std::vector<const HamiltonianBranch*> valid;
};

Pools collect(const BranchSet& set) {
  Pools p;
  for (const HamiltonianBranch& b : set.branches) {
    if (!b.valid()) continue;
    p.valid.push_back(&b);
    p.diagonal.insert(p.diagonal.end(), {b.omega1(), b.omega2()});
    p.coupling.insert(p.coupling.end(), {b.kappa12(), b.kappa21()});
    p.transform_diagonal.insert(p.transform_diagonal.end(), {b.omega1_prime(), b.omega2_prime()});
    p.transform_coupling.insert(p.transform_coupling.end(),
                                {b.kappa12_prime(), b.kappa21_prime()});
  }
  return p;
}

class ReportBuilder {
 public:
  ReportBuilder(std::string source, const BranchSet& set, double tol)
      : pools_(collect(set)), tol_(tol) {
    report_.source = std::move(source);
    report_.provenance = kProvenance;
  }

  void skip(std::string label, Role role, Complex closed) {
    ComparisonRow row;
    row.label = std::move(label);
    row.role = role;
    row.closed_value = closed;
    row.nearest_numerical_value = Complex(std::numeric_limits<double>::quiet_NaN());
    row.abs_gap = row.rel_gap = std::numeric_limits<double>::quiet_NaN();
    row.skipped = true;
    ++report_.skipped;
    report_.rows.push_back(std::move(row));
  }

  void value(std::string label, Role role, Complex closed) {
    const std::vector<Complex>& pool = pool_for(role);
    if (!is_finite(closed) || pool.empty()) {
      skip(std::move(label), role, closed);
      return;
    }
    Complex nearest = pool.front();
    for (const Complex& v : pool) {
      if (std::abs(v - closed) < std::abs(nearest - closed)) nearest = v;
    }
    add(std::move(label), role, closed, nearest);
  }

  // A closed eigenvector v is compared through its direction ratio v0/v1
  // against the ratio of H·v for the branch that distorts it least.
  void eigenvector(std::string label, const Vec2c& v) {
    const Complex closed = v[0] / v[1];
    bool found = false;
    Complex nearest;
    for (const HamiltonianBranch* b : pools_.valid) {
      const Vec2c image = b->H * v;
      if (image[1] == Complex(0.0)) continue;
      const Complex ratio = image[0] / image[1];
      if (!is_finite(ratio)) continue;
      if (!found || std::abs(ratio - closed) < std::abs(nearest - closed)) {
        nearest = ratio;
        found = true;
      }
    }
    if (!found) {
      skip(std::move(label), Role::eigenvector, closed);
      return;
    }
    add(std::move(label), Role::eigenvector, closed, nearest);
  }

  ComparisonReport finish() { return std::move(report_); }

 private:
  const std::vector<Complex>& pool_for(Role role) const {
    switch (role) {
      case Role::coupling:
        return pools_.coupling;
      case Role::transform_diagonal:
        return pools_.transform_diagonal;
      case Role::transform_coupling:
        return pools_.transform_coupling;
      default:
        return pools_.diagonal;
    }
  }

  void add(std::string label, Role role, Complex closed, Complex numerical) {
    ComparisonRow row;
    row.label = std::move(label);
    row.role = role;
    row.closed_value = closed;
    row.nearest_numerical_value = numerical;
    row.abs_gap = std::abs(closed - numerical);
    row.rel_gap = row.abs_gap / std::max({1.0, std::abs(closed), std::abs(numerical)});
    row.match = row.rel_gap <= tol_;
    ++(row.match ? report_.matches : report_.mismatches);
    report_.rows.push_back(std::move(row));
  }

  Pools pools_;
  double tol_;
  ComparisonReport report_;
};

}  // namespace

ComparisonReport compare(const SpecialCaseSolutions& closed, const BranchSet& numerical,
                         double tol_compare) {
  ReportBuilder builder(std::string(to_string(closed.kind)), numerical, tol_compare);
  for (std::size_t i = 0; i < closed.values.size(); ++i) {
    const SpecialValue& v = closed.values[i];
    const std::string tag = "[" + std::to_string(i) + "]";
    if (!v.finite) {
      builder.skip("omega1" + tag, Role::diagonal, v.omega1);
      continue;
    }
    builder.value("omega1" + tag, Role::diagonal, v.omega1);
    builder.value("omega2" + tag, Role::diagonal, v.omega2);
    if (v.has_coupling) {
      builder.value("kappa12" + tag, Role::coupling, v.kappa12);
      builder.value("kappa21" + tag, Role::coupling, v.kappa21);
      builder.eigenvector("v_plus" + tag, v.v_plus);
      builder.eigenvector("v_minus" + tag, v.v_minus);
    }
  }
  return builder.finish();
}

ComparisonReport compare(const std::vector<GeneralSolution>& closed, const BranchSet& numerical,
                         double tol_compare) {
  ReportBuilder builder("general", numerical, tol_compare);
  for (std::size_t i = 0; i < closed.size(); ++i) {
    const GeneralSolution& s = closed[i];
    const std::string tag = "[" + std::to_string(i) + "]";
    builder.value("omega1" + tag, Role::diagonal, s.omega1);
    builder.value("omega2" + tag, Role::diagonal, s.omega2);
    builder.value("kappa12" + tag, Role::coupling, s.kappa12);
    builder.value("kappa21" + tag, Role::coupling, s.kappa21);
    builder.value("omega1_prime" + tag, Role::transform_diagonal, s.omega1_prime);
    builder.value("omega2_prime" + tag, Role::transform_diagonal, s.omega2_prime);
    builder.value("kappa12_prime" + tag, Role::transform_coupling, s.kappa12_prime);
    builder.value("kappa21_prime" + tag, Role::transform_coupling, s.kappa21_prime);
  }
  return builder.finish();
}

}  // namespace lrc::closed_forms
