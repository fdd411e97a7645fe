#pragma once

#include "lrc/analysis.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace lrc {

inline constexpr std::string_view kVersion = "0.1.0";

/// A circuit read from a parameter file. `raw` is empty when the file gave
/// dimensionless values directly.
struct CircuitInput {
  std::optional<RawCircuit> raw;
  NormalizedCircuit normalized;
};

/// Accepts {"raw": {l1, c1, g1, l2, c2, g2, m}} or
/// {"normalized": {l2t, c2t, g1t, g2t, mt}}, exactly one of them. Throws
/// ParameterFileError on malformed input and the circuit errors on invalid
/// element values.
CircuitInput parse_parameters(std::string_view json_text, double tol_scenario = 1e-12);

struct SolveReport {
  std::string json;  // sorted keys, shortest round-trip floats, trailing newline
  bool ok = false;
  int valid_count = 0;
};

/// Full single-circuit report: input echo, scenario, quartic, roots, the six
/// branches with spectra, and the closed-form comparison.
SolveReport solve_report(const CircuitInput& input, const Tolerances& tol = {});

}  // namespace lrc
