#include "lrc/report.hpp"

#include "lrc/closed_forms.hpp"
#include "lrc/spectra.hpp"

#include <json.hpp>

#include <set>

namespace lrc {

namespace {

using nlohmann::json;

json number_field(const json& obj, const char* key, const char* section) {
  if (!obj.contains(key)) {
    throw ParameterFileError(std::string("missing \"") + key + "\" in \"" + section + "\"");
  }
  const json& v = obj.at(key);
  if (!v.is_number()) {
    throw ParameterFileError(std::string("\"") + key + "\" in \"" + section + "\" must be a number");
  }
  return v;
}

void reject_unknown(const json& obj, const std::set<std::string>& known, const char* section) {
  for (const auto& item : obj.items()) {
    if (!known.count(item.key())) {
      throw ParameterFileError("unknown key \"" + item.key() + "\" in \"" + section + "\"");
    }
  }
}

json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json vector_json(const Vec2c& v) { return json::array({complex_json(v[0]), complex_json(v[1])}); }

json raw_json(const RawCircuit& r) {
  return {{"l1", r.l1}, {"c1", r.c1}, {"g1", r.g1}, {"l2", r.l2},
          {"c2", r.c2}, {"g2", r.g2}, {"m", r.m}};
}

json normalized_json(const NormalizedCircuit& n) {
  return {{"l2t", n.l2t}, {"c2t", n.c2t}, {"g1t", n.g1t}, {"g2t", n.g2t},
          {"mt", n.mt},   {"omega1_scale", n.omega1_scale}};
}

json scenario_json(const Scenario& s) {
  return {{"kind", std::string(to_string(s.kind))},
          {"tau1", s.tau1},
          {"tau2", s.tau2},
          {"frequencies_match", s.frequencies_match},
          {"equal_loss", s.equal_loss},
          {"pt_symmetric", s.pt_symmetric},
          {"lossless", s.lossless}};
}

json tolerances_json(const Tolerances& t) {
  return {{"tol_scenario", t.scenario},   {"tol_subspace", t.subspace},
          {"tol_residual", t.residual},   {"tol_roots", t.roots},
          {"tol_compare", t.compare},     {"ep_tol", t.ep}};
}

json spectrum_json(const Spectrum& s) {
  return {{"omega_plus", complex_json(s.omega_plus)},
          {"omega_minus", complex_json(s.omega_minus)},
          {"v_plus", vector_json(s.v_plus)},
          {"v_minus", vector_json(s.v_minus)},
          {"discriminant", complex_json(s.discriminant)},
          {"mean", complex_json(s.mean)},
          {"defective", s.defective}};
}

json comparison_json(const closed_forms::ComparisonReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"label", row.label},
                    {"role", std::string(closed_forms::to_string(row.role))},
                    {"closed_value", complex_json(row.closed_value)},
                    {"nearest_numerical_value", complex_json(row.nearest_numerical_value)},
                    {"abs_gap", row.abs_gap},
                    {"rel_gap", row.rel_gap},
                    {"match", row.match},
                    {"skipped", row.skipped}});
  }
  return {{"source", r.source},     {"rows", rows},         {"matches", r.matches},
          {"mismatches", r.mismatches}, {"skipped", r.skipped}, {"provenance", r.provenance}};
}

// The comparison is informational; failures are recorded, never raised.
json closed_forms_json(const Analysis& a, const Scenario& scenario, const Tolerances& tol) {
  namespace cf = closed_forms;
  json out = json::object();
  try {
    out["general"] = comparison_json(cf::compare(cf::closed_general(a.circuit), a.branches, tol.compare));
  } catch (const Error& e) {
    out["general"] = {{"error", e.what()}};
  }
  if (scenario.equal_loss) {
    out["identical"] =
        comparison_json(cf::compare(cf::closed_identical(a.circuit, tol.scenario), a.branches, tol.compare));
  }
  if (scenario.pt_symmetric) {
    out["pt_symmetric"] =
        comparison_json(cf::compare(cf::closed_pt(a.circuit, tol.scenario), a.branches, tol.compare));
  }
  if (scenario.lossless) {
    out["lossless"] =
        comparison_json(cf::compare(cf::closed_lossless(a.circuit, tol.scenario), a.branches, tol.compare));
  }
  return out;
}

}  // namespace

CircuitInput parse_parameters(std::string_view text, double tol_scenario) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParameterFileError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParameterFileError("parameter file must hold a JSON object");
  const bool has_raw = doc.contains("raw");
  const bool has_norm = doc.contains("normalized");
  if (has_raw == has_norm) {
    throw ParameterFileError("exactly one of \"raw\" or \"normalized\" must be given");
  }
  reject_unknown(doc, {"raw", "normalized"}, "top level");

  CircuitInput input;
  if (has_raw) {
    const json& r = doc.at("raw");
    if (!r.is_object()) throw ParameterFileError("\"raw\" must be an object");
    reject_unknown(r, {"l1", "c1", "g1", "l2", "c2", "g2", "m"}, "raw");
    RawCircuit raw;
    raw.l1 = number_field(r, "l1", "raw").get<double>();
    raw.c1 = number_field(r, "c1", "raw").get<double>();
    raw.g1 = number_field(r, "g1", "raw").get<double>();
    raw.l2 = number_field(r, "l2", "raw").get<double>();
    raw.c2 = number_field(r, "c2", "raw").get<double>();
    raw.g2 = number_field(r, "g2", "raw").get<double>();
    raw.m = number_field(r, "m", "raw").get<double>();
    input.normalized = normalize(validate(raw, tol_scenario));
    input.raw = raw;
  } else {
    const json& n = doc.at("normalized");
    if (!n.is_object()) throw ParameterFileError("\"normalized\" must be an object");
    reject_unknown(n, {"l2t", "c2t", "g1t", "g2t", "mt"}, "normalized");
    input.normalized = make_normalized(
        number_field(n, "l2t", "normalized").get<double>(),
        number_field(n, "c2t", "normalized").get<double>(),
        number_field(n, "g1t", "normalized").get<double>(),
        number_field(n, "g2t", "normalized").get<double>(),
        number_field(n, "mt", "normalized").get<double>());
  }
  return input;
}

SolveReport solve_report(const CircuitInput& input, const Tolerances& tol) {
  const Analysis a = analyze(input.normalized, tol);
  const Scenario scenario = classify(a.circuit, tol.scenario);
  bool ok = true;

  json doc;
  json echo = {{"normalized", normalized_json(a.circuit)}};
  if (input.raw) {
    echo["raw"] = raw_json(*input.raw);
    echo["raw_is_canonical"] = false;
  } else {
    echo["raw"] = raw_json(canonical_raw(a.circuit));
    echo["raw_is_canonical"] = true;
  }
  doc["input"] = echo;
  doc["scenario"] = scenario_json(scenario);

  json coeffs = json::array();
  for (const Complex& c : a.quartic.a) coeffs.push_back(complex_json(c));
  doc["quartic"] = {{"coefficients", coeffs}, {"system_scale", a.quartic.system_scale}};

  json roots = json::array();
  for (int i = 0; i < 4; ++i) {
    const Complex r = a.roots.roots[i];
    const double bound = 1e-10 * root_residual_scale(a.quartic, r);
    if (!(a.roots.residuals[i] <= bound)) ok = false;
    roots.push_back({{"value", complex_json(r)},
                     {"physical", complex_json(denormalize_frequency(r, a.circuit))},
                     {"residual", a.roots.residuals[i]},
                     {"residual_bound", bound}});
  }
  json clusters = json::array();
  for (const auto& [i, k] : a.roots.clusters) clusters.push_back({i, k});
  doc["roots"] = {{"values", roots}, {"clusters", clusters}};

  const double pq_scale = 1.0 + max_abs(a.pencil.P) + max_abs(a.pencil.Q);
  json branches = json::array();
  for (const HamiltonianBranch& b : a.branches.branches) {
    json entry = {{"pair", {b.pair[0], b.pair[1]}},
                  {"eigenvalues", {complex_json(b.eigenvalues[0]), complex_json(b.eigenvalues[1])}},
                  {"status", b.valid() ? "valid" : "rejected_degenerate"},
                  {"subspace_condition", b.subspace_condition}};
    if (b.valid()) {
      if (!(b.solvent_residual <= tol.residual * pq_scale) || !(b.residual <= tol.residual)) {
        ok = false;
      }
      entry["H"] = {{"omega1", complex_json(b.omega1())},
                    {"kappa12", complex_json(b.kappa12())},
                    {"kappa21", complex_json(b.kappa21())},
                    {"omega2", complex_json(b.omega2())}};
      entry["K"] = {{"omega1_prime", complex_json(b.omega1_prime())},
                    {"kappa12_prime", complex_json(b.kappa12_prime())},
                    {"kappa21_prime", complex_json(b.kappa21_prime())},
                    {"omega2_prime", complex_json(b.omega2_prime())}};
      entry["residual"] = b.residual;
      entry["solvent_residual"] = b.solvent_residual;
      entry["spectrum"] = spectrum_json(eigenpairs(b));
    } else {
      entry["H"] = nullptr;
      entry["K"] = nullptr;
      entry["residual"] = nullptr;
      entry["solvent_residual"] = nullptr;
      entry["spectrum"] = nullptr;
    }
    branches.push_back(entry);
  }
  doc["branches"] = branches;
  doc["valid_count"] = a.branches.valid_count;
  if (a.branches.valid_count == 0) ok = false;

  doc["paper_closed_forms"] = closed_forms_json(a, scenario, tol);
  doc["tolerances"] = tolerances_json(tol);
  doc["version"] = std::string(kVersion);
  doc["ok"] = ok;

  return {doc.dump(2) + "\n", ok, a.branches.valid_count};
}

}  // namespace lrc
