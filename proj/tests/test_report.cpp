#include "lrc/report.hpp"

#include "test_helpers.hpp"

#include <json.hpp>

using namespace lrc;
using nlohmann::json;

TEST_CASE("parameter files") {
  const auto raw = parse_parameters(
      R"({"raw": {"l1": 2, "c1": 0.5, "g1": 0.1, "l2": 4, "c2": 0.25, "g2": 0.05, "m": 1}})");
  REQUIRE(raw.raw);
  CHECK(raw.raw->l2 == 4.0);
  check_close(raw.normalized.mt, 0.5, 1e-15);
  check_close(raw.normalized.g1t, 0.2, 1e-15);

  const auto norm = parse_parameters(R"({"normalized": {"l2t": 1, "c2t": 1, "g1t": 0, "g2t": 0, "mt": 0.6}})");
  CHECK_FALSE(norm.raw);
  CHECK(norm.normalized == make_normalized(1, 1, 0, 0, 0.6));

  CHECK_THROWS_AS(parse_parameters("{"), ParameterFileError);
  CHECK_THROWS_AS(parse_parameters("[]"), ParameterFileError);
  CHECK_THROWS_AS(parse_parameters("{}"), ParameterFileError);
  CHECK_THROWS_AS(parse_parameters(R"({"raw": {"l1": 1, "c1": 1, "g1": 0, "l2": 1, "c2": 1, "g2": 0, "m": 0},
                                      "normalized": {"l2t": 1, "c2t": 1, "g1t": 0, "g2t": 0, "mt": 0}})"),
                  ParameterFileError);
  CHECK_THROWS_AS(parse_parameters(R"({"normalized": {"l2t": 1, "c2t": 1, "g1t": 0, "g2t": 0}})"),
                  ParameterFileError);
  CHECK_THROWS_AS(parse_parameters(R"({"normalized": {"l2t": "1", "c2t": 1, "g1t": 0, "g2t": 0, "mt": 0}})"),
                  ParameterFileError);
  CHECK_THROWS_AS(parse_parameters(R"({"normalized": {"l2t": 1, "c2t": 1, "g1t": 0, "g2t": 0, "mt": 0, "x": 1}})"),
                  ParameterFileError);
  CHECK_THROWS_AS(parse_parameters(R"({"raw": {"l1": 1, "c1": 1, "g1": 0, "l2": 1, "c2": 1, "g2": 0, "m": 1}})"),
                  OvercoupledError);
  CHECK_THROWS_AS(parse_parameters(R"({"normalized": {"l2t": -1, "c2t": 1, "g1t": 0, "g2t": 0, "mt": 0}})"),
                  NonPositiveElement);
}

TEST_CASE("lossless solve report") {
  const auto input = parse_parameters(R"({"normalized": {"l2t": 1, "c2t": 1, "g1t": 0, "g2t": 0, "mt": 0.6}})");
  const SolveReport report = solve_report(input);
  CHECK(report.ok);
  CHECK(report.valid_count == 4);
  CHECK(report.json.back() == '\n');
  CHECK(report.json == solve_report(input).json);

  const json doc = json::parse(report.json);
  CHECK(doc["ok"] == true);
  CHECK(doc["valid_count"] == 4);
  CHECK(doc["version"] == std::string(kVersion));
  CHECK(doc["scenario"]["kind"] == "lossless");
  CHECK(doc["input"]["raw_is_canonical"] == true);
  CHECK(doc["input"]["normalized"]["mt"] == 0.6);
  const std::array<double, 4> roots = {-1.5811388300841897, -0.79056941504209483,
                                       0.79056941504209483, 1.5811388300841897};
  for (int i = 0; i < 4; ++i) {
    check_close(doc["roots"]["values"][i]["value"]["re"].get<double>(), roots[i], 1e-14);
  }
  REQUIRE(doc["branches"].size() == 6);
  int valid = 0;
  for (const auto& b : doc["branches"]) {
    if (b["status"] == "valid") {
      ++valid;
      CHECK(b["residual"].get<double>() <= 1e-9);
      CHECK(b["H"].contains("kappa12"));
      CHECK(b["K"].contains("omega2_prime"));
      CHECK(b["spectrum"].contains("omega_plus"));
    } else {
      CHECK(b["H"].is_null());
    }
  }
  CHECK(valid == 4);
  const json& closed = doc["paper_closed_forms"];
  CHECK(closed.contains("general"));
  CHECK(closed.contains("identical"));
  CHECK(closed.contains("pt_symmetric"));
  CHECK(closed.contains("lossless"));
  CHECK(closed["lossless"]["mismatches"].get<int>() > 0);
  CHECK(doc["tolerances"]["tol_residual"] == 1e-9);
}

TEST_CASE("general circuit report lists only the general closed form") {
  const auto input = parse_parameters(R"({"raw": {"l1": 1, "c1": 2, "g1": 0.3, "l2": 1.5, "c2": 1, "g2": 0.1, "m": 0.4}})");
  const json doc = json::parse(solve_report(input).json);
  CHECK(doc["scenario"]["kind"] == "general");
  CHECK(doc["input"]["raw_is_canonical"] == false);
  CHECK(doc["input"]["raw"]["c1"] == 2.0);
  CHECK(doc["paper_closed_forms"].size() == 1);
  CHECK(doc["valid_count"] == 6);
  check_close(doc["input"]["normalized"]["omega1_scale"].get<double>(), 1 / std::sqrt(2.0), 1e-15);
  const double w = doc["roots"]["values"][3]["value"]["re"].get<double>();
  check_close(doc["roots"]["values"][3]["physical"]["re"].get<double>(), w / std::sqrt(2.0), 1e-15);
}
