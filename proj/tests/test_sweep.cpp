#include "lrc/sweep.hpp"

#include "test_helpers.hpp"

#include <limits>
#include <sstream>

using namespace lrc;

namespace {

GridSpec single(SweepScenario s, double m, double g) { return {s, {m, m, 1}, {g, g, 1}}; }

std::vector<std::string> data_lines(const std::string& csv) {
  std::vector<std::string> out;
  std::istringstream in(csv);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line[0] != '#') out.push_back(line);
  }
  return out;
}

}  // namespace

TEST_CASE("axes") {
  const Axis a = parse_axis("0:0.95:4");
  CHECK(a.start == 0.0);
  CHECK(a.stop == 0.95);
  CHECK(a.count == 4);
  CHECK(a.at(0) == 0.0);
  CHECK(a.at(3) == 0.95);
  check_close(a.at(1), 0.95 / 3, 1e-16);
  CHECK(parse_axis("0.5:0.5:1").at(0) == 0.5);
  CHECK_THROWS_AS(parse_axis("0:1"), InvalidGrid);
  CHECK_THROWS_AS(parse_axis("0:1:x"), InvalidGrid);
  CHECK_THROWS_AS(parse_axis("a:1:3"), InvalidGrid);
  CHECK_THROWS_AS(check({SweepScenario::pt_symmetric, {0, 1, 0}, {0, 1, 2}}), InvalidGrid);
  CHECK_THROWS_AS(check({SweepScenario::pt_symmetric, {0, 1.0, 3}, {0, 1, 2}}), InvalidGrid);
  CHECK_NOTHROW(check({SweepScenario::pt_symmetric, {0, 0.95, 3}, {0, 1, 2}}));
}

TEST_CASE("grid circuits") {
  GridSpec spec{SweepScenario::equal_loss, {0, 1, 2}, {0, 1, 2}, 2.0, 0.5};
  CHECK(grid_circuit(spec, 0.3, 0.4) == make_normalized(2.0, 0.5, 0.4, 0.2, 0.3));
  spec.scenario = SweepScenario::pt_symmetric;
  CHECK(grid_circuit(spec, 0.3, 0.4) == make_normalized(2.0, 0.5, 0.4, -0.2, 0.3));
}

TEST_CASE("single-cell values") {
  const GridCell a = sweep_grid(single(SweepScenario::equal_loss, 0.2, 0.0)).front();
  check_close(a.re_mean, 1.0154524589625858, 1e-12);
  check_close(a.im_mean, 0.0, 1e-15);

  const GridCell b = sweep_grid(single(SweepScenario::equal_loss, 0.6, 0.0)).front();
  check_close(b.re_mean, 1.1858541225631422, 1e-12);
  check_close(b.re_dev_p, 0.39528470752104742, 1e-12);
  check_close(b.re_dev_m, -0.39528470752104742, 1e-12);
  CHECK(b.branch_id == 5);  // roots 2 and 3, the positive pair
  CHECK_FALSE(b.ep_flag);

  const GridCell c = sweep_grid(single(SweepScenario::pt_symmetric, 0.6, 0.5)).front();
  check_close(c.im_dev_p, 0.0, 1e-9);
  check_close(c.re_dev_p, 0.30618621784789726, 1e-12);
}

TEST_CASE("cells are row-major with g fastest and deviations are opposite") {
  const GridSpec spec{SweepScenario::equal_loss, {0.05, 0.9, 5}, {0.0, 1.0, 4}};
  const auto cells = sweep_grid(spec);
  REQUIRE(cells.size() == 20);
  for (int r = 0; r < 5; ++r) {
    for (int c = 0; c < 4; ++c) {
      const GridCell& cell = cells[r * 4 + c];
      CHECK(cell.m == spec.m_axis.at(r));
      CHECK(cell.g == spec.g_axis.at(c));
      const double eps = 4 * std::numeric_limits<double>::epsilon();
      CHECK(std::abs(cell.re_dev_p + cell.re_dev_m) <= eps * (1 + std::abs(cell.re_dev_p)));
      CHECK(std::abs(cell.im_dev_p + cell.im_dev_m) <= eps * (1 + std::abs(cell.im_dev_p)));
      CHECK(cell.branch_id >= 0);
      CHECK(cell.branch_id < 6);
    }
  }
}

TEST_CASE("equal-loss trends") {
  const GridSpec spec{SweepScenario::equal_loss, {0.05, 0.9, 12}, {0.0, 1.0, 12}};
  const auto cells = sweep_grid(spec, {4, false, {}});
  for (int r = 1; r < 12; ++r) CHECK(cells[r * 12].re_mean > cells[(r - 1) * 12].re_mean);
  for (int r = 0; r < 12; ++r) {
    for (int c = 1; c < 12; ++c) CHECK(cells[r * 12 + c].im_mean > cells[r * 12 + c - 1].im_mean);
    for (int c = 0; c < 12; ++c) {
      const GridCell& cell = cells[r * 12 + c];
      // equal losses shift both modes by the same imaginary amount
      CHECK(std::abs(cell.im_dev_p) <= 1e-9);
    }
  }
}

TEST_CASE("pt phase dichotomy on the grid") {
  const GridSpec spec{SweepScenario::pt_symmetric, {0.3, 0.9, 4}, {0.0, 1.5, 16}};
  const auto cells = sweep_grid(spec);
  for (const GridCell& cell : cells) {
    const double u = 1 - cell.m * cell.m;
    const double ep1 = std::sqrt((2 - 2 * std::sqrt(u)) / u);
    const double ep2 = std::sqrt((2 + 2 * std::sqrt(u)) / u);
    if (std::abs(cell.g - ep1) < 1e-3 || std::abs(cell.g - ep2) < 1e-3) continue;
    INFO("m=" << cell.m << " g=" << cell.g);
    if (cell.g < ep1) CHECK(std::abs(cell.im_dev_p) <= 1e-9);
    if (cell.g > ep1 && cell.g < ep2) CHECK(std::abs(cell.re_dev_p) <= 1e-9);
  }
}

TEST_CASE("output does not depend on the worker count") {
  const GridSpec spec{SweepScenario::pt_symmetric, {0, 0.95, 9}, {0, 1.5, 11}};
  const std::string one = sweep_csv(spec, sweep_grid(spec, {1, false, {}}));
  const std::string many = sweep_csv(spec, sweep_grid(spec, {7, false, {}}));
  CHECK(one == many);
}

TEST_CASE("csv layout") {
  const GridSpec spec{SweepScenario::pt_symmetric, {0, 0.95, 4}, {0, 1.5, 4}};
  const std::string csv = sweep_csv(spec, sweep_grid(spec));
  CHECK(csv.find('\r') == std::string::npos);
  CHECK(csv.back() == '\n');
  CHECK(csv.rfind("# ", 0) == 0);
  const auto lines = data_lines(csv);
  REQUIRE(lines.size() == 17);
  CHECK(lines[0] == "m,g,re_mean,im_mean,re_dev_p,im_dev_p,re_dev_m,im_dev_m,branch_id,ep_flag");
  CHECK(lines[1].rfind("0,0,", 0) == 0);
}

TEST_CASE("shortest round-trip floats") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-2.5e-12) == "-2.5e-12");
  CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
  for (double v : {1.0154524589625858, 0.30618621784789726, 1e-300, 123456.789}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("ep locus") {
  const GridSpec spec{SweepScenario::pt_symmetric, {0.2, 0.6, 3}, {0, 0, 1}};
  const auto locus = ep_locus(spec, 1e-10);
  REQUIRE(locus.size() == 3);
  REQUIRE(locus[0].g_ep);
  REQUIRE(locus[2].g_ep);
  check_close(*locus[0].g_ep, 0.20516305957461799, 1e-8);
  check_close(*locus[2].g_ep, 0.79056941504209483, 1e-8);
  for (const auto& p : locus) {
    REQUIRE(p.g_ep);
    CHECK(p.bracket_lo <= *p.g_ep);
    CHECK(*p.g_ep <= p.bracket_hi);
    CHECK(p.bracket_hi - p.bracket_lo <= 1e-10);
  }
  CHECK(locus[0].m < locus[1].m);

  const auto lines = data_lines(ep_csv(spec, locus));
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "m,g_ep,bracket_lo,bracket_hi");

  // an exceptional point at 0 cannot be bracketed: marked, not fatal
  const auto zero = ep_locus({SweepScenario::pt_symmetric, {0, 0, 1}, {0, 0, 1}}, 1e-8);
  REQUIRE(zero.size() == 1);
  CHECK_FALSE(zero[0].g_ep);
  CHECK_FALSE(zero[0].failure.empty());

  CHECK_THROWS_AS(ep_locus({SweepScenario::equal_loss, {0.2, 0.6, 3}, {0, 0, 1}}, 1e-8), InvalidGrid);
}
