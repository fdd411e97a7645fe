#include "lrc/cli.hpp"

#include "lrc/report.hpp"
#include "lrc/sweep.hpp"
#include "lrc/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace lrc::cli {

namespace {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream text;
  text << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path + "'");
  return text.str();
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    out.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file << text;
  file.close();
  if (!file) throw IoError("error while writing '" + path + "'");
}

void add_tolerance_flags(CLI::App* cmd, Tolerances& tol) {
  cmd->add_option("--tol-scenario", tol.scenario, "relative scenario classification tolerance");
  cmd->add_option("--tol-subspace", tol.subspace, "branch rejection threshold");
  cmd->add_option("--tol-residual", tol.residual, "solvent and identity residual bound");
  cmd->add_option("--tol-roots", tol.roots, "root polishing target");
  cmd->add_option("--tol-compare", tol.compare, "closed-form comparison threshold");
  cmd->add_option("--tol-ep", tol.ep, "exceptional point bisection width");
}

struct GridFlags {
  std::string scenario = "equal-loss";
  std::string m = "0:0.95:200";
  std::string g = "0:1.5:200";
  double l2t = 1.0;
  double c2t = 1.0;
};

GridSpec grid_spec(const GridFlags& f) {
  GridSpec spec;
  spec.scenario = f.scenario == "pt" ? SweepScenario::pt_symmetric : SweepScenario::equal_loss;
  spec.m_axis = parse_axis(f.m);
  spec.g_axis = parse_axis(f.g);
  spec.l2t = f.l2t;
  spec.c2t = f.c2t;
  return spec;
}

std::string verify_text(const VerifyReport& random, const VerifyReport& fixed) {
  std::ostringstream text;
  for (const auto* part : {&random, &fixed}) {
    for (const std::string& f : part->failures) text << "FAIL " << f << "\n";
  }
  const int checks = random.checks + fixed.checks;
  const auto failures = random.failures.size() + fixed.failures.size();
  text << "verify: " << checks << " checks, " << failures << " failures ("
       << random.checks << " randomized, " << fixed.checks << " fixed)\n";
  return text.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Effective 2x2 Hamiltonians of two magnetically coupled LRC tanks", "lrcham"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  Tolerances tol;
  std::string params;
  std::string out_path;
  GridFlags grid;
  GridFlags ep_grid;
  ep_grid.scenario = "pt";
  bool skip_failures = false;
  int workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  int random_count = 100;
  std::uint64_t seed = 42;

  CLI::App* solve = app.add_subcommand("solve", "analyse one circuit and write a JSON report");
  solve->add_option("--params", params, "parameter file (JSON)")->required();
  solve->add_option("--out", out_path, "output file (default standard output)");
  add_tolerance_flags(solve, tol);

  CLI::App* sweep = app.add_subcommand("sweep", "evaluate an (m, g) grid and write CSV");
  sweep->add_option("--scenario", grid.scenario, "loss profile")
      ->check(CLI::IsMember({"equal-loss", "pt"}));
  sweep->add_option("--m", grid.m, "coupling axis start:stop:count");
  sweep->add_option("--g", grid.g, "loss/gain axis start:stop:count");
  sweep->add_option("--l2t", grid.l2t, "normalized inductance of tank 2");
  sweep->add_option("--c2t", grid.c2t, "normalized capacitance of tank 2");
  sweep->add_flag("--skip-failures", skip_failures, "mark failing cells as holes instead of aborting");
  sweep->add_option("--workers", workers, "evaluation threads")->check(CLI::Range(1, 256));
  sweep->add_option("--out", out_path, "output file (default standard output)");
  add_tolerance_flags(sweep, tol);

  CLI::App* ep = app.add_subcommand("ep", "locate exceptional points along m and write CSV");
  ep->add_option("--scenario", ep_grid.scenario, "loss profile (pt only)")
      ->check(CLI::IsMember({"pt"}));
  ep->add_option("--m", ep_grid.m, "coupling axis start:stop:count");
  ep->add_option("--l2t", ep_grid.l2t, "normalized inductance of tank 2");
  ep->add_option("--c2t", ep_grid.c2t, "normalized capacitance of tank 2");
  ep->add_option("--out", out_path, "output file (default standard output)");
  add_tolerance_flags(ep, tol);

  CLI::App* verify = app.add_subcommand("verify", "run the invariant suites");
  verify->add_option("--random", random_count, "number of random circuits")->check(CLI::NonNegativeNumber);
  verify->add_option("--seed", seed, "mt19937_64 seed for the random circuits");
  verify->add_option("--out", out_path, "output file (default standard output)");
  add_tolerance_flags(verify, tol);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }

  try {
    if (!tol.all_positive()) throw Error("tolerances must be positive");

    if (*solve) {
      const CircuitInput input = parse_parameters(read_file(params), tol.scenario);
      const SolveReport report = solve_report(input, tol);
      emit(out_path, report.json, out);
      if (!report.ok) err << "warning: report is not ok; see residuals\n";
      return kSuccess;
    }
    if (*sweep) {
      const GridSpec spec = grid_spec(grid);
      SweepOptions opt;
      opt.workers = workers;
      opt.skip_failures = skip_failures;
      opt.tolerances = tol;
      emit(out_path, sweep_csv(spec, sweep_grid(spec, opt)), out);
      return kSuccess;
    }
    if (*ep) {
      GridSpec spec = grid_spec(ep_grid);
      spec.g_axis = {0.0, 0.0, 1};
      const auto locus = ep_locus(spec, tol.ep, tol);
      emit(out_path, ep_csv(spec, locus), out);
      for (const EpLocusPoint& p : locus) {
        if (!p.failure.empty()) err << "m=" << format_double(p.m) << ": " << p.failure << "\n";
      }
      return kSuccess;
    }
    if (*verify) {
      const VerifyReport random = verify_random(random_count, seed, tol);
      const VerifyReport fixed = verify_fixed(tol);
      emit(out_path, verify_text(random, fixed), out);
      return random.ok() && fixed.ok() ? kSuccess : kVerifyFailure;
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace lrc::cli
