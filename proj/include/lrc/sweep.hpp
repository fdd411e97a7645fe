#pragma once

#include "lrc/spectra.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lrc {

enum class SweepScenario { equal_loss, pt_symmetric };

std::string_view to_string(SweepScenario s);

/// Evenly spaced axis; count = 1 yields just `start`.
struct Axis {
  double start = 0.0;
  double stop = 0.0;
  int count = 1;

  double at(int k) const;
};

/// Parses "start:stop:count". Throws InvalidGrid.
Axis parse_axis(std::string_view text);

struct GridSpec {
  SweepScenario scenario = SweepScenario::equal_loss;
  Axis m_axis;
  Axis g_axis;
  double l2t = 1.0;
  double c2t = 1.0;
};

/// Throws InvalidGrid when an axis is empty or non-finite, or an implied
/// circuit is overcoupled.
void check(const GridSpec& spec);

/// g1t = g, g2t = ±g·c2t (+ for equal loss, − for balanced gain/loss).
NormalizedCircuit grid_circuit(const GridSpec& spec, double m, double g);

struct GridCell {
  double m = 0.0;
  double g = 0.0;
  double re_mean = 0.0;
  double im_mean = 0.0;
  double re_dev_p = 0.0;
  double im_dev_p = 0.0;
  double re_dev_m = 0.0;
  double im_dev_m = 0.0;
  int branch_id = -1;
  bool ep_flag = false;
  bool hole = false;  // evaluation failed and was skipped
};

struct SweepOptions {
  int workers = 1;
  bool skip_failures = false;
  Tolerances tolerances;
};

/// Row-major over (m, g) with g fastest. Cells are evaluated concurrently and
/// the physical branch is then tracked in one sequential pass: the first cell
/// takes the right-half-plane pair with the largest real parts, every later
/// cell the branch closest to its predecessor (the previous g in the row, or
/// the first cell of the previous row). Throws GridPointFailure unless
/// skip_failures is set.
std::vector<GridCell> sweep_grid(const GridSpec& spec, const SweepOptions& options = {});

struct EpLocusPoint {
  double m = 0.0;
  std::optional<double> g_ep;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  bool heuristic = false;
  std::string failure;  // set when no exceptional point was bracketed
};

/// find_ep for every m on the axis, starting from [0.5·m, 2·m + 0.1] and
/// widening the upper end until a sign change is bracketed.
std::vector<EpLocusPoint> ep_locus(const GridSpec& spec, double tol,
                                   const Tolerances& tolerances = {});

/// Shortest representation that parses back to the same double.
std::string format_double(double v);

std::string sweep_csv(const GridSpec& spec, const std::vector<GridCell>& cells);
std::string ep_csv(const GridSpec& spec, const std::vector<EpLocusPoint>& locus);

}  // namespace lrc
