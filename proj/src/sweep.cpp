#include "lrc/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

namespace lrc {

std::string_view to_string(SweepScenario s) {
  return s == SweepScenario::equal_loss ? "equal-loss" : "pt-symmetric";
}

double Axis::at(int k) const {
  if (count <= 1) return start;
  if (k == count - 1) return stop;
  return start + (stop - start) * static_cast<double>(k) / static_cast<double>(count - 1);
}

Axis parse_axis(std::string_view text) {
  Axis axis;
  const auto first = text.find(':');
  const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
  if (second == std::string_view::npos) {
    throw InvalidGrid("axis must be written start:stop:count, got '" + std::string(text) + "'");
  }
  auto parse = [&](std::string_view part, auto& out) {
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
    if (ec != std::errc() || ptr != part.data() + part.size()) {
      throw InvalidGrid("cannot parse axis field '" + std::string(part) + "'");
    }
  };
  parse(text.substr(0, first), axis.start);
  parse(text.substr(first + 1, second - first - 1), axis.stop);
  parse(text.substr(second + 1), axis.count);
  return axis;
}

void check(const GridSpec& spec) {
  for (const Axis* axis : {&spec.m_axis, &spec.g_axis}) {
    if (axis->count < 1) throw InvalidGrid("axis count must be at least 1");
    if (!std::isfinite(axis->start) || !std::isfinite(axis->stop)) {
      throw InvalidGrid("axis bounds must be finite");
    }
  }
  if (!(spec.l2t > 0) || !(spec.c2t > 0) || !std::isfinite(spec.l2t) || !std::isfinite(spec.c2t)) {
    throw InvalidGrid("l2t and c2t must be positive and finite");
  }
  const double m_max = std::max(std::abs(spec.m_axis.start), std::abs(spec.m_axis.stop));
  if (!(m_max * m_max < spec.l2t)) throw InvalidGrid("grid contains overcoupled circuits (m^2 >= l2t)");
}

NormalizedCircuit grid_circuit(const GridSpec& spec, double m, double g) {
  const double g2 = spec.scenario == SweepScenario::equal_loss ? g * spec.c2t : -g * spec.c2t;
  return make_normalized(spec.l2t, spec.c2t, g, g2, m);
}

namespace {

struct Candidate {
  int branch = -1;
  Spectrum spectrum;
  std::array<Complex, 2> eigenvalues{};
};

struct CellData {
  double m = 0.0;
  double g = 0.0;
  bool ok = false;
  std::string error;
  std::vector<Candidate> candidates;
};

CellData evaluate_cell(const GridSpec& spec, double m, double g, const Tolerances& tol) {
  CellData cell;
  cell.m = m;
  cell.g = g;
  try {
    const Analysis a = analyze(grid_circuit(spec, m, g), tol);
    for (int b = 0; b < 6; ++b) {
      const HamiltonianBranch& br = a.branches.branches[b];
      if (!br.valid()) continue;
      cell.candidates.push_back({b, eigenpairs(br), br.eigenvalues});
    }
    if (cell.candidates.empty()) {
      cell.error = "no valid Hamiltonian branch";
    } else {
      cell.ok = true;
    }
  } catch (const std::exception& e) {
    cell.error = e.what();
  }
  return cell;
}

std::size_t pick_initial(const std::vector<Candidate>& cands) {
  auto re_sum = [](const Candidate& c) {
    return c.eigenvalues[0].real() + c.eigenvalues[1].real();
  };
  auto right_half = [](const Candidate& c) {
    return std::all_of(c.eigenvalues.begin(), c.eigenvalues.end(), [](Complex z) {
      return z.real() >= -1e-12 * (1.0 + std::abs(z));
    });
  };
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (!right_half(cands[i])) continue;
    if (!best || re_sum(cands[i]) > re_sum(cands[*best])) best = i;
  }
  if (best) return *best;
  std::size_t fallback = 0;
  for (std::size_t i = 1; i < cands.size(); ++i) {
    if (re_sum(cands[i]) > re_sum(cands[fallback])) fallback = i;
  }
  return fallback;
}

double pair_distance(const Spectrum& a, const Spectrum& b) {
  return std::min(std::abs(a.omega_plus - b.omega_plus) + std::abs(a.omega_minus - b.omega_minus),
                  std::abs(a.omega_plus - b.omega_minus) + std::abs(a.omega_minus - b.omega_plus));
}

std::size_t pick_nearest(const std::vector<Candidate>& cands, const Spectrum& ref) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < cands.size(); ++i) {
    if (pair_distance(cands[i].spectrum, ref) < pair_distance(cands[best].spectrum, ref)) best = i;
  }
  return best;
}

GridCell make_cell(const CellData& data, const Candidate& c) {
  const Spectrum& s = c.spectrum;
  GridCell cell;
  cell.m = data.m;
  cell.g = data.g;
  cell.re_mean = s.mean.real();
  cell.im_mean = s.mean.imag();
  const Complex dev_p = s.omega_plus - s.mean;
  const Complex dev_m = s.omega_minus - s.mean;
  cell.re_dev_p = dev_p.real();
  cell.im_dev_p = dev_p.imag();
  cell.re_dev_m = dev_m.real();
  cell.im_dev_m = dev_m.imag();
  cell.branch_id = c.branch;
  cell.ep_flag = 2.0 * std::sqrt(std::abs(s.discriminant)) < 1e-8 * (1.0 + std::abs(s.mean));
  return cell;
}

GridCell make_hole(const CellData& data) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  GridCell cell;
  cell.m = data.m;
  cell.g = data.g;
  cell.re_mean = cell.im_mean = cell.re_dev_p = cell.im_dev_p = cell.re_dev_m = cell.im_dev_m = nan;
  cell.branch_id = -1;
  cell.hole = true;
  return cell;
}

}  // namespace

std::vector<GridCell> sweep_grid(const GridSpec& spec, const SweepOptions& opt) {
  check(spec);
  const int rows = spec.m_axis.count;
  const int cols = spec.g_axis.count;
  const std::size_t total = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);

  std::vector<CellData> data(total);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      const int r = static_cast<int>(i / cols);
      const int c = static_cast<int>(i % cols);
      data[i] = evaluate_cell(spec, spec.m_axis.at(r), spec.g_axis.at(c), opt.tolerances);
    }
  };
  const int workers = std::clamp(opt.workers, 1, 256);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  // Sequential tracking pass.
  std::vector<GridCell> cells(total);
  std::optional<Spectrum> previous;   // last tracked cell
  std::optional<Spectrum> row_start;  // first tracked cell of the latest row
  for (int r = 0; r < rows; ++r) {
    std::optional<Spectrum> row_first;
    for (int c = 0; c < cols; ++c) {
      const std::size_t i = static_cast<std::size_t>(r) * cols + c;
      const CellData& d = data[i];
      if (!d.ok) {
        if (!opt.skip_failures) throw GridPointFailure(d.m, d.g, d.error);
        cells[i] = make_hole(d);
        continue;
      }
      const std::optional<Spectrum>& ref = row_first ? previous : (row_start ? row_start : previous);
      const std::size_t pick = ref ? pick_nearest(d.candidates, *ref) : pick_initial(d.candidates);
      const Candidate& chosen = d.candidates[pick];
      cells[i] = make_cell(d, chosen);
      previous = chosen.spectrum;
      if (!row_first) row_first = chosen.spectrum;
    }
    if (row_first) row_start = row_first;
  }
  return cells;
}

std::vector<EpLocusPoint> ep_locus(const GridSpec& spec, double tol, const Tolerances& tolerances) {
  check(spec);
  if (spec.scenario != SweepScenario::pt_symmetric) {
    throw InvalidGrid("exceptional-point locus requires the pt scenario");
  }
  constexpr int kMaxWidenings = 8;
  std::vector<EpLocusPoint> out;
  for (int k = 0; k < spec.m_axis.count; ++k) {
    EpLocusPoint point;
    point.m = spec.m_axis.at(k);
    const NormalizedCircuit base = make_normalized(spec.l2t, spec.c2t, 0.0, 0.0, point.m);
    const double lo = 0.5 * std::abs(point.m);
    double hi = 2.0 * std::abs(point.m) + 0.1;
    point.bracket_lo = lo;
    for (int attempt = 0; attempt <= kMaxWidenings; ++attempt) {
      point.bracket_hi = hi;
      try {
        const EpResult ep = find_ep(base, lo, hi, tol, tolerances);
        point.g_ep = ep.g_ep;
        point.bracket_lo = ep.bracket_lo;
        point.bracket_hi = ep.bracket_hi;
        point.heuristic = ep.heuristic;
        point.failure.clear();
        break;
      } catch (const NoSignChange& e) {
        point.failure = e.what();
        hi = lo + 2.0 * (hi - lo);
      } catch (const Error& e) {
        point.failure = e.what();
        break;
      }
    }
    out.push_back(point);
  }
  std::sort(out.begin(), out.end(),
            [](const EpLocusPoint& a, const EpLocusPoint& b) { return a.m < b.m; });
  return out;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

namespace {

std::string axis_text(const Axis& a) {
  return format_double(a.start) + ":" + format_double(a.stop) + ":" + std::to_string(a.count);
}

void write_preamble(std::ostringstream& out, std::string_view command, const GridSpec& spec) {
  out << "# lrcham " << command << "\n";
  out << "# scenario=" << to_string(spec.scenario) << " m=" << axis_text(spec.m_axis);
  // The ep locus solves for g, so it has no g axis.
  if (command != "ep") out << " g=" << axis_text(spec.g_axis);
  out << " l2t=" << format_double(spec.l2t)
      << " c2t=" << format_double(spec.c2t) << "\n";
  out << "# frequencies in units of omega1; exp(+j*omega*t) kernel, lossy modes have Im > 0\n";
}

}  // namespace

std::string sweep_csv(const GridSpec& spec, const std::vector<GridCell>& cells) {
  std::ostringstream out;
  write_preamble(out, "sweep", spec);
  out << "# mean=(W+ + W-)/2, dev_p=W+ - mean, dev_m=W- - mean; W+ takes the principal root\n";
  out << "# branch tracking: first cell takes the right-half-plane pair with the largest real "
         "parts, later cells the valid branch nearest the previous cell\n";
  out << "m,g,re_mean,im_mean,re_dev_p,im_dev_p,re_dev_m,im_dev_m,branch_id,ep_flag\n";
  for (const GridCell& c : cells) {
    out << format_double(c.m) << ',' << format_double(c.g) << ',' << format_double(c.re_mean)
        << ',' << format_double(c.im_mean) << ',' << format_double(c.re_dev_p) << ','
        << format_double(c.im_dev_p) << ',' << format_double(c.re_dev_m) << ','
        << format_double(c.im_dev_m) << ',' << c.branch_id << ',' << (c.ep_flag ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string ep_csv(const GridSpec& spec, const std::vector<EpLocusPoint>& locus) {
  std::ostringstream out;
  write_preamble(out, "ep", spec);
  out << "# g_ep=nan marks m values where no exceptional point was bracketed\n";
  out << "m,g_ep,bracket_lo,bracket_hi\n";
  for (const EpLocusPoint& p : locus) {
    out << format_double(p.m) << ','
        << format_double(p.g_ep ? *p.g_ep : std::numeric_limits<double>::quiet_NaN()) << ','
        << format_double(p.bracket_lo) << ',' << format_double(p.bracket_hi) << '\n';
  }
  return out.str();
}

}  // namespace lrc
