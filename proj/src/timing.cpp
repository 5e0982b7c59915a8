// Copyright 2026 The modpack Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "modpack/timing.hpp"

#include <omp.h>

#include <algorithm>
#include <exception>
#include <sstream>
#include <stdexcept>

#include "modpack/util.hpp"

namespace modpack {

Schedule run_packer(PackerKind kind, const std::vector<CircuitTile>& tiles,
                    const ModuleLayout& layout, double tau, const PackOptions& opts) {
  return kind == PackerKind::Double ? double_pack(tiles, layout, tau, opts)
                                    : baseline_pack(tiles, layout, tau, opts);
}

namespace {

int inter_tail(const Schedule& s, const std::vector<CircuitTile>& tiles) {
  int last_intra = -1;
  bool any_inter = false;
  for (const auto& p : s.placements) {
    const auto& t = *std::find_if(tiles.begin(), tiles.end(),
                                  [&](const CircuitTile& c) { return c.tile_id == p.tile_id; });
    if (t.is_inter()) {
      any_inter = true;
    } else {
      last_intra = std::max(last_intra, p.x + t.width);
    }
  }
  if (!any_inter) return 0;
  return last_intra < 0 ? s.makespan : std::max(0, s.makespan - last_intra);
}

int count_inter(const std::vector<CircuitTile>& tiles) {
  return static_cast<int>(
      std::count_if(tiles.begin(), tiles.end(), [](const CircuitTile& t) { return t.is_inter(); }));
}

double safe_ratio(int num, int den) {
  return den == 0 ? 1.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

TimingReport timing_report(const std::vector<CircuitTile>& tiles, const ModuleLayout& layout,
                           double tau, PackerKind packer, const PackOptions& opts) {
  const Schedule delayed = run_packer(packer, tiles, layout, tau, opts);
  const Schedule undelayed = run_packer(packer, tiles, layout, 1.0, opts);
  TimingReport r;
  r.t = delayed.makespan;
  r.t0 = undelayed.makespan;
  r.ratio = safe_ratio(r.t, r.t0);
  r.inter_tail = inter_tail(delayed, tiles);
  r.n_terms = static_cast<int>(tiles.size());
  r.n_inter_tiles = count_inter(tiles);
  return r;
}

TimingReport timing_report(const Ansatz& a, const ModuleLayout& layout, double epsilon,
                           double tau, PackerKind packer, const PackOptions& opts) {
  const auto tiles = compile_ansatz(select_terms(a, epsilon), layout);
  return timing_report(tiles, layout, tau, packer, opts);
}

ThresholdResult free_threshold(const Ansatz& a, const ModuleLayout& layout, double epsilon,
                               double tau_max, const ThresholdOptions& opts) {
  if (!(tau_max >= 1.0)) throw std::invalid_argument("tau_max must be >= 1");
  if (!(opts.step > 0.0)) throw std::invalid_argument("threshold step must be > 0");
  const auto tiles = compile_ansatz(select_terms(a, epsilon), layout);
  const int t0 = run_packer(opts.packer, tiles, layout, 1.0, opts.pack).makespan;

  ThresholdResult result;
  result.threshold = 1.0;
  bool violated = false;
  for (int i = 1;; ++i) {
    const double tau = 1.0 + i * opts.step;
    if (tau > tau_max + 1e-12) break;
    const int t = run_packer(opts.packer, tiles, layout, tau, opts.pack).makespan;
    const bool ok = safe_ratio(t, t0) <= opts.free_tolerance;
    if (!violated) {
      if (ok) {
        result.threshold = tau;
      } else {
        violated = true;
        if (i == 1) result.threshold.reset();
      }
    } else if (ok) {
      result.non_contiguous = true;
      break;
    }
  }
  return result;
}

std::string PhaseTable::to_csv() const {
  std::ostringstream os;
  os << "epsilon,tau,terms,tiles_inter,t,t0,ratio,baseline_ratio\n";
  for (const auto& c : cells) {
    os << format_double(c.epsilon) << ',' << format_double(c.tau) << ',' << c.terms << ','
       << c.tiles_inter << ',' << c.t << ',' << c.t0 << ',' << format_double(c.ratio) << ','
       << format_double(c.baseline_ratio) << '\n';
  }
  return os.str();
}

PhaseTable PhaseTable::from_csv(const std::string& text) {
  PhaseTable table;
  auto lines = split(text, '\n');
  if (lines.empty() || trim(lines[0]) != "epsilon,tau,terms,tiles_inter,t,t0,ratio,baseline_ratio") {
    throw ParseError(1, "unexpected phase table header");
  }
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    auto f = split(trim(lines[i]), ',');
    if (f.size() != 8) throw ParseError(i + 1, "expected 8 columns");
    try {
      PhaseCell c;
      c.epsilon = parse_double(f[0]);
      c.tau = parse_double(f[1]);
      c.terms = static_cast<int>(parse_int(f[2]));
      c.tiles_inter = static_cast<int>(parse_int(f[3]));
      c.t = static_cast<int>(parse_int(f[4]));
      c.t0 = static_cast<int>(parse_int(f[5]));
      c.ratio = parse_double(f[6]);
      c.baseline_ratio = parse_double(f[7]);
      if (std::find(table.epsilons.begin(), table.epsilons.end(), c.epsilon) ==
          table.epsilons.end()) {
        table.epsilons.push_back(c.epsilon);
      }
      if (std::find(table.taus.begin(), table.taus.end(), c.tau) == table.taus.end()) {
        table.taus.push_back(c.tau);
      }
      table.cells.push_back(c);
    } catch (const std::invalid_argument& e) {
      throw ParseError(i + 1, e.what());
    }
  }
  return table;
}

namespace {

struct EpsilonSlice {
  std::vector<CircuitTile> tiles;
  int terms = 0;
  int inter = 0;
  int t0 = 0;
};

std::vector<EpsilonSlice> slice_epsilons(const Ansatz& a, const ModuleLayout& layout,
                                         const std::vector<double>& epsilons,
                                         const PackOptions& opts) {
  std::vector<EpsilonSlice> slices;
  for (double eps : epsilons) {
    EpsilonSlice s;
    s.tiles = compile_ansatz(select_terms(a, eps), layout);
    s.terms = static_cast<int>(s.tiles.size());
    s.inter = count_inter(s.tiles);
    s.t0 = double_pack(s.tiles, layout, 1.0, opts).makespan;
    slices.push_back(std::move(s));
  }
  return slices;
}

PhaseCell eval_cell(const EpsilonSlice& s, const ModuleLayout& layout, double eps, double tau,
                    const PackOptions& opts) {
  PhaseCell c;
  c.epsilon = eps;
  c.tau = tau;
  c.terms = s.terms;
  c.tiles_inter = s.inter;
  c.t = double_pack(s.tiles, layout, tau, opts).makespan;
  c.t0 = s.t0;
  c.ratio = safe_ratio(c.t, c.t0);
  c.baseline_ratio = safe_ratio(baseline_pack(s.tiles, layout, tau, opts).makespan, c.t);
  return c;
}

void check_grid(const std::vector<double>& epsilons, const std::vector<double>& taus) {
  if (epsilons.empty() || taus.empty()) {
    throw std::invalid_argument("sweep needs non-empty epsilon and tau lists");
  }
  for (double t : taus) {
    if (!(t >= 1.0)) throw std::invalid_argument("tau must be >= 1");
  }
}

}  // namespace

PhaseTable sweep(const Ansatz& a, const ModuleLayout& layout,
                 const std::vector<double>& epsilons, const std::vector<double>& taus,
                 const SweepOptions& opts) {
  check_grid(epsilons, taus);
  const auto slices = slice_epsilons(a, layout, epsilons, opts.pack);
  PhaseTable table{epsilons, taus, std::vector<PhaseCell>(epsilons.size() * taus.size())};
  const auto n_cells = static_cast<long long>(table.cells.size());
  const int workers = opts.workers > 0 ? opts.workers : omp_get_max_threads();

  std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic) num_threads(workers)
  for (long long cell = 0; cell < n_cells; ++cell) {
    const auto e = static_cast<std::size_t>(cell) / taus.size();
    const auto t = static_cast<std::size_t>(cell) % taus.size();
    try {
      table.cells[static_cast<std::size_t>(cell)] =
          eval_cell(slices[e], layout, epsilons[e], taus[t], opts.pack);
    } catch (...) {
#pragma omp critical(modpack_sweep_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return table;
}

PhaseTable sweep_serial(const Ansatz& a, const ModuleLayout& layout,
                        const std::vector<double>& epsilons, const std::vector<double>& taus,
                        const SweepOptions& opts) {
  check_grid(epsilons, taus);
  const auto slices = slice_epsilons(a, layout, epsilons, opts.pack);
  PhaseTable table{epsilons, taus, {}};
  for (std::size_t e = 0; e < epsilons.size(); ++e) {
    for (double tau : taus) {
      table.cells.push_back(eval_cell(slices[e], layout, epsilons[e], tau, opts.pack));
    }
  }
  return table;
}

int HardwareParams::pairs_for(InterCnotScheme scheme, int code_distance) {
  return scheme == InterCnotScheme::LatticeSurgery ? code_distance
                                                   : code_distance * code_distance;
}

HardwareTiming hardware_tau(const HardwareParams& h) {
  if (h.code_distance <= 0 || !(h.array_spacing > 0) || !(h.avg_speed > 0) ||
      !(h.bare_gate_time > 0) || h.ladder_length <= 0 || !(h.bell_rate > 0) ||
      h.bell_pairs_per_inter_cnot <= 0 || h.inter_cnots_per_tile <= 0) {
    throw std::invalid_argument("hardware parameters must all be positive");
  }
  const double d = h.code_distance;
  const double n = h.ladder_length;
  const double l_move = d * h.array_spacing;
  HardwareTiming r;
  // Move the row into the entangling zone, step each patch onto its
  // neighbour, and apply the transversal CNOTs.
  r.t_ladder = (h.array_spacing * d + l_move * n) / h.avg_speed + h.bare_gate_time * n;
  r.t_ladder_approx = l_move * n / h.avg_speed;
  r.t_intra = r.t_ladder / n;
  r.t_intra_approx = r.t_ladder_approx / n;
  r.t_bell_per_cnot = h.bell_pairs_per_inter_cnot / h.bell_rate;
  r.t_bell_per_tile = r.t_bell_per_cnot * h.inter_cnots_per_tile;
  r.tau = r.t_bell_per_cnot / r.t_intra;
  r.tau_approx = r.t_bell_per_cnot / r.t_intra_approx;
  return r;
}

}  // namespace modpack
