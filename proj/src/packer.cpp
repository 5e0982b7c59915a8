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

#include "modpack/packer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "modpack/interval_grid.hpp"

namespace modpack {

namespace {

void check_tau(double tau) {
  if (!(tau >= 1.0)) throw std::invalid_argument("tau must be >= 1");
}

void check_tiles(const std::vector<CircuitTile>& tiles, const ModuleLayout& layout) {
  for (const auto& t : tiles) {
    if (t.row_lo < 0 || t.row_hi >= layout.n_rows() || t.row_lo > t.row_hi) {
      throw std::invalid_argument("tile " + std::to_string(t.tile_id) +
                                  " rows outside the layout");
    }
  }
}

void check_limit(const PackOptions& opts, int x, const CircuitTile& t) {
  if (opts.x_scan_limit && x > *opts.x_scan_limit) {
    throw std::runtime_error("tile " + std::to_string(t.tile_id) + " needs column " +
                             std::to_string(x) + ", beyond the scan limit " +
                             std::to_string(*opts.x_scan_limit));
  }
}

Schedule finish(const std::vector<CircuitTile>& tiles, const std::vector<int>& xs,
                double tau, std::string name) {
  Schedule s;
  s.tau = tau;
  s.packer_name = std::move(name);
  std::vector<std::size_t> order(tiles.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return tiles[a].tile_id < tiles[b].tile_id;
  });
  for (std::size_t i : order) {
    s.placements.push_back({tiles[i].tile_id, xs[i], tiles[i].row_lo, tiles[i].row_hi});
    s.makespan = std::max(s.makespan, xs[i] + tiles[i].width);
  }
  return s;
}

}  // namespace

const Placement* Schedule::find(int tile_id) const {
  auto it = std::lower_bound(
      placements.begin(), placements.end(), tile_id,
      [](const Placement& p, int id) { return p.tile_id < id; });
  if (it != placements.end() && it->tile_id == tile_id) return &*it;
  // Hand-built schedules may not be sorted.
  for (const auto& p : placements) {
    if (p.tile_id == tile_id) return &p;
  }
  return nullptr;
}

int mask_extension(const CircuitTile& tile, double tau, MaskBasis basis) {
  check_tau(tau);
  if (!tile.is_inter()) return 0;
  const int factor = basis == MaskBasis::ModulesSpanned ? tile.modules_spanned - 1
                                                        : tile.height() - 1;
  const double raw = 2.0 * factor * (tau - 1.0);
  // Integer products computed in floating point can land just above the
  // integer (e.g. 10 * 0.1000000000000001).
  return static_cast<int>(std::ceil(raw - 1e-9));
}

Schedule double_pack(const std::vector<CircuitTile>& tiles, const ModuleLayout& layout,
                     double tau, const PackOptions& opts) {
  check_tau(tau);
  check_tiles(tiles, layout);
  std::vector<std::size_t> order(tiles.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return tiles[a].height() > tiles[b].height();
  });

  OccupancyGrid intra_grid(layout.n_rows());
  OccupancyGrid inter_grid(layout.n_rows());
  std::vector<int> xs(tiles.size(), 0);

  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const auto& t = tiles[order[pos]];
    int x = 0;
    if (!t.is_inter()) {
      x = intra_grid.first_fit(t.row_lo, t.row_hi, t.width);
      check_limit(opts, x, t);
      intra_grid.occupy(t.row_lo, t.row_hi, x, x + t.width);
      inter_grid.occupy(t.row_lo, t.row_hi, x, x + t.width);
    } else {
      int mask = mask_extension(t, tau, opts.mask_basis);
      if (opts.gap_widening && mask > 0) {
        int narrowest = std::numeric_limits<int>::max();
        for (std::size_t later = pos + 1; later < order.size(); ++later) {
          const auto& u = tiles[order[later]];
          if (!u.is_inter() && u.shares_row(t)) narrowest = std::min(narrowest, u.width);
        }
        if (narrowest != std::numeric_limits<int>::max() && mask < narrowest) {
          mask = narrowest;
        }
      }
      x = inter_grid.first_fit(t.row_lo, t.row_hi, t.width + mask);
      check_limit(opts, x, t);
      inter_grid.occupy(t.row_lo, t.row_hi, x, x + t.width + mask);
      intra_grid.occupy(t.row_lo, t.row_hi, x, x + t.width);
    }
    xs[order[pos]] = x;
  }
  return finish(tiles, xs, tau, "double");
}

Schedule baseline_pack(const std::vector<CircuitTile>& tiles, const ModuleLayout& layout,
                       double tau, const PackOptions& opts) {
  check_tau(tau);
  check_tiles(tiles, layout);
  std::vector<int> frontier(static_cast<std::size_t>(layout.n_rows()), 0);
  std::vector<int> xs(tiles.size(), 0);
  for (std::size_t i = 0; i < tiles.size(); ++i) {
    const auto& t = tiles[i];
    const auto lo = frontier.begin() + t.row_lo;
    const auto hi = frontier.begin() + t.row_hi + 1;
    const int x = *std::max_element(lo, hi);
    check_limit(opts, x, t);
    const int end = x + t.width + mask_extension(t, tau, opts.mask_basis);
    std::fill(lo, hi, end);
    xs[i] = x;
  }
  return finish(tiles, xs, tau, "baseline");
}

namespace {

// Extent two tiles must keep apart when they share a row: masks only count
// between two inter tiles.
int separation(const CircuitTile& a, int mask_a, const CircuitTile& b) {
  return a.width + (a.is_inter() && b.is_inter() ? mask_a : 0);
}

struct BruteForce {
  const std::vector<CircuitTile>& tiles;
  std::vector<int> masks;
  std::vector<int> xs;
  std::vector<bool> placed;
  std::vector<int> best_xs;
  int best = std::numeric_limits<int>::max();

  int leftmost(std::size_t j) const {
    int x = 0;
    bool moved = true;
    while (moved) {
      moved = false;
      for (std::size_t i = 0; i < tiles.size(); ++i) {
        if (!placed[i] || !tiles[i].shares_row(tiles[j])) continue;
        const int end_i = xs[i] + separation(tiles[i], masks[i], tiles[j]);
        const int end_j = x + separation(tiles[j], masks[j], tiles[i]);
        if (x < end_i && xs[i] < end_j) {
          x = end_i;
          moved = true;
        }
      }
    }
    return x;
  }

  void search(std::size_t depth, int span) {
    if (span >= best) return;
    if (depth == tiles.size()) {
      best = span;
      best_xs = xs;
      return;
    }
    for (std::size_t j = 0; j < tiles.size(); ++j) {
      if (placed[j]) continue;
      const int x = leftmost(j);
      xs[j] = x;
      placed[j] = true;
      search(depth + 1, std::max(span, x + tiles[j].width));
      placed[j] = false;
    }
  }
};

}  // namespace

Schedule brute_force_optimal_pack(const std::vector<CircuitTile>& tiles,
                                  const ModuleLayout& layout, double tau,
                                  const PackOptions& opts) {
  if (tiles.size() > kBruteForceMaxTiles) {
    throw std::invalid_argument("brute_force_optimal_pack handles at most " +
                                std::to_string(kBruteForceMaxTiles) + " tiles, got " +
                                std::to_string(tiles.size()));
  }
  check_tau(tau);
  check_tiles(tiles, layout);
  BruteForce bf{tiles, {}, std::vector<int>(tiles.size(), 0),
                std::vector<bool>(tiles.size(), false), {}, std::numeric_limits<int>::max()};
  for (const auto& t : tiles) bf.masks.push_back(mask_extension(t, tau, opts.mask_basis));

  // Seed the bound with the greedy result so the search only explores
  // strictly better orders.
  PackOptions greedy_opts = opts;
  greedy_opts.gap_widening = false;
  const Schedule greedy = double_pack(tiles, layout, tau, greedy_opts);
  bf.best = greedy.makespan + 1;
  bf.search(0, 0);
  if (bf.best_xs.empty()) {
    Schedule s = greedy;
    s.packer_name = "optimal";
    return s;
  }
  return finish(tiles, bf.best_xs, tau, "optimal");
}

std::string ValidationReport::summary() const {
  if (ok()) return "valid";
  static const char* names[] = {"placement", "overlap", "buffering", "rows", "makespan"};
  std::ostringstream os;
  os << violations.size() << " violation(s)";
  for (const auto& v : violations) {
    os << "\n  " << names[static_cast<int>(v.rule)] << ": " << v.detail;
  }
  return os.str();
}

ValidationReport validate_schedule(const Schedule& s, const std::vector<CircuitTile>& tiles,
                                   const ModuleLayout& layout, double tau,
                                   const PackOptions& opts) {
  ValidationReport report;
  auto add = [&](Violation::Rule r, int a, int b, std::string detail) {
    report.violations.push_back({r, a, b, std::move(detail)});
  };

  std::map<int, std::size_t> tile_index;
  for (std::size_t i = 0; i < tiles.size(); ++i) tile_index[tiles[i].tile_id] = i;

  std::vector<const Placement*> where(tiles.size(), nullptr);
  for (const auto& p : s.placements) {
    auto it = tile_index.find(p.tile_id);
    if (it == tile_index.end()) {
      add(Violation::Rule::Placement, p.tile_id, -1,
          "tile " + std::to_string(p.tile_id) + " is not in the tile list");
      continue;
    }
    if (where[it->second]) {
      add(Violation::Rule::Placement, p.tile_id, -1,
          "tile " + std::to_string(p.tile_id) + " placed more than once");
      continue;
    }
    where[it->second] = &p;
    if (p.x < 0) {
      add(Violation::Rule::Placement, p.tile_id, -1,
          "tile " + std::to_string(p.tile_id) + " at negative x " + std::to_string(p.x));
    }
    const auto& t = tiles[it->second];
    if (p.row_lo != t.row_lo || p.row_hi != t.row_hi) {
      add(Violation::Rule::Rows, p.tile_id, -1,
          "tile " + std::to_string(p.tile_id) + " moved to rows " +
              std::to_string(p.row_lo) + "-" + std::to_string(p.row_hi));
    }
    if (t.row_hi >= layout.n_rows()) {
      add(Violation::Rule::Rows, p.tile_id, -1,
          "tile " + std::to_string(p.tile_id) + " outside the layout");
    }
  }
  int makespan = 0;
  for (std::size_t i = 0; i < tiles.size(); ++i) {
    if (!where[i]) {
      add(Violation::Rule::Placement, tiles[i].tile_id, -1,
          "tile " + std::to_string(tiles[i].tile_id) + " not placed");
    } else {
      makespan = std::max(makespan, where[i]->x + tiles[i].width);
    }
  }

  std::vector<int> masks;
  masks.reserve(tiles.size());
  for (const auto& t : tiles) masks.push_back(mask_extension(t, tau, opts.mask_basis));

  for (std::size_t i = 0; i < tiles.size(); ++i) {
    if (!where[i]) continue;
    for (std::size_t j = i + 1; j < tiles.size(); ++j) {
      if (!where[j] || !tiles[i].shares_row(tiles[j])) continue;
      const int xi = where[i]->x, xj = where[j]->x;
      const auto& a = tiles[i];
      const auto& b = tiles[j];
      if (xi < xj + b.width && xj < xi + a.width) {
        add(Violation::Rule::Overlap, a.tile_id, b.tile_id,
            "tiles " + std::to_string(a.tile_id) + " and " + std::to_string(b.tile_id) +
                " overlap");
      } else if (a.is_inter() && b.is_inter() && xi < xj + b.width + masks[j] &&
                 xj < xi + a.width + masks[i]) {
        add(Violation::Rule::Buffering, a.tile_id, b.tile_id,
            "inter tiles " + std::to_string(a.tile_id) + " and " +
                std::to_string(b.tile_id) + " closer than their Bell-pair mask");
      }
    }
  }
  if (report.violations.empty() && makespan != s.makespan) {
    add(Violation::Rule::Makespan, -1, -1,
        "reported makespan " + std::to_string(s.makespan) + ", placements give " +
            std::to_string(makespan));
  }
  return report;
}

int row_load_lower_bound(const std::vector<CircuitTile>& tiles) {
  std::map<int, int> load;
  int best = 0;
  for (const auto& t : tiles) {
    for (int r = t.row_lo; r <= t.row_hi; ++r) best = std::max(best, load[r] += t.width);
  }
  return best;
}

}  // namespace modpack
