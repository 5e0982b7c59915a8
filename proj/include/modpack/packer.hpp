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

/** \file
 * Tile packers over an unbounded strip of qubit rows.
 *
 * Tiles move only horizontally. An inter-module tile reserves a trailing mask
 * of ceil(2 (k - 1) (tau - 1)) columns during which no other inter-module tile
 * may start on its rows (the Bell pairs for the next one are being buffered);
 * intra-module tiles may run inside a mask.
 *
 * double_pack keeps two grids. IntraGrid holds real tile extents; InterGrid
 * holds real extents plus inter-tile masks. Intra tiles fit against IntraGrid
 * and mark both; inter tiles fit their masked extent against InterGrid, which
 * receives the masked extent while IntraGrid receives the real one.
 */

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "modpack/ansatz.hpp"
#include "modpack/jw_compile.hpp"

namespace modpack {

struct Placement {
  int tile_id = 0;
  int x = 0;
  int row_lo = 0;  // rows the placement occupies; must match the tile
  int row_hi = 0;

  friend bool operator==(const Placement&, const Placement&) = default;
};

struct Schedule {
  std::vector<Placement> placements;  // sorted by tile_id
  int makespan = 0;
  double tau = 1.0;
  std::string packer_name;

  /// Placement of a tile, or nullptr.
  const Placement* find(int tile_id) const;

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

/// What multiplies (tau - 1) in the mask width.
enum class MaskBasis {
  ModulesSpanned,  // 2 (k - 1); the default
  RowHeight,       // 2 (rows - 1); literal pseudocode reading, for comparison
};

struct PackOptions {
  /// Widen 0 < mask < w up to the narrowest unplaced intra tile sharing rows
  /// (width w), so the reserved gap can hold real work.
  bool gap_widening = false;
  MaskBasis mask_basis = MaskBasis::ModulesSpanned;
  /// Throw if any tile would start beyond this column.
  std::optional<int> x_scan_limit;
};

/// Trailing reserved columns after an inter tile; 0 for intra tiles.
/// Throws std::invalid_argument for tau < 1.
int mask_extension(const CircuitTile& tile, double tau,
                   MaskBasis basis = MaskBasis::ModulesSpanned);

Schedule double_pack(const std::vector<CircuitTile>& tiles, const ModuleLayout& layout,
                     double tau, const PackOptions& opts = {});

/// In-order ASAP: each tile starts once every earlier tile on its rows has
/// finished, including that tile's mask.
Schedule baseline_pack(const std::vector<CircuitTile>& tiles, const ModuleLayout& layout,
                       double tau, const PackOptions& opts = {});

inline constexpr std::size_t kBruteForceMaxTiles = 8;

/// Minimum-makespan schedule under the validate_schedule rules, by search
/// over placement orders with leftmost fit. Throws std::invalid_argument for
/// more than kBruteForceMaxTiles tiles.
Schedule brute_force_optimal_pack(const std::vector<CircuitTile>& tiles,
                                  const ModuleLayout& layout, double tau,
                                  const PackOptions& opts = {});

struct Violation {
  enum class Rule {
    Placement,   // (a) missing, duplicated, unknown, or negative x
    Overlap,     // (b) real extents overlap on a shared row
    Buffering,   // (c) masked extents of two inter tiles overlap
    Rows,        // (d) tile rows disagree with the compiled tile
    Makespan,    // reported makespan disagrees with the placements
  };
  Rule rule;
  int tile_a = -1;
  int tile_b = -1;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

/// Violations are returned as data; nothing is thrown for a bad schedule.
/// Masks are checked at their base width (gap widening only lengthens them).
ValidationReport validate_schedule(const Schedule& s, const std::vector<CircuitTile>& tiles,
                                   const ModuleLayout& layout, double tau,
                                   const PackOptions& opts = {});

/// Max over rows of the summed widths of tiles covering that row.
int row_load_lower_bound(const std::vector<CircuitTile>& tiles);

}  // namespace modpack
