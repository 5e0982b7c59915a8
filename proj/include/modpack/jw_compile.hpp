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
 * Jordan-Wigner expansion of excitation terms and their tile abstraction.
 *
 * Conventions shared with simcheck:
 *  - a_p = Q_p^+ Z_{p+1} ... Z_{n-1} with Q^+ = (X - iY)/2, i.e. the parity
 *    string runs toward higher row indices.
 *  - Each term generator t (A - A^dag) expands into 2 (single), 4 (controlled)
 *    or 8 (double) mutually commuting Pauli strings, so the product of their
 *    exponentials is exact.
 *  - exp(i theta P) is emitted as: basis change (H for X rows, SDG then H for
 *    Y rows), CNOT ladder up through the support rows, RZ(-2 theta) on the
 *    highest support row, the inverse ladder, then the inverse basis change.
 *    RZ(phi) = exp(-i phi Z / 2).
 */

#pragma once

#include <map>
#include <string>
#include <vector>

#include "modpack/ansatz.hpp"
#include "modpack/pauli.hpp"

namespace modpack {

enum class GateKind { CNOT, RZ, H, SDG, S, Y_BASIS };

struct Gate {
  GateKind kind = GateKind::H;
  int q0 = 0;  // control for CNOT, otherwise the acted-on row
  int q1 = -1;  // CNOT target
  double angle = 0.0;  // RZ only

  static Gate cnot(int control, int target) { return {GateKind::CNOT, control, target, 0.0}; }
  static Gate rz(int row, double angle) { return {GateKind::RZ, row, -1, angle}; }
  static Gate h(int row) { return {GateKind::H, row, -1, 0.0}; }
  static Gate sdg(int row) { return {GateKind::SDG, row, -1, 0.0}; }
  static Gate s(int row) { return {GateKind::S, row, -1, 0.0}; }

  friend bool operator==(const Gate&, const Gate&) = default;
};

/// exp(i angle * pauli).
struct PauliRotation {
  PauliString pauli;
  double angle = 0.0;
};

/// Pauli-string exponentials whose product equals exp(t (A - A^dag)).
/// Ordered by Pauli string for determinism.
std::vector<PauliRotation> jw_rotations(const ExcitationTerm& t);

struct TermCircuit {
  std::vector<Gate> gates;
  /// Controlled hopping in an index order other than (i, j, j, m), i < j < m.
  /// Compiled by the same expansion; flagged for callers that only trust the
  /// canonical layout.
  bool noncanonical_controlled = false;
};

/// Throws std::invalid_argument when indices do not fit n_rows.
TermCircuit compile_term_to_gates(const ExcitationTerm& t, int n_rows);

int cnot_count(const std::vector<Gate>& gates);

/// One gate per line: `cnot <c> <t>`, `rz <q> <angle>`, `h <q>`, `sdg <q>`,
/// `s <q>`. Y_BASIS expands to `sdg` then `h`.
std::string format_gates(const std::vector<Gate>& gates);
std::vector<Gate> parse_gates(const std::string& text);

enum class TileKind { Intra, Inter };

/// Packable rectangle: rows [row_lo, row_hi] by `width` columns of
/// intra-module CNOT time.
struct CircuitTile {
  int tile_id = 0;
  int term_id = 0;
  int row_lo = 0;
  int row_hi = 0;
  int width = 1;
  TileKind kind = TileKind::Intra;
  int modules_spanned = 1;
  int inter_gate_count = 0;  // 2 (k - 1)

  int height() const { return row_hi - row_lo + 1; }
  bool is_inter() const { return kind == TileKind::Inter; }
  bool shares_row(const CircuitTile& o) const {
    return row_lo <= o.row_hi && o.row_lo <= row_hi;
  }

  friend bool operator==(const CircuitTile&, const CircuitTile&) = default;
};

/// Tile for term t on `layout`: width = 2 * conjugations * (row_hi - row_lo).
CircuitTile term_to_tile(const ExcitationTerm& t, const ModuleLayout& layout,
                         int tile_id = 0);

/// Terms in order, tile ids 0, 1, 2, ...
std::vector<CircuitTile> compile_ansatz(const Ansatz& a, const ModuleLayout& layout);

/// Tile with explicit geometry; derives kind and the inter-gate count from k.
CircuitTile make_tile(int tile_id, int row_lo, int row_hi, int width,
                      int modules_spanned, int term_id = -1);

struct SeamReport {
  struct Entry {
    int seam = 0;
    int n_inter = 0;
    std::vector<int> crossing_tiles;
  };
  std::vector<Entry> seams;  // in layout order

  int total() const;
};

/// Each tile strictly crossing a seam (row_lo < seam <= row_hi) contributes two
/// inter-module gates to that seam.
SeamReport count_inter_cnots(const std::vector<CircuitTile>& tiles,
                             const ModuleLayout& layout);

/// N_inter for a lone seam at every position 1 .. n_rows-1 (index 0 unused).
std::vector<int> seam_sweep(const Ansatz& a);

struct SeamChoice {
  ModuleLayout layout;
  int n_inter = 0;
};

/// Layout with n_modules modules of >= min_module_rows rows each that
/// minimizes total N_inter. Ties prefer the smallest sum of squared module
/// sizes, then lexicographically lowest seams. Throws std::invalid_argument
/// when infeasible.
SeamChoice optimize_seam(const Ansatz& a, int n_modules, int min_module_rows);

}  // namespace modpack
