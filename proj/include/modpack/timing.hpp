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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "modpack/ansatz.hpp"
#include "modpack/packer.hpp"

namespace modpack {

enum class PackerKind { Double, Baseline };

struct TimingParams {
  double tau = 1.0;  // t_Bell-pairs / t_intra-CNOT, >= 1
  double free_tolerance = 1.05;
};

struct TimingReport {
  int t = 0;   // makespan at tau
  int t0 = 0;  // same packer at tau = 1
  double ratio = 1.0;
  /// Columns after the last intra tile ends (whole makespan if there are no
  /// intra tiles; 0 if there are no inter tiles).
  int inter_tail = 0;
  int n_terms = 0;
  int n_inter_tiles = 0;
};

Schedule run_packer(PackerKind kind, const std::vector<CircuitTile>& tiles,
                    const ModuleLayout& layout, double tau, const PackOptions& opts);

/// Select at epsilon, compile, pack at tau and at tau = 1.
TimingReport timing_report(const Ansatz& a, const ModuleLayout& layout, double epsilon,
                           double tau, PackerKind packer = PackerKind::Double,
                           const PackOptions& opts = {});

/// Same, starting from compiled tiles.
TimingReport timing_report(const std::vector<CircuitTile>& tiles, const ModuleLayout& layout,
                           double tau, PackerKind packer = PackerKind::Double,
                           const PackOptions& opts = {});

struct ThresholdOptions {
  double step = 1.0;
  double free_tolerance = 1.05;
  PackerKind packer = PackerKind::Double;
  PackOptions pack;
};

struct ThresholdResult {
  /// Largest scanned tau before the first t/t0 > tolerance; empty when
  /// already violated at 1 + step.
  std::optional<double> threshold;
  /// A later scanned tau came back under tolerance after the first violation.
  bool non_contiguous = false;
};

ThresholdResult free_threshold(const Ansatz& a, const ModuleLayout& layout, double epsilon,
                               double tau_max, const ThresholdOptions& opts = {});

struct PhaseCell {
  double epsilon = 0.0;
  double tau = 1.0;
  int terms = 0;
  int tiles_inter = 0;
  int t = 0;
  int t0 = 0;
  double ratio = 1.0;           // double t / t0
  double baseline_ratio = 1.0;  // baseline makespan / double makespan at tau
};

struct PhaseTable {
  std::vector<double> epsilons;
  std::vector<double> taus;
  std::vector<PhaseCell> cells;  // epsilon-major

  const PhaseCell& at(std::size_t eps_index, std::size_t tau_index) const {
    return cells.at(eps_index * taus.size() + tau_index);
  }
  /// Header `epsilon,tau,terms,tiles_inter,t,t0,ratio,baseline_ratio`.
  std::string to_csv() const;
  static PhaseTable from_csv(const std::string& text);
};

struct SweepOptions {
  PackOptions pack;
  /// 0 = OpenMP default (available parallelism).
  int workers = 0;
};

/// Cells are independent; evaluated in parallel with OpenMP.
PhaseTable sweep(const Ansatz& a, const ModuleLayout& layout,
                 const std::vector<double>& epsilons, const std::vector<double>& taus,
                 const SweepOptions& opts = {});

/// Single-threaded reference for sweep(); results must match cell for cell.
PhaseTable sweep_serial(const Ansatz& a, const ModuleLayout& layout,
                        const std::vector<double>& epsilons, const std::vector<double>& taus,
                        const SweepOptions& opts = {});

enum class InterCnotScheme { LatticeSurgery, Transversal };

struct HardwareParams {
  int code_distance = 5;
  double array_spacing = 5e-6;  // m
  double avg_speed = 1.0;       // m/s
  double bare_gate_time = 0.5e-6;  // s
  int ladder_length = 39;       // CNOTs in one row ladder
  double bell_rate = 1e5;       // pairs/s
  int bell_pairs_per_inter_cnot = 5;
  int inter_cnots_per_tile = 2;

  /// d pairs per CNOT for lattice surgery, d^2 for transversal.
  static int pairs_for(InterCnotScheme scheme, int code_distance);
};

struct HardwareTiming {
  double t_ladder = 0.0;         // all three terms, s
  double t_ladder_approx = 0.0;  // sequential patch moves only, s
  double t_intra = 0.0;
  double t_intra_approx = 0.0;
  double t_bell_per_cnot = 0.0;
  double t_bell_per_tile = 0.0;
  double tau = 0.0;         // from t_intra
  double tau_approx = 0.0;  // from t_intra_approx
};

/// Throws std::invalid_argument unless every parameter is positive.
HardwareTiming hardware_tau(const HardwareParams& h);

}  // namespace modpack
