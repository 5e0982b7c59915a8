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
 * Dense verifier for single terms and tile pairs.
 *
 * Qubit q is bit q of the basis index (little-endian): for n = 2 the basis
 * order is |q1 q0> = 00, 01, 10, 11 with index q0 + 2 q1. CNOT(c, t) flips
 * bit t when bit c is set. The JW parity string matches jw_compile: it runs
 * over rows above p, and Q^+ = (X - iY)/2 = |1><0|.
 */

#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "modpack/ansatz.hpp"
#include "modpack/jw_compile.hpp"

namespace modpack {

inline constexpr int kDenseMaxQubits = 12;
inline constexpr double kUnitarityTol = 1e-10;

struct DenseUnitary {
  int n_qubits = 0;
  Eigen::MatrixXcd m;

  /// ||U^dag U - I||_F.
  double unitarity_error() const;
};

DenseUnitary identity_unitary(int n);

/// Gates applied in list order: U = G_last ... G_first.
DenseUnitary gates_to_unitary(const std::vector<Gate>& gates, int n);

/// The dense generator t (A - A^dag) built from basis-state action.
Eigen::MatrixXcd jw_generator(const ExcitationTerm& term, int n);

/// exp of jw_generator via the eigendecomposition of the Hermitian i G.
DenseUnitary jw_reference_unitary(const ExcitationTerm& term, int n);

double spectral_norm(const Eigen::MatrixXcd& m);

struct SwapCheck {
  double max_norm_diff = 0.0;  // ||U_A U_B - U_B U_A||_2
  bool disjoint = false;       // row supports do not intersect
};

/// Uses the compiled gate lists of both terms.
SwapCheck check_commuting_swap(const ExcitationTerm& a, const ExcitationTerm& b, int n);

/// Same, after checking the tiles describe the terms' rows.
SwapCheck check_commuting_swap(const CircuitTile& tile_a, const CircuitTile& tile_b,
                               const ExcitationTerm& a, const ExcitationTerm& b, int n);

struct TermCheck {
  ExcitationTerm term;
  int n_qubits = 0;
  double norm_diff = 0.0;
  bool pass = false;
};

struct PairCheck {
  int term_a = 0;
  int term_b = 0;
  SwapCheck swap;
  bool pass = true;  // only disjoint pairs carry a hard bound
};

struct ScalingCheck {
  double diff_full = 0.0;
  double diff_half = 0.0;
  double ratio = 0.0;  // ~4 for a second-order commutator
  bool pass = false;
};

struct VerifyReport {
  std::vector<TermCheck> terms;
  std::vector<PairCheck> pairs;
  ScalingCheck scaling;
  bool ok() const;
  std::string table() const;
};

/// Compile/reference agreement for each term on n qubits, swap checks for
/// every term pair, and the amplitude-halving spot check on single(0,2) and
/// single(1,2) at t = 0.1.
VerifyReport run_verification(const std::vector<ExcitationTerm>& terms, int n,
                              double tol = 1e-8);

/// The three term classes at the given amplitude, all on rows 0..3.
std::vector<ExcitationTerm> standard_terms(double amplitude);

}  // namespace modpack
