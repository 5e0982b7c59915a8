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

#include <cstdint>

#include "modpack/ansatz.hpp"

namespace modpack {

/// Parameters for a clustered test chain: dense excitations inside each
/// module, sparse and weaker excitations across seams.
struct SyntheticSpec {
  int n_modules = 3;
  int rows_per_module = 8;

  int intra_terms_per_module = 20;
  /// Row span (row_hi - row_lo) of intra terms is uniform in [1, max_intra_span].
  int max_intra_span = 3;
  /// Probability that a term with span >= 3 is a double hopping.
  double double_fraction = 0.3;

  int inter_terms_per_seam = 2;
  /// Inter terms cross 1..max_seams_crossed seams (clamped to the chain).
  int max_seams_crossed = 1;
  /// Each endpoint of an inter term lies within this many rows of the seam.
  int inter_reach = 2;

  /// Gradient magnitudes are log-uniform in [grad_min, grad_max]; inter terms
  /// are further multiplied by inter_decay^(seams crossed).
  double grad_min = 1e-5;
  double grad_max = 1e-2;
  double inter_decay = 0.1;

  double amp_max = 0.5;
};

/// Deterministic for a given seed. Term order is module-major: the intra terms
/// of module m followed by the inter terms anchored at seam m. Throws
/// std::invalid_argument for infeasible specs.
Ansatz generate_synthetic_chain(const SyntheticSpec& spec, std::uint64_t seed);

}  // namespace modpack
