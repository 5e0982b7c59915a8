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

#include "modpack/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "modpack/util.hpp"

namespace modpack {

namespace {

void check_spec(const SyntheticSpec& s) {
  auto fail = [](const std::string& why) {
    throw std::invalid_argument("infeasible synthetic spec: " + why);
  };
  if (s.n_modules < 1) fail("n_modules must be >= 1");
  if (s.rows_per_module < 1) fail("rows_per_module must be >= 1");
  if (s.intra_terms_per_module < 0 || s.inter_terms_per_seam < 0) {
    fail("term counts must be >= 0");
  }
  if (s.intra_terms_per_module > 0 &&
      (s.max_intra_span < 1 || s.max_intra_span > s.rows_per_module - 1)) {
    fail("intra span " + std::to_string(s.max_intra_span) +
         " does not fit a module of " + std::to_string(s.rows_per_module) + " rows");
  }
  if (s.inter_terms_per_seam > 0 && s.n_modules > 1) {
    if (s.max_seams_crossed < 1) fail("max_seams_crossed must be >= 1");
    if (s.inter_reach < 1 || s.inter_reach > s.rows_per_module) {
      fail("inter_reach must be in [1, rows_per_module]");
    }
  }
  if (!(s.grad_min > 0.0) || !(s.grad_max >= s.grad_min)) {
    fail("need 0 < grad_min <= grad_max");
  }
  if (!(s.inter_decay > 0.0) || s.inter_decay > 1.0) {
    fail("inter_decay must be in (0, 1]");
  }
  if (!(s.double_fraction >= 0.0) || s.double_fraction > 1.0) {
    fail("double_fraction must be in [0, 1]");
  }
}

// Random term on the closed interval [lo, hi]; both endpoints are used.
ExcitationTerm make_term(Rng& rng, const SyntheticSpec& s, int id, int lo, int hi,
                         double grad) {
  const double amp = rng.uniform(-s.amp_max, s.amp_max);
  if (hi - lo >= 3 && rng.bernoulli(s.double_fraction)) {
    int a = rng.uniform_int(lo + 1, hi - 1);
    int b = rng.uniform_int(lo + 1, hi - 2);
    if (b >= a) ++b;
    if (a > b) std::swap(a, b);
    std::array<int, 4> p{lo, a, b, hi};
    // Which sorted pair creates and which annihilates.
    static constexpr std::array<std::array<int, 4>, 3> kPairings{
        {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}}};
    const auto& pr = kPairings[static_cast<std::size_t>(rng.uniform_int(0, 2))];
    std::array<int, 4> ix{p[pr[0]], p[pr[1]], p[pr[2]], p[pr[3]]};
    if (rng.bernoulli(0.5)) ix = {ix[2], ix[3], ix[0], ix[1]};
    return ExcitationTerm::double_hop(id, ix[0], ix[1], ix[2], ix[3], amp, grad);
  }
  if (rng.bernoulli(0.5)) std::swap(lo, hi);
  return ExcitationTerm::single(id, lo, hi, amp, grad);
}

}  // namespace

Ansatz generate_synthetic_chain(const SyntheticSpec& s, std::uint64_t seed) {
  check_spec(s);
  Rng rng(seed);
  const double log_lo = std::log(s.grad_min);
  const double log_hi = std::log(s.grad_max);
  auto draw_grad = [&] { return std::exp(rng.uniform(log_lo, log_hi)); };

  const int rpm = s.rows_per_module;
  std::vector<ExcitationTerm> terms;
  int next_id = 0;
  for (int m = 0; m < s.n_modules; ++m) {
    const int base = m * rpm;
    for (int n = 0; n < s.intra_terms_per_module; ++n) {
      const int span = rng.uniform_int(1, s.max_intra_span);
      const int lo = base + rng.uniform_int(0, rpm - 1 - span);
      terms.push_back(make_term(rng, s, next_id++, lo, lo + span, draw_grad()));
    }
    if (m + 1 >= s.n_modules) continue;
    const int seam = (m + 1) * rpm;
    for (int n = 0; n < s.inter_terms_per_seam; ++n) {
      const int crossed =
          rng.uniform_int(1, std::min(s.max_seams_crossed, s.n_modules - 1 - m));
      const int lo = seam - rng.uniform_int(1, s.inter_reach);
      const int hi = (m + crossed) * rpm + rng.uniform_int(0, s.inter_reach - 1);
      const double grad = draw_grad() * std::pow(s.inter_decay, crossed);
      terms.push_back(make_term(rng, s, next_id++, lo, hi, grad));
    }
  }

  Ansatz::Metadata meta{{"generator", "synthetic-chain"},
                        {"modules", std::to_string(s.n_modules)},
                        {"rows_per_module", std::to_string(rpm)},
                        {"seed", std::to_string(seed)}};
  return Ansatz(s.n_modules * rpm, std::move(terms), std::move(meta));
}

}  // namespace modpack
