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

#include "catch_amalgamated.hpp"

#include <algorithm>
#include <cmath>

#include "modpack/synthetic.hpp"
#include "modpack/timing.hpp"

using namespace modpack;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// N copies of single(2,5) across the seam at 4: width 12, k = 2.
Ansatz saturated(int n) {
  std::vector<ExcitationTerm> terms;
  for (int i = 0; i < n; ++i) terms.push_back(ExcitationTerm::single(i, 2, 5, 0.1, 1e-2));
  return Ansatz(8, terms);
}

// Two singles across the seam, and a heavier intra load on rows the inter
// tiles never touch. Inter gradients are the larger ones.
Ansatz weakly_entangled() {
  std::vector<ExcitationTerm> terms;
  int id = 0;
  terms.push_back(ExcitationTerm::single(id++, 2, 5, 0.1, 1e-2));
  terms.push_back(ExcitationTerm::single(id++, 2, 5, 0.1, 1e-2));
  for (int i = 0; i < 20; ++i) {
    terms.push_back(ExcitationTerm::single(id++, 0, 1, 0.1, 1e-4));
    terms.push_back(ExcitationTerm::single(id++, 6, 7, 0.1, 1e-4));
  }
  return Ansatz(8, terms);
}

// Two inter tiles and twelve width-4 intra tiles on rows 2-3. The gap
// between the inter tiles is 2(tau-1) wide and is filled 4 columns at a time.
Ansatz gap_filler() {
  std::vector<ExcitationTerm> terms{ExcitationTerm::single(0, 2, 5, 0.1, 1.0),
                                    ExcitationTerm::single(1, 2, 5, 0.1, 1.0)};
  for (int i = 0; i < 12; ++i) terms.push_back(ExcitationTerm::single(2 + i, 2, 3, 0.1, 1.0));
  return Ansatz(8, terms);
}

}  // namespace

TEST_CASE("timing report on a saturated chain") {
  const ModuleLayout l(8, {4});
  const auto r = timing_report(saturated(5), l, 0.0, 4.0);
  CHECK(r.t == 84);
  CHECK(r.t0 == 60);
  CHECK_THAT(r.ratio, WithinRel(1.4, 1e-12));
  CHECK(r.inter_tail == 84);
  CHECK(r.n_inter_tiles == 5);
  CHECK(timing_report(saturated(5), l, 0.0, 2.0).t == 68);
}

TEST_CASE("zero inter tiles give ratio 1") {
  const ModuleLayout l(8, {4});
  const Ansatz a(8, {ExcitationTerm::single(0, 0, 3, 0.1, 1.0), ExcitationTerm::single(1, 4, 7, 0.1, 1.0)});
  for (double tau : {1.0, 2.0, 17.0, 1000.0}) {
    for (auto p : {PackerKind::Double, PackerKind::Baseline}) {
      const auto r = timing_report(a, l, 0.0, tau, p);
      CHECK(r.ratio == 1.0);
      CHECK(r.inter_tail == 0);
    }
  }
  CHECK(free_threshold(a, l, 0.0, 20.0).threshold == 20.0);
}

TEST_CASE("weakly entangled instance is free") {
  const ModuleLayout l(8, {4});
  for (double tau = 1.0; tau <= 20.0; tau += 1.0) CHECK(timing_report(weakly_entangled(), l, 0.0, tau).ratio == 1.0);
  CHECK(free_threshold(weakly_entangled(), l, 0.0, 20.0).threshold == 20.0);
  // Without the intra work the buffering shows.
  const auto bare = timing_report(weakly_entangled(), l, 1e-3, 2.0);
  CHECK(bare.t0 == 24);
  CHECK(bare.t == 26);
}

TEST_CASE("free threshold") {
  const ModuleLayout l(8, {4});
  CHECK_FALSE(free_threshold(saturated(5), l, 0.0, 10.0).threshold.has_value());

  // makespan 72 + (m mod 4) while the gap m holds at most 12 tiles, then 24 + m.
  const Ansatz a = gap_filler();
  for (int tau = 1; tau <= 40; ++tau) {
    const int m = 2 * (tau - 1);
    const int expect = m / 4 <= 12 ? 72 + m % 4 : 24 + m;
    REQUIRE(timing_report(a, l, 0.0, tau).t == std::max(72, expect));
  }
  const auto loose = free_threshold(a, l, 0.0, 40.0);
  REQUIRE(loose.threshold.has_value());
  CHECK(*loose.threshold == 26.0);
  CHECK_FALSE(loose.non_contiguous);

  ThresholdOptions strict;
  strict.free_tolerance = 1.0;
  const auto tight = free_threshold(a, l, 0.0, 40.0, strict);
  CHECK_FALSE(tight.threshold.has_value());
  CHECK(tight.non_contiguous);
  CHECK_THROWS(free_threshold(a, l, 0.0, 0.5));
}

TEST_CASE("sweep matches the serial reference and single reports") {
  const Ansatz a = generate_synthetic_chain(SyntheticSpec{}, 3);
  const auto l = ModuleLayout::equal(a.n_orbitals(), 3);
  const std::vector<double> eps{1e-2, 1e-3, 1e-4, 1e-5};
  const std::vector<double> taus{1, 2, 3, 5, 8, 13, 21};
  SweepOptions serial_opts, par_opts;
  par_opts.workers = 4;
  const auto par = sweep(a, l, eps, taus, par_opts);
  const auto ser = sweep_serial(a, l, eps, taus, serial_opts);
  CHECK(par.to_csv() == ser.to_csv());
  for (std::size_t e = 0; e < eps.size(); ++e) {
    for (std::size_t t = 0; t < taus.size(); ++t) {
      const auto& c = par.at(e, t);
      const auto r = timing_report(a, l, eps[e], taus[t]);
      REQUIRE(c.t == r.t);
      REQUIRE(c.t0 == r.t0);
      REQUIRE(c.ratio == r.ratio);
      const auto b = timing_report(a, l, eps[e], taus[t], PackerKind::Baseline);
      REQUIRE(c.baseline_ratio == (r.t ? static_cast<double>(b.t) / r.t : 1.0));
    }
    // Descending epsilon keeps more terms.
    if (e > 0) REQUIRE(par.at(e, 0).terms >= par.at(e - 1, 0).terms);
  }
}

TEST_CASE("sweep cells are order independent") {
  const Ansatz a = generate_synthetic_chain(SyntheticSpec{}, 8);
  const auto l = ModuleLayout::equal(a.n_orbitals(), 3);
  const auto fwd = sweep(a, l, {1e-2, 1e-4}, {1, 4, 9});
  const auto rev = sweep(a, l, {1e-4, 1e-2}, {9, 4, 1});
  for (std::size_t e = 0; e < 2; ++e) {
    for (std::size_t t = 0; t < 3; ++t) {
      const auto& x = fwd.at(e, t);
      const auto& y = rev.at(1 - e, 2 - t);
      REQUIRE(x.t == y.t);
      REQUIRE(x.baseline_ratio == y.baseline_ratio);
    }
  }
}

TEST_CASE("phase table csv") {
  const Ansatz a = generate_synthetic_chain(SyntheticSpec{}, 8);
  const auto l = ModuleLayout::equal(a.n_orbitals(), 3);
  const auto table = sweep(a, l, {1e-3}, {1, 2.5});
  const auto csv = table.to_csv();
  CHECK(csv.rfind("epsilon,tau,terms,tiles_inter,t,t0,ratio,baseline_ratio\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  const auto back = PhaseTable::from_csv(csv);
  CHECK(back.to_csv() == csv);
  CHECK(back.taus == std::vector<double>{1, 2.5});
  CHECK_THROWS(PhaseTable::from_csv("eps,tau\n"));
  CHECK_THROWS(sweep(a, l, {}, {1}));
  CHECK_THROWS(sweep(a, l, {1e-3}, {0.5}));
}

TEST_CASE("hardware model") {
  const HardwareParams p;
  const auto h = hardware_tau(p);
  CHECK_THAT(h.t_intra_approx, WithinRel(25e-6, 1e-12));
  CHECK_THAT(h.t_ladder, WithinRel(1019.5e-6, 1e-12));
  CHECK_THAT(h.t_intra, WithinRel(1019.5e-6 / 39, 1e-12));
  CHECK(std::abs(h.t_intra - 25e-6) / 25e-6 < 0.05);
  CHECK_THAT(h.t_bell_per_cnot, WithinRel(50e-6, 1e-12));
  CHECK_THAT(h.t_bell_per_tile, WithinRel(100e-6, 1e-12));
  CHECK_THAT(h.tau_approx, WithinRel(2.0, 1e-12));
  CHECK_THAT(h.tau, WithinAbs(2.0, 0.1));

  HardwareParams fast = p;
  fast.bell_rate *= 2;
  CHECK_THAT(hardware_tau(fast).tau, WithinRel(h.tau / 2, 1e-12));

  CHECK(HardwareParams::pairs_for(InterCnotScheme::LatticeSurgery, 5) == 5);
  CHECK(HardwareParams::pairs_for(InterCnotScheme::Transversal, 5) == 25);

  HardwareParams bad = p;
  bad.avg_speed = 0;
  CHECK_THROWS_AS(hardware_tau(bad), std::invalid_argument);
}
