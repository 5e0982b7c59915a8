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

// Serial reference against the OpenMP sweep on one synthetic chain.

#include <benchmark/benchmark.h>

#include "modpack/synthetic.hpp"
#include "modpack/timing.hpp"

namespace {

using namespace modpack;

struct Fixture {
  Ansatz a;
  ModuleLayout layout;
  std::vector<double> eps{1e-2, 1e-3, 1e-4, 1e-5};
  std::vector<double> taus;

  Fixture() {
    SyntheticSpec spec;
    spec.n_modules = 4;
    spec.intra_terms_per_module = 40;
    spec.inter_terms_per_seam = 4;
    a = generate_synthetic_chain(spec, 2026);
    layout = ModuleLayout::equal(a.n_orbitals(), spec.n_modules);
    for (int t = 1; t <= 20; ++t) taus.push_back(t);
  }
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

void BM_SweepSerial(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(sweep_serial(f.a, f.layout, f.eps, f.taus));
  state.SetItemsProcessed(state.iterations() * f.eps.size() * f.taus.size());
}

void BM_SweepParallel(benchmark::State& state) {
  const auto& f = fixture();
  SweepOptions opts;
  opts.workers = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sweep(f.a, f.layout, f.eps, f.taus, opts));
  state.SetItemsProcessed(state.iterations() * f.eps.size() * f.taus.size());
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
