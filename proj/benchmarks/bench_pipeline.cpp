// Copyright 2026 The pdistill Authors
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

#include <benchmark/benchmark.h>

#include "pdistill/bounds.hpp"
#include "pdistill/overlap.hpp"
#include "pdistill/private_state.hpp"

namespace {

using namespace pdistill;

PrivateStateSpec spec_for(std::size_t d, std::size_t parties, std::size_t shield) {
  RandomSpecOptions opts;
  opts.d = d;
  opts.parties = parties;
  opts.shield_dims.assign(parties, shield);
  return random_spec(opts, 1);
}

// args: parties, local shield dimension
void BM_EtaOptimize(benchmark::State& state) {
  const auto spec = spec_for(2, static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  const auto x = cross_operator(spec, 0, 1);
  for (auto _ : state) benchmark::DoNotOptimize(eta_optimize(x, spec.shield_dims).eta);
}
BENCHMARK(BM_EtaOptimize)->Args({2, 2})->Args({2, 4})->Args({2, 8})->Args({3, 2})->Args({3, 3})->Unit(benchmark::kMillisecond);

// args: key dimension, local shield dimension
void BM_BuildPrivateState(benchmark::State& state) {
  const auto spec = spec_for(static_cast<std::size_t>(state.range(0)), 2, static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(build_private_state(spec).rho.dim());
}
BENCHMARK(BM_BuildPrivateState)->Args({2, 2})->Args({3, 3})->Args({4, 4})->Unit(benchmark::kMillisecond);

void BM_EdLowerBound(benchmark::State& state) {
  const auto spec = spec_for(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(ed_lower_bound(spec).best_verified_rate);
}
BENCHMARK(BM_EdLowerBound)->Args({2, 2})->Args({3, 2})->Args({3, 3})->Unit(benchmark::kMillisecond);

void BM_EfCertificate(benchmark::State& state) {
  const auto spec = spec_for(static_cast<std::size_t>(state.range(0)), 2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(ef_certificate(spec, 200, 1).min_entropy_found);
}
BENCHMARK(BM_EfCertificate)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
