// Copyright 2026 The bosonsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "bosonsim/fock.hpp"
#include "bosonsim/permanent.hpp"

using namespace bosonsim;

static void BM_PermanentRyser(benchmark::State& state) {
  const ComplexMatrix u = random_unitary(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(permanent_ryser(u));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PermanentRyser)->DenseRange(4, 22, 2)->Unit(benchmark::kMillisecond);

static void BM_PermanentNaive(benchmark::State& state) {
  const ComplexMatrix u = random_unitary(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(permanent_naive(u));
}
BENCHMARK(BM_PermanentNaive)->DenseRange(3, 9, 2)->Unit(benchmark::kMicrosecond);

static void BM_FullDistribution(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const ComplexMatrix u = random_unitary(m, 2);
  std::vector<int> occ(m, 0);
  for (std::size_t k = 0; k < 3; ++k) occ[k] = 1;
  const FockState input(occ);
  for (auto _ : state) benchmark::DoNotOptimize(full_distribution(u, input));
}
BENCHMARK(BM_FullDistribution)->Arg(5)->Arg(8)->Arg(12)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
