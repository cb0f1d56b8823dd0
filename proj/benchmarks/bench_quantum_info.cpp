// Copyright 2026 The qpirlab Authors
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

#include "qpirlab/quantum_info.hpp"
#include "qpirlab/random.hpp"

namespace {

using namespace qpirlab;

void BM_TraceDistance(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  const RegisterLayout l{{"q", dim}};
  const DensityOperator a = random_density(l, rng), b = random_density(l, rng);
  for (auto _ : state) benchmark::DoNotOptimize(trace_distance(a, b));
}
BENCHMARK(BM_TraceDistance)->Arg(4)->Arg(16)->Arg(64)->Arg(256);

void BM_TraceDistanceLowRank(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  Rng rng(2);
  const RegisterLayout l{{"q", dim}};
  const DensityOperator a = random_density(l, rng, 2), b = random_density(l, rng, 2);
  for (auto _ : state) benchmark::DoNotOptimize(trace_distance(a, b));
}
BENCHMARK(BM_TraceDistanceLowRank)->Arg(64)->Arg(256)->Arg(1024);

void BM_SchmidtDecompose(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  Rng rng(3);
  const StateVector psi = random_state(RegisterLayout{{"a", dim}, {"b", dim}}, rng);
  for (auto _ : state) benchmark::DoNotOptimize(schmidt_decompose(psi, {"a"}));
}
BENCHMARK(BM_SchmidtDecompose)->Arg(4)->Arg(16)->Arg(64);

void BM_UhlmannRotation(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  Rng rng(4);
  const RegisterLayout l{{"a", dim}, {"p", dim}};
  const StateVector x = random_state(l, rng), y = random_state(l, rng);
  for (auto _ : state) benchmark::DoNotOptimize(uhlmann_rotation(x, y, {"p"}).overlap);
}
BENCHMARK(BM_UhlmannRotation)->Arg(4)->Arg(16)->Arg(32);

}  // namespace
