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

#include "qpirlab/protocol.hpp"
#include "qpirlab/qpir.hpp"
#include "qpirlab/reduction.hpp"

namespace {

using namespace qpirlab;

void BM_ExecutePureTrivial(benchmark::State& state) {
  const QpirProtocol q = trivial_qpir(static_cast<std::size_t>(state.range(0)));
  const StateVector input = superposition_input(q, 1);
  for (auto _ : state) benchmark::DoNotOptimize(execute_pure(q.spec, input));
}
BENCHMARK(BM_ExecutePureTrivial)->Arg(2)->Arg(4)->Arg(6);

void BM_ExecutePureRandom(benchmark::State& state) {
  const QpirProtocol q = random_qpir(static_cast<std::size_t>(state.range(0)), 1);
  const StateVector input = superposition_input(q, 1);
  for (auto _ : state) benchmark::DoNotOptimize(execute_pure(q.spec, input));
}
BENCHMARK(BM_ExecutePureRandom)->Arg(2)->Arg(3)->Arg(4);

void BM_ReduceTrivial(benchmark::State& state) {
  const QpirProtocol q = trivial_qpir(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reduce(q).bound.value);
}
BENCHMARK(BM_ReduceTrivial)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_LowerBound(benchmark::State& state) {
  double delta = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lower_bound(100, delta, 0.01).value);
    delta = delta > 0.3 ? 0.0 : delta + 1e-3;
  }
}
BENCHMARK(BM_LowerBound);

}  // namespace
