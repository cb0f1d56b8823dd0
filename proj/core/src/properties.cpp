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

#include "qpirlab/properties.hpp"

#include <cmath>

#include "qpirlab/random.hpp"

namespace qpirlab {

namespace {

constexpr double kInequalitySlack = 1e-9;

LabelSet side_labels(const ProtocolSpec& spec, std::size_t step) { return a_side_after_step(spec, step).labels(); }

}  // namespace

SchmidtTrial schmidt_rank_profile(const ProtocolSpec& spec, const StateVector& input, double rank_tolerance,
                                  const ExecutionOptions& options) {
  const PureTranscript run = execute_pure(spec, input, options);
  SchmidtTrial out;
  out.rounds = spec.rounds;
  out.communication = communication_complexity(spec);
  out.ranks.push_back(schmidt_decompose(input, side_labels(spec, 0), rank_tolerance).rank);
  out.cumulative.push_back(0.0);
  for (std::size_t i = 1; i <= 2 * spec.rounds; ++i) {
    const std::size_t rank = schmidt_decompose(run.step(i), side_labels(spec, i), rank_tolerance).rank;
    const std::size_t message = message_dim_at_step(spec, i);
    out.cumulative.push_back(out.cumulative.back() + std::log2(static_cast<double>(message)));
    if (rank > out.ranks.back() * message) out.within_stepwise = false;
    if (static_cast<double>(rank) > std::exp2(out.cumulative.back()) * out.ranks.front() + kInequalitySlack) {
      out.within_stepwise = false;
    }
    out.ranks.push_back(rank);
  }
  out.within_total = static_cast<double>(out.ranks.back()) <=
                     std::exp2(out.communication) * static_cast<double>(out.ranks.front()) + kInequalitySlack;
  return out;
}

SchmidtTrial schmidt_rank_trial(std::uint64_t seed, std::size_t rounds, std::size_t qubit_budget,
                                double rank_tolerance) {
  const ProtocolSpec spec = random_protocol(seed, rounds, qubit_budget);
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  const StateVector input =
      tensor(random_state(spec.a_memory.front(), rng), random_state(spec.b_memory.front(), rng));
  SchmidtTrial out = schmidt_rank_profile(spec, input, rank_tolerance);
  out.seed = seed;
  return out;
}

FuchsVanDeGraafTrial fuchs_van_de_graaf_trial(std::uint64_t seed, std::size_t dim) {
  Rng rng(seed);
  const RegisterLayout layout{{"q", dim}};
  // Alternate full-rank and rank-deficient samples so both regimes are covered.
  const std::size_t rank = seed % 2 == 0 ? 0 : 1 + rng.below(dim);
  const DensityOperator rho = random_density(layout, rng, rank);
  const DensityOperator sigma = random_density(layout, rng, rank);
  FuchsVanDeGraafTrial out;
  out.dim = dim;
  out.distance = trace_distance(rho, sigma);
  out.fidelity = fidelity(rho, sigma);
  out.lower_ok = 1.0 - out.fidelity - kInequalitySlack <= out.distance;
  out.upper_ok = out.distance <= std::sqrt(std::max(0.0, 1.0 - out.fidelity * out.fidelity)) + kInequalitySlack;
  return out;
}

std::vector<SchmidtTrial> schmidt_rank_suite(std::uint64_t seed, std::size_t trials, double rank_tolerance) {
  std::vector<SchmidtTrial> out;
  out.reserve(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    out.push_back(schmidt_rank_trial(seed + t, 1 + (t / 6) % 3, 1 + t % 6, rank_tolerance));
  }
  return out;
}

PropertySuiteReport run_property_suite(std::uint64_t seed, std::size_t trials) {
  PropertySuiteReport out;
  static constexpr std::size_t kDims[] = {2, 4, 8};
  out.schmidt = schmidt_rank_suite(seed, trials);
  for (const auto& s : out.schmidt) {
    if (!s.within_total || !s.within_stepwise) ++out.schmidt_violations;
  }
  out.schmidt_trials = trials;
  const std::size_t pairs = trials * 5 / 2;  // at least 500 pairs for the default 200 trials
  for (std::size_t t = 0; t < pairs; ++t) {
    FuchsVanDeGraafTrial f = fuchs_van_de_graaf_trial(seed + 7919 * (t + 1), kDims[t % 3]);
    if (!f.lower_ok || !f.upper_ok) ++out.fvdg_violations;
    out.fvdg.push_back(f);
  }
  out.fvdg_trials = pairs;
  return out;
}

}  // namespace qpirlab
