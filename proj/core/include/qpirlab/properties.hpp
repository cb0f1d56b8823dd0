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

#pragma once

#include <cstdint>
#include <vector>

#include "qpirlab/protocol.hpp"
#include "qpirlab/quantum_info.hpp"

namespace qpirlab {

/// Schmidt ranks across the party cut of a random unitary protocol run on a
/// random product input.
struct SchmidtTrial {
  std::uint64_t seed = 0;
  std::size_t rounds = 0;
  double communication = 0.0;
  std::vector<std::size_t> ranks;  ///< after steps 0..2s
  std::vector<double> cumulative;  ///< qubits sent up to each step
  bool within_total = true;        ///< final rank <= 2^c
  bool within_stepwise = true;     ///< rank_i <= rank_{i-1} * dim(message_i), and <= 2^{c_i}
};

SchmidtTrial schmidt_rank_trial(std::uint64_t seed, std::size_t rounds, std::size_t qubit_budget,
                                double rank_tolerance = kDefaultRankTolerance);

/// Schmidt ranks of an arbitrary protocol run on a pure product input over A_0 (x) B_0.
SchmidtTrial schmidt_rank_profile(const ProtocolSpec& spec, const StateVector& input,
                                  double rank_tolerance = kDefaultRankTolerance,
                                  const ExecutionOptions& options = {});

struct FuchsVanDeGraafTrial {
  std::size_t dim = 0;
  double distance = 0.0;
  double fidelity = 0.0;
  bool lower_ok = true;  ///< 1 - F - 1e-9 <= Δ
  bool upper_ok = true;  ///< Δ <= sqrt(1 - F^2) + 1e-9
};

FuchsVanDeGraafTrial fuchs_van_de_graaf_trial(std::uint64_t seed, std::size_t dim);

struct PropertySuiteReport {
  std::size_t schmidt_trials = 0;
  std::size_t schmidt_violations = 0;
  std::size_t fvdg_trials = 0;
  std::size_t fvdg_violations = 0;
  std::vector<SchmidtTrial> schmidt;
  std::vector<FuchsVanDeGraafTrial> fvdg;
};

/// Seeded random fully unitary protocols; trial t uses seed + t, communication
/// 1 + t mod 6 qubits and 1 + (t / 6) mod 3 rounds.
std::vector<SchmidtTrial> schmidt_rank_suite(std::uint64_t seed, std::size_t trials,
                                             double rank_tolerance = kDefaultRankTolerance);

/// Trial t uses communication 1 + t mod 6 qubits and 1 + (t / 6) mod 3 rounds;
/// density pairs cycle through dimensions 2, 4 and 8.
PropertySuiteReport run_property_suite(std::uint64_t seed, std::size_t trials);

}  // namespace qpirlab
