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

#include <optional>
#include <string>
#include <vector>

#include "qpirlab/protocol.hpp"

namespace qpirlab {

/// Replacement operations for one party. `memory[k]` is the adversary's
/// space after round k+1 (rounds 1..s); the initial space is the honest one.
struct AdversaryStrategy {
  Party party = Party::A;
  std::vector<RegisterLayout> memory;
  std::vector<Operation> ops;
  std::optional<double> gamma;
};

AdversaryStrategy honest_strategy(const ProtocolSpec& spec, Party party);
AdversaryStrategy purified_strategy(const ProtocolSpec& spec, Party party);

ProtocolSpec install(const ProtocolSpec& spec, const AdversaryStrategy& adv);

/// Recovery maps F_1..F_{2s}, one per step.
struct RecoveryMapSet {
  std::vector<Operation> maps;
};

/// Domain and codomain required of F_step.
RegisterLayout recovery_input(const ProtocolSpec& spec, const AdversaryStrategy& adv, std::size_t step);
RegisterLayout recovery_output(const ProtocolSpec& spec, Party party, std::size_t step);

RecoveryMapSet identity_recovery(const ProtocolSpec& spec, const AdversaryStrategy& adv);
/// Traces out every adversary register that the honest party would not hold.
RecoveryMapSet trace_out_recovery(const ProtocolSpec& spec, const AdversaryStrategy& adv);

struct NamedInput {
  std::string id;
  DensityOperator state;
};

/// Computational-basis products, uniform superposition on A_0 times each
/// basis state of B_0, and the maximally entangled A_0 B_0 : R state.
std::vector<NamedInput> default_input_suite(const ProtocolSpec& spec);

struct CertificationRow {
  std::size_t step = 0;
  std::string input_id;
  double distance = 0.0;
};

struct SpeciousCertificate {
  std::vector<CertificationRow> rows;
  double epsilon_hat = 0.0;
  std::optional<double> gamma;
  /// epsilon_hat <= gamma on the supplied inputs; false without a claimed gamma.
  bool certified = false;
};

SpeciousCertificate certify_specious(const ProtocolSpec& spec, const AdversaryStrategy& adv,
                                     const RecoveryMapSet& recovery, const std::vector<NamedInput>& inputs,
                                     const ExecutionOptions& options = {});

SpeciousCertificate certify_ultimately_specious(const ProtocolSpec& spec, const AdversaryStrategy& adv,
                                                const Operation& recovery, const std::vector<NamedInput>& inputs,
                                                const ExecutionOptions& options = {});

}  // namespace qpirlab
