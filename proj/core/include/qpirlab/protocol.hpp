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
#include <optional>
#include <string>
#include <vector>

#include "qpirlab/states.hpp"

namespace qpirlab {

enum class Party { A, B };

const char* to_string(Party party) noexcept;

/// Label of the inert reference system R that accompanies every input.
inline constexpr const char* kReferenceLabel = "R";

/// An s-round two-party protocol. Party A sends the first and the last
/// message; the last round is partial (B's final operation has no outgoing
/// message). Index k of a_ops / b_ops is round k+1.
struct ProtocolSpec {
  std::size_t rounds = 0;
  std::vector<RegisterLayout> a_memory;  // A_0 .. A_s
  std::vector<RegisterLayout> b_memory;  // B_0 .. B_s
  std::vector<RegisterLayout> x_messages;  // X_1 .. X_s
  std::vector<RegisterLayout> y_messages;  // Y_1 .. Y_{s-1}
  std::vector<Operation> a_ops;
  std::vector<Operation> b_ops;
  /// Purifying registers added by purify_party, included in the memories.
  LabelSet a_purifiers;
  LabelSet b_purifiers;

  /// Expected domain and codomain of a party's operation in `round` (1-based).
  RegisterLayout op_input(Party party, std::size_t round) const;
  RegisterLayout op_output(Party party, std::size_t round) const;

  const std::vector<Operation>& ops(Party party) const { return party == Party::A ? a_ops : b_ops; }
  const std::vector<RegisterLayout>& memory(Party party) const { return party == Party::A ? a_memory : b_memory; }
  const LabelSet& purifiers(Party party) const { return party == Party::A ? a_purifiers : b_purifiers; }

  /// Checks every structural invariant; throws ShapeError naming the round.
  void validate() const;
};

/// Registers on party A's side of the A/B cut after `step` (0..2s). A message
/// in transit counts for its receiver.
RegisterLayout a_side_after_step(const ProtocolSpec& spec, std::size_t step);
RegisterLayout b_side_after_step(const ProtocolSpec& spec, std::size_t step);
/// Dimension of the message sent at `step` (X at odd steps, Y at even ones,
/// 1 at step 2s).
std::size_t message_dim_at_step(const ProtocolSpec& spec, std::size_t step);

/// Input layout A_0 (x) B_0 (x) R with dim R = dim A_0 * dim B_0.
RegisterLayout input_layout(const ProtocolSpec& spec);
/// A_0 (x) B_0 without the reference system.
RegisterLayout local_input_layout(const ProtocolSpec& spec);

struct ExecutionOptions {
  /// Ceiling on stored complex entries per state: dim for pure states,
  /// dim^2 for density operators.
  std::size_t dim_guard = kDefaultDimensionGuard;
};

struct Transcript {
  DensityOperator input;
  /// rho_1 .. rho_2s.
  std::vector<DensityOperator> states;

  const DensityOperator& step(std::size_t i) const { return states.at(i - 1); }
  const DensityOperator& final_state() const { return states.back(); }
};

struct PureTranscript {
  StateVector input;
  std::vector<StateVector> states;

  const StateVector& step(std::size_t i) const { return states.at(i - 1); }
  const StateVector& final_state() const { return states.back(); }
};

/// Runs the protocol on rho_in over A_0 (x) B_0 (x) R, tensoring identity on
/// the idle party's memory and on R at every step.
Transcript execute(const ProtocolSpec& spec, const DensityOperator& rho_in, const ExecutionOptions& options = {});

/// As execute, for inputs over A_0 (x) B_0 plus any registers the protocol
/// never touches (possibly none). Equals execute followed by tracing R out
/// whenever rho_in is a product with R.
Transcript execute_local(const ProtocolSpec& spec, const DensityOperator& rho_in,
                         const ExecutionOptions& options = {});

/// State-vector execution; every operation must be an isometry.
PureTranscript execute_pure(const ProtocolSpec& spec, const StateVector& input,
                            const ExecutionOptions& options = {});

/// Total quantum communication in qubits: sum of log2 of every message dimension.
double communication_complexity(const ProtocolSpec& spec);

/// Replaces `party`'s channels with Stinespring isometries. Round k adds a
/// purifying register of dimension (Kraus count of round k) which stays in
/// that party's memory for the rest of the protocol.
ProtocolSpec purify_party(const ProtocolSpec& spec, Party party);

struct RandomProtocolOptions {
  /// Memory qubits beyond the minimum each party needs to send its messages.
  std::size_t extra_memory_qubits = 1;
};

/// Fully unitary protocol with Haar-random operations whose message sizes
/// (in qubits) are a random split of `qubit_budget` over the 2s-1 messages.
ProtocolSpec random_protocol(std::uint64_t seed, std::size_t rounds, std::size_t qubit_budget,
                             const RandomProtocolOptions& options = {});

}  // namespace qpirlab
