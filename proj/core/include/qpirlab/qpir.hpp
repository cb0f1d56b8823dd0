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

#include "qpirlab/protocol.hpp"

namespace qpirlab {

/// Two-party protocol read as QPIR: party A is the server holding an n-bit
/// database in A_0 (basis state |x>, x_1 the most significant bit) and party
/// B is the client holding index i in B_0 (basis state |i-1>).
struct QpirProtocol {
  std::size_t n = 0;
  ProtocolSpec spec;
  std::string name;
};

QpirProtocol make_qpir(ProtocolSpec spec, std::optional<std::size_t> n = std::nullopt, std::string name = "custom");

/// Bit i (1-based) of database x.
inline int database_bit(std::uint64_t x, std::size_t i, std::size_t n) {
  return static_cast<int>((x >> (n - i)) & 1U);
}

StateVector qpir_input(const QpirProtocol& qpir, std::uint64_t x, std::size_t i);
/// Uniform superposition of all databases, index i.
StateVector superposition_input(const QpirProtocol& qpir, std::size_t i);

struct BuiltinParams {
  double delta = 0.1;
  std::uint64_t seed = 0;
};

/// trivial, index-in-clear, noisy-trivial or random.
QpirProtocol builtin(const std::string& name, std::size_t n, const BuiltinParams& params = {});
QpirProtocol trivial_qpir(std::size_t n);
QpirProtocol index_in_clear_qpir(std::size_t n);
QpirProtocol noisy_trivial_qpir(std::size_t n, double delta);
QpirProtocol random_qpir(std::size_t n, std::uint64_t seed);

/// Resolves "builtin:<name>?n=..&delta=..&seed=.." or a protocol JSON path.
/// Query parameters override the fallbacks.
QpirProtocol load_qpir(const std::string& source, std::optional<std::size_t> n = std::nullopt,
                       const BuiltinParams& fallback = {});

/// Both parties replaced by their Stinespring dilations.
ProtocolSpec fully_purified(const ProtocolSpec& spec);

struct CorrectnessReport {
  std::vector<double> per_index;
  double max = 0.0;
  double mean = 0.0;
  RegisterLayout client_layout;
  /// Helstrom projector for outcome x_i = 0, per index, on client_layout.
  std::vector<Matrix> projectors;
};

CorrectnessReport correctness_delta(const QpirProtocol& qpir, const ExecutionOptions& options = {});

struct PrivacyOptions {
  bool include_basis_inputs = false;
};

struct PrivacyReport {
  double epsilon_hat = 0.0;
  std::size_t reference_index = 1;
  /// Same estimate with the simulator replaying index 1.
  double epsilon_ref1 = 0.0;
  double pairwise_lower = 0.0;
  /// Δ(server at i, server at reference_index).
  std::vector<double> per_index;
  /// n x n matrix of Δ between server marginals.
  std::vector<std::vector<double>> pairwise;
};

/// Server marginals of the purified run on the superposition input, per index.
std::vector<DensityOperator> server_marginals(const QpirProtocol& qpir, const ExecutionOptions& options = {});

PrivacyReport privacy_epsilon_purified(const QpirProtocol& qpir, const PrivacyOptions& privacy = {},
                                       const ExecutionOptions& options = {});

}  // namespace qpirlab
