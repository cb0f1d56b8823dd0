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

#include "qpirlab/qpir.hpp"
#include "qpirlab/quantum_info.hpp"
#include "qpirlab/serialization.hpp"

namespace qpirlab {

/// |nu_i>: the fully purified protocol run on the superposition of all
/// databases with index i. Lives on S (x) C, the final server and client spaces.
StateVector nu_state(const QpirProtocol& qpir, std::size_t i, const ExecutionOptions& options = {});

struct RandomAccessEncoding {
  std::size_t n = 0;
  std::size_t support_dim = 0;
  double m = 0.0;  ///< log2(support_dim)
  std::size_t m_qubits = 0;
  RegisterLayout server_layout;
  RegisterLayout client_layout;
  /// C' -> C, onto the support of the client marginal of |nu_1>.
  Isometry decompressor = Isometry::identity(RegisterLayout{});
  /// Codeword for database x, on C'.
  std::vector<DensityOperator> codewords;
  /// Per index: U^{1->i} on C and the Helstrom projector (outcome 0) on the
  /// honest client register B_s.
  std::vector<SubspaceUnitary> rotations;
  std::vector<Matrix> client_projectors;
  RegisterLayout honest_client_layout;
  /// Per index: the outcome-0 effect pulled back to C'.
  std::vector<Matrix> effects;
  /// Fidelity of the server marginals of |nu_i> and |nu_1>, realized by U^{1->i}.
  std::vector<double> uhlmann_overlap;
  std::vector<double> server_distance;  ///< Δ(server marginal of nu_1, of nu_i)

  const DensityOperator& encode(std::uint64_t x) const { return codewords.at(x); }
};

struct ReductionOptions {
  double rank_tolerance = kDefaultRankTolerance;
  ExecutionOptions execution;
  /// Tolerance for asserting that every codeword lies in the compression support.
  double support_tolerance = 1e-8;
};

RandomAccessEncoding build_rae(const QpirProtocol& qpir, const CorrectnessReport& correctness,
                               const ReductionOptions& options = {});
RandomAccessEncoding build_rae(const QpirProtocol& qpir, const ReductionOptions& options = {});

/// Probability that the index-i decoder outputs `bit` on `codeword`.
double decode_bit(const RandomAccessEncoding& rae, const DensityOperator& codeword, std::size_t i, int bit);

struct RecoveryReport {
  std::vector<double> per_index;  ///< average over x of Pr[outcome = x_i]
  double min = 0.0;
  double mean = 0.0;
};

RecoveryReport recovery_probability(const RandomAccessEncoding& rae);

struct LowerBound {
  double value = 0.0;     ///< (1 - H_bin(clamped argument)) n, or 0 when vacuous
  double argument = 0.0;  ///< 1 - delta - 2 sqrt(epsilon (1 - epsilon)), unclamped
  double clamped = 0.0;
  bool vacuous = false;   ///< argument < 1/2: the bound does not bind
};

LowerBound lower_bound(std::size_t n, double delta, double epsilon);
double recovery_guarantee(double delta, double epsilon);

struct NayakVerdict {
  bool holds = false;
  double required = 0.0;  ///< (1 - H_bin(p)) n
  double slack = 0.0;     ///< m - required
};

NayakVerdict nayak_check(std::size_t n, double m, double p);

struct AttackReport {
  std::string protocol;
  std::size_t n = 0;
  double communication = 0.0;
  std::vector<std::vector<double>> pairwise;
  double max_distance = 0.0;
  /// Helstrom success for the most distinguishable pair of indices.
  double guess_probability = 0.5;
  double epsilon_hat = 0.0;
  double delta_hat = 0.0;
  std::string verdict;      ///< PRIVATE, APPROXIMATELY-PRIVATE or NOT-PRIVATE
  std::string premise;      ///< empty when the lower-bound premises hold
  std::string consistency;  ///< relation between communication and the bound
};

AttackReport superposition_attack(const QpirProtocol& qpir, const ExecutionOptions& options = {});

struct UhlmannCheck {
  std::size_t index = 0;
  double achieved = 0.0;           ///< Δ((1 (x) U)|nu_1>, |nu_i>)
  double server_distance = 0.0;    ///< d_i = Δ between server marginals
  double local_bound = 0.0;        ///< sqrt(d_i (2 - d_i))
  double privacy_bound = 0.0;      ///< 2 sqrt(eps (1 - eps))
  bool within_local = false;
  bool within_privacy = false;
};

struct BoundReport {
  std::string protocol;
  std::size_t n = 0;
  double c = 0.0;
  double m = 0.0;
  std::size_t m_qubits = 0;
  std::size_t support_dim = 0;
  CorrectnessReport correctness;
  PrivacyReport privacy;
  double delta_hat = 0.0;
  double epsilon_hat = 0.0;  ///< reference-index-1 estimate fed to the guarantee
  RecoveryReport recovery;
  std::vector<double> superposition_recovery;  ///< empty unless the server keeps A_0
  double guarantee = 0.0;
  LowerBound bound;
  NayakVerdict nayak;
  std::vector<UhlmannCheck> uhlmann;
  bool compression_ok = false;
  bool recovery_ok = false;
  bool bound_ok = false;
  bool premises_hold = false;
  std::string premise;
  std::string verdict;  ///< HOLDS or VIOLATED
};

BoundReport reduce(const QpirProtocol& qpir, const ReductionOptions& options = {});

Json to_json(const CorrectnessReport& report);
Json to_json(const PrivacyReport& report);
Json to_json(const LowerBound& bound);
Json to_json(const NayakVerdict& verdict);
Json to_json(const AttackReport& report);
Json to_json(const BoundReport& report);

std::string bound_csv_header();
std::string to_csv_row(const BoundReport& report);

}  // namespace qpirlab
