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

#include "qpirlab/reduction.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "qpirlab/error.hpp"

namespace qpirlab {

namespace {

constexpr double kRecoverySlack = 1e-6;
constexpr double kUhlmannSlack = 1e-8;
constexpr double kEstimateFloor = 1e-12;

// Estimates below the floor are rounding residue of exact zeros.
double snap(double estimate) { return estimate < kEstimateFloor ? 0.0 : estimate; }

std::vector<StateVector> nu_states(const QpirProtocol& qpir, const ProtocolSpec& pure, const ExecutionOptions& options) {
  std::vector<StateVector> out;
  for (std::size_t i = 1; i <= qpir.n; ++i) {
    out.push_back(execute_pure(pure, superposition_input(qpir, i), options).final_state());
  }
  return out;
}

std::string fresh_label(const RegisterLayout& taken, std::string label) {
  while (taken.contains(label)) label += "'";
  return label;
}

double max_of(const std::vector<std::vector<double>>& m) {
  double out = 0.0;
  for (const auto& row : m) {
    for (double v : row) out = std::max(out, v);
  }
  return out;
}

std::string premise_text(double epsilon, double guarantee) {
  std::string out;
  auto add = [&](const std::string& s) { out += (out.empty() ? "" : "; ") + s; };
  char buf[32];
  if (epsilon > 0.5) {
    auto res = std::to_chars(buf, buf + sizeof buf, epsilon);
    add("privacy premise fails: epsilon_hat = " + std::string(buf, res.ptr) + " exceeds 1/2");
  }
  if (guarantee < 0.5) {
    auto res = std::to_chars(buf, buf + sizeof buf, guarantee);
    add("recovery guarantee " + std::string(buf, res.ptr) + " is below 1/2, so the bound does not bind");
  }
  return out;
}

// Server keeps A_0 untouched iff its final space still contains every A_0 register.
bool keeps_database(const ProtocolSpec& original, const RegisterLayout& server) {
  for (const auto& reg : original.a_memory.front().registers()) {
    if (!server.contains(reg.label) || server.dim_of(reg.label) != reg.dim) return false;
  }
  return true;
}

// Average over x of Pr[outcome x_i] when the decoder runs on (1 (x) U)|nu_1>
// and the database register is measured afterwards.
double superposition_success(const QpirProtocol& qpir, const StateVector& rotated, const RegisterLayout& honest_client, const Matrix& projector, std::size_t i) {
  const RegisterLayout& db = qpir.spec.a_memory.front();
  const RegisterLayout rest = rotated.layout().without(db.labels()).without(honest_client.labels());
  const StateVector arranged = rotated.permuted(db.concat(rest).concat(honest_client));
  const auto dc = static_cast<Eigen::Index>(honest_client.total_dim());
  const auto block = static_cast<Eigen::Index>(rest.total_dim() * honest_client.total_dim());
  const Matrix complement = Matrix::Identity(dc, dc) - projector;
  double total = 0.0;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << qpir.n); ++x) {
    const auto offset = static_cast<Eigen::Index>(x) * block;
    Eigen::Map<const Matrix> slice(arranged.amplitudes().data() + offset, dc, block / dc);
    const Matrix& effect = database_bit(x, i, qpir.n) == 0 ? projector : complement;
    total += (effect * slice).squaredNorm();
  }
  return total;
}

}  // namespace

StateVector nu_state(const QpirProtocol& qpir, std::size_t i, const ExecutionOptions& options) {
  return execute_pure(fully_purified(qpir.spec), superposition_input(qpir, i), options).final_state();
}

RandomAccessEncoding build_rae(const QpirProtocol& qpir, const ReductionOptions& options) {
  return build_rae(qpir, correctness_delta(qpir, options.execution), options);
}

RandomAccessEncoding build_rae(const QpirProtocol& qpir, const CorrectnessReport& correctness,
                               const ReductionOptions& options) {
  if (correctness.projectors.size() != qpir.n) throw DomainError("correctness report does not match n");
  const ProtocolSpec pure = fully_purified(qpir.spec);
  const std::vector<StateVector> nus = nu_states(qpir, pure, options.execution);
  const StateVector& nu1 = nus.front();

  RandomAccessEncoding rae;
  rae.n = qpir.n;
  rae.server_layout = pure.a_memory.back();
  rae.honest_client_layout = qpir.spec.b_memory.back();
  const LabelSet client_labels = pure.b_memory.back().labels();

  rae.decompressor = schmidt_compressor(nu1, client_labels, options.rank_tolerance, fresh_label(nu1.layout(), "code"));
  rae.client_layout = rae.decompressor.output_layout();
  rae.support_dim = rae.decompressor.input_layout().total_dim();
  rae.m = std::log2(static_cast<double>(rae.support_dim));
  rae.m_qubits = static_cast<std::size_t>(std::ceil(rae.m - 1e-12));
  const Matrix& w = rae.decompressor.matrix();

  for (std::uint64_t x = 0; x < (std::uint64_t{1} << qpir.n); ++x) {
    const StateVector psi = execute_pure(pure, qpir_input(qpir, x, 1), options.execution).final_state();
    const Matrix mat = matricize(psi, rae.client_layout.labels());
    const Matrix compressed = w.adjoint() * mat;
    const double residual = (mat - w * compressed).norm();
    if (residual > options.support_tolerance) {
      throw NumericalError("codeword for x = " + std::to_string(x) + " leaves the compression support by " +
                           std::to_string(residual) + "; check the rank tolerance");
    }
    rae.codewords.push_back(
        DensityOperator::from_trusted(rae.decompressor.input_layout(), compressed * compressed.adjoint()));
  }

  const DensityOperator server1 = partial_trace(nu1, rae.server_layout.labels());
  const RegisterLayout& honest = rae.honest_client_layout;
  const RegisterLayout moved = rae.client_layout.without(honest.labels()).concat(honest);
  for (std::size_t i = 1; i <= qpir.n; ++i) {
    UhlmannSolution sol = uhlmann_rotation(nus[i - 1], nu1, client_labels);
    if (!(sol.rotation.layout == rae.client_layout)) {
      sol.rotation.basis = permute_rows(sol.rotation.basis, sol.rotation.layout, rae.client_layout);
      sol.rotation.layout = rae.client_layout;
    }
    const Matrix& projector = correctness.projectors[i - 1];
    const Matrix y = sol.rotation.apply_to_columns(w);
    const Matrix py = permute_rows(apply_to_columns(projector, honest, honest, rae.client_layout, y), moved,
                                   rae.client_layout);
    Matrix effect = y.adjoint() * py;
    rae.effects.push_back(0.5 * (effect + effect.adjoint()));
    rae.uhlmann_overlap.push_back(std::min(1.0, sol.overlap));
    rae.server_distance.push_back(
        i == 1 ? 0.0 : trace_distance(server1, partial_trace(nus[i - 1], rae.server_layout.labels())));
    rae.rotations.push_back(std::move(sol.rotation));
    rae.client_projectors.push_back(projector);
  }
  return rae;
}

double decode_bit(const RandomAccessEncoding& rae, const DensityOperator& codeword, std::size_t i, int bit) {
  if (i < 1 || i > rae.n) throw DomainError("index " + std::to_string(i) + " outside 1.." + std::to_string(rae.n));
  if (codeword.dim() != rae.support_dim) throw LayoutError("codeword dimension does not match the encoding");
  const double p0 = std::clamp((rae.effects[i - 1] * codeword.matrix()).trace().real(), 0.0, 1.0);
  return bit == 0 ? p0 : 1.0 - p0;
}

RecoveryReport recovery_probability(const RandomAccessEncoding& rae) {
  RecoveryReport out;
  const std::size_t d = rae.codewords.size();
  for (std::size_t i = 1; i <= rae.n; ++i) {
    double total = 0.0;
    for (std::uint64_t x = 0; x < d; ++x) total += decode_bit(rae, rae.codewords[x], i, database_bit(x, i, rae.n));
    out.per_index.push_back(total / static_cast<double>(d));
  }
  out.min = *std::min_element(out.per_index.begin(), out.per_index.end());
  for (double p : out.per_index) out.mean += p;
  out.mean /= static_cast<double>(rae.n);
  return out;
}

double recovery_guarantee(double delta, double epsilon) {
  return 1.0 - delta - 2.0 * std::sqrt(epsilon * (1.0 - epsilon));
}

LowerBound lower_bound(std::size_t n, double delta, double epsilon) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw DomainError("delta must lie in [0, 1]");
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw DomainError("epsilon must lie in [0, 1]");
  LowerBound out;
  out.argument = recovery_guarantee(delta, epsilon);
  out.clamped = std::clamp(out.argument, 0.0, 1.0);
  out.vacuous = out.argument < 0.5;
  out.value = out.vacuous ? 0.0 : (1.0 - binary_entropy(out.clamped)) * static_cast<double>(n);
  return out;
}

NayakVerdict nayak_check(std::size_t n, double m, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p must lie in [0, 1]");
  NayakVerdict out;
  out.required = (1.0 - binary_entropy(p)) * static_cast<double>(n);
  out.slack = m - out.required;
  out.holds = out.slack >= -1e-9;
  return out;
}

AttackReport superposition_attack(const QpirProtocol& qpir, const ExecutionOptions& options) {
  const std::vector<DensityOperator> marginals = server_marginals(qpir, options);
  AttackReport out;
  out.protocol = qpir.name;
  out.n = qpir.n;
  out.communication = communication_complexity(qpir.spec);
  out.pairwise.assign(qpir.n, std::vector<double>(qpir.n, 0.0));
  for (std::size_t a = 0; a < qpir.n; ++a) {
    for (std::size_t b = a + 1; b < qpir.n; ++b) {
      out.pairwise[a][b] = out.pairwise[b][a] = trace_distance(marginals[a], marginals[b]);
    }
  }
  out.max_distance = max_of(out.pairwise);
  out.guess_probability = 0.5 + 0.5 * out.max_distance;
  out.epsilon_hat = 1.0;
  for (std::size_t j = 0; j < qpir.n; ++j) {
    double worst = 0.0;
    for (std::size_t i = 0; i < qpir.n; ++i) worst = std::max(worst, out.pairwise[i][j]);
    out.epsilon_hat = std::min(out.epsilon_hat, worst);
  }
  out.epsilon_hat = snap(out.epsilon_hat);
  out.delta_hat = snap(correctness_delta(qpir, options).max);

  if (out.max_distance <= 1e-9) {
    out.verdict = "PRIVATE";
  } else if (out.epsilon_hat > 0.5) {
    out.verdict = "NOT-PRIVATE";
  } else {
    out.verdict = "APPROXIMATELY-PRIVATE";
  }
  const double guarantee = recovery_guarantee(out.delta_hat, out.epsilon_hat);
  out.premise = premise_text(out.epsilon_hat, guarantee);
  const LowerBound bound = lower_bound(qpir.n, out.delta_hat, out.epsilon_hat);
  if (out.communication + 1e-9 >= static_cast<double>(qpir.n)) {
    out.consistency = "consistent";
  } else if (!out.premise.empty()) {
    out.consistency = "consistent-because-non-private";
  } else {
    out.consistency = out.communication + kRecoverySlack >= bound.value ? "consistent" : "inconsistent";
  }
  return out;
}

BoundReport reduce(const QpirProtocol& qpir, const ReductionOptions& options) {
  BoundReport r;
  r.protocol = qpir.name;
  r.n = qpir.n;
  r.c = communication_complexity(qpir.spec);
  r.correctness = correctness_delta(qpir, options.execution);
  r.privacy = privacy_epsilon_purified(qpir, {}, options.execution);
  r.delta_hat = snap(r.correctness.max);
  r.epsilon_hat = snap(r.privacy.epsilon_ref1);

  const RandomAccessEncoding rae = build_rae(qpir, r.correctness, options);
  r.m = rae.m;
  r.m_qubits = rae.m_qubits;
  r.support_dim = rae.support_dim;
  r.recovery = recovery_probability(rae);
  r.guarantee = recovery_guarantee(r.delta_hat, r.epsilon_hat);
  r.bound = lower_bound(qpir.n, r.delta_hat, r.epsilon_hat);
  r.nayak = nayak_check(qpir.n, r.m, r.recovery.min);

  const double privacy_bound = 2.0 * std::sqrt(r.epsilon_hat * (1.0 - r.epsilon_hat));
  for (std::size_t i = 1; i <= qpir.n; ++i) {
    UhlmannCheck u;
    u.index = i;
    const double f = rae.uhlmann_overlap[i - 1];
    u.achieved = std::sqrt(std::max(0.0, 1.0 - f * f));
    u.server_distance = rae.server_distance[i - 1];
    u.local_bound = std::sqrt(u.server_distance * (2.0 - u.server_distance));
    u.privacy_bound = privacy_bound;
    u.within_local = u.achieved <= u.local_bound + kUhlmannSlack;
    u.within_privacy = u.achieved <= u.privacy_bound + kUhlmannSlack;
    r.uhlmann.push_back(u);
  }

  if (keeps_database(qpir.spec, rae.server_layout)) {
    const StateVector nu1 = nu_state(qpir, 1, options.execution);
    for (std::size_t i = 1; i <= qpir.n; ++i) {
      const StateVector rotated = rae.rotations[i - 1].apply(nu1);
      r.superposition_recovery.push_back(superposition_success(qpir, rotated, rae.honest_client_layout,
                                                               rae.client_projectors[i - 1], i));
    }
  }

  r.compression_ok = r.m <= r.c + 1e-9;
  r.recovery_ok = r.recovery.min >= r.guarantee - kRecoverySlack;
  r.bound_ok = r.bound.vacuous || r.c >= r.bound.value - kRecoverySlack;
  r.premise = premise_text(r.epsilon_hat, r.guarantee);
  r.premises_hold = r.premise.empty();
  const bool all = r.compression_ok && r.recovery_ok && r.nayak.holds && r.bound_ok;
  if (all) {
    r.verdict = "HOLDS";
  } else {
    r.verdict = r.premises_hold ? "VIOLATED" : "PREMISE-FAILS";
  }
  return r;
}

Json to_json(const CorrectnessReport& report) {
  return {{"delta_hat", report.max}, {"delta_mean", report.mean}, {"per_index", report.per_index}};
}

Json to_json(const PrivacyReport& report) {
  return {{"epsilon_hat", report.epsilon_hat},
          {"epsilon_ref1", report.epsilon_ref1},
          {"reference_index", report.reference_index},
          {"pairwise_lower", report.pairwise_lower},
          {"per_index", report.per_index},
          {"pairwise", report.pairwise}};
}

Json to_json(const LowerBound& bound) {
  return {{"value", bound.value}, {"argument", bound.argument}, {"clamped", bound.clamped}, {"vacuous", bound.vacuous}};
}

Json to_json(const NayakVerdict& verdict) {
  return {{"holds", verdict.holds}, {"required", verdict.required}, {"slack", verdict.slack}};
}

Json to_json(const AttackReport& report) {
  return {{"protocol", report.protocol},
          {"n", report.n},
          {"communication", report.communication},
          {"pairwise", report.pairwise},
          {"max_distance", report.max_distance},
          {"guess_probability", report.guess_probability},
          {"epsilon_hat", report.epsilon_hat},
          {"delta_hat", report.delta_hat},
          {"verdict", report.verdict},
          {"premise", report.premise},
          {"consistency", report.consistency}};
}

Json to_json(const BoundReport& r) {
  Json uhlmann = Json::array();
  for (const auto& u : r.uhlmann) {
    uhlmann.push_back({{"index", u.index},
                       {"achieved", u.achieved},
                       {"server_distance", u.server_distance},
                       {"local_bound", u.local_bound},
                       {"privacy_bound", u.privacy_bound},
                       {"within_local", u.within_local},
                       {"within_privacy", u.within_privacy}});
  }
  return {{"protocol", r.protocol},
          {"n", r.n},
          {"c", r.c},
          {"m", r.m},
          {"m_qubits", r.m_qubits},
          {"support_dim", r.support_dim},
          {"delta_hat", r.delta_hat},
          {"epsilon_hat", r.epsilon_hat},
          {"p_hat", r.recovery.min},
          {"p_hat_mean", r.recovery.mean},
          {"p_hat_per_index", r.recovery.per_index},
          {"superposition_recovery", r.superposition_recovery},
          {"guarantee", r.guarantee},
          {"bound", r.bound.value},
          {"lower_bound", to_json(r.bound)},
          {"nayak", to_json(r.nayak)},
          {"correctness", to_json(r.correctness)},
          {"privacy", to_json(r.privacy)},
          {"uhlmann", std::move(uhlmann)},
          {"checks",
           {{"compression", r.compression_ok},
            {"recovery", r.recovery_ok},
            {"nayak", r.nayak.holds},
            {"bound", r.bound_ok},
            {"premises", r.premises_hold}}},
          {"premise", r.premise},
          {"verdict", r.verdict}};
}

std::string bound_csv_header() { return "protocol,n,c,m,delta_hat,epsilon_hat,p_hat,bound,verdict"; }

std::string to_csv_row(const BoundReport& r) {
  auto num = [](double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
  };
  return r.protocol + "," + std::to_string(r.n) + "," + num(r.c) + "," + num(r.m) + "," + num(r.delta_hat) + "," +
         num(r.epsilon_hat) + "," + num(r.recovery.min) + "," + num(r.bound.value) + "," + r.verdict;
}

}  // namespace qpirlab
