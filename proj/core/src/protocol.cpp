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

#include "qpirlab/protocol.hpp"

#include <cmath>
#include <set>

#include "qpirlab/error.hpp"
#include "qpirlab/random.hpp"

namespace qpirlab {

const char* to_string(Party party) noexcept { return party == Party::A ? "A" : "B"; }

RegisterLayout ProtocolSpec::op_input(Party party, std::size_t round) const {
  if (party == Party::A) {
    if (round == 1) return a_memory.at(0);
    return a_memory.at(round - 1).concat(y_messages.at(round - 2));
  }
  return b_memory.at(round - 1).concat(x_messages.at(round - 1));
}

RegisterLayout ProtocolSpec::op_output(Party party, std::size_t round) const {
  if (party == Party::A) return a_memory.at(round).concat(x_messages.at(round - 1));
  if (round == rounds) return b_memory.at(round);
  return b_memory.at(round).concat(y_messages.at(round - 1));
}

namespace {

RegisterLayout reference_layout(const RegisterLayout& a0, const RegisterLayout& b0) {
  return RegisterLayout{{kReferenceLabel, a0.total_dim() * b0.total_dim()}};
}

struct Step {
  Party party;
  std::size_t round;
};

Step step_of(std::size_t i) { return i % 2 == 1 ? Step{Party::A, (i + 1) / 2} : Step{Party::B, i / 2}; }

// Layout after applying the operation of step i to `current`.
RegisterLayout next_layout(const ProtocolSpec& spec, std::size_t i, const RegisterLayout& current) {
  const Step st = step_of(i);
  const RegisterLayout in = spec.op_input(st.party, st.round);
  const RegisterLayout out = spec.op_output(st.party, st.round);
  for (const auto& reg : in.registers()) {
    if (!current.contains(reg.label) || current.dim_of(reg.label) != reg.dim) {
      throw ShapeError(st.round, std::string("party ") + to_string(st.party) + " expects register '" + reg.label +
                                     ":" + std::to_string(reg.dim) + "' which is absent from " +
                                     current.to_string());
    }
  }
  try {
    return current.without(in.labels()).concat(out);
  } catch (const LayoutError& e) {
    throw ShapeError(st.round, std::string("party ") + to_string(st.party) + " output " + out.to_string() +
                                   " collides with " + current.to_string() + ": " + e.what());
  }
}

void check_guard(std::size_t dim, bool density, const ExecutionOptions& options, std::size_t step) {
  const double entries = density ? static_cast<double>(dim) * static_cast<double>(dim) : static_cast<double>(dim);
  if (entries > static_cast<double>(options.dim_guard)) {
    throw DimensionGuardError("step " + std::to_string(step) + " needs " + std::to_string(dim) + "-dimensional " +
                              (density ? "density operator" : "state vector") + ", above guard " +
                              std::to_string(options.dim_guard));
  }
}

void require_inputs(const ProtocolSpec& spec, const RegisterLayout& layout) {
  for (const auto* space : {&spec.a_memory.front(), &spec.b_memory.front()}) {
    for (const auto& reg : space->registers()) {
      if (!layout.contains(reg.label) || layout.dim_of(reg.label) != reg.dim) {
        throw LayoutError("input state lacks register '" + reg.label + ":" + std::to_string(reg.dim) + "'; got " +
                          layout.to_string());
      }
    }
  }
}

Transcript run_density(const ProtocolSpec& spec, const DensityOperator& rho_in, const ExecutionOptions& options) {
  spec.validate();
  require_inputs(spec, rho_in.layout());
  check_guard(rho_in.dim(), true, options, 0);
  // Dry run to surface shape and guard errors before any arithmetic.
  RegisterLayout layout = rho_in.layout();
  for (std::size_t i = 1; i <= 2 * spec.rounds; ++i) {
    layout = next_layout(spec, i, layout);
    check_guard(layout.total_dim(), true, options, i);
  }
  Transcript out{rho_in, {}};
  out.states.reserve(2 * spec.rounds);
  const DensityOperator* current = &rho_in;
  for (std::size_t i = 1; i <= 2 * spec.rounds; ++i) {
    const Step st = step_of(i);
    out.states.push_back(apply(spec.ops(st.party).at(st.round - 1), *current));
    current = &out.states.back();
  }
  return out;
}

}  // namespace

void ProtocolSpec::validate() const {
  if (rounds == 0) throw ShapeError(0, "a protocol needs at least one round");
  if (a_memory.size() != rounds + 1 || b_memory.size() != rounds + 1) {
    throw ShapeError(0, "memory spaces must be listed for rounds 0..s");
  }
  if (x_messages.size() != rounds || y_messages.size() != rounds - 1) {
    throw ShapeError(0, "need s messages X_1..X_s and s-1 messages Y_1..Y_{s-1}");
  }
  if (a_ops.size() != rounds || b_ops.size() != rounds) throw ShapeError(0, "each party needs s operations");
  for (std::size_t k = 1; k <= rounds; ++k) {
    for (Party p : {Party::A, Party::B}) {
      const Operation& op = ops(p).at(k - 1);
      const RegisterLayout want_in = op_input(p, k);
      const RegisterLayout want_out = op_output(p, k);
      if (!(input_layout(op) == want_in)) {
        throw ShapeError(k, std::string("party ") + to_string(p) + " operation input " + input_layout(op).to_string() +
                                ", expected " + want_in.to_string());
      }
      if (!(output_layout(op) == want_out)) {
        throw ShapeError(k, std::string("party ") + to_string(p) + " operation output " +
                                output_layout(op).to_string() + ", expected " + want_out.to_string());
      }
    }
  }
  for (const auto* group : {&a_memory, &b_memory, &x_messages, &y_messages}) {
    for (const auto& layout : *group) {
      if (layout.contains(kReferenceLabel)) {
        throw ShapeError(0, std::string("register label '") + kReferenceLabel + "' is reserved for the reference system");
      }
    }
  }
  RegisterLayout layout = local_input_layout(*this);
  for (std::size_t i = 1; i <= 2 * rounds; ++i) layout = next_layout(*this, i, layout);
}

RegisterLayout a_side_after_step(const ProtocolSpec& spec, std::size_t step) {
  if (step > 2 * spec.rounds) throw DomainError("step out of range");
  if (step == 0) return spec.a_memory.front();
  const std::size_t k = (step + 1) / 2;
  if (step % 2 == 1 || k == spec.rounds) return spec.a_memory.at(k);
  return spec.a_memory.at(k).concat(spec.y_messages.at(k - 1));
}

RegisterLayout b_side_after_step(const ProtocolSpec& spec, std::size_t step) {
  if (step > 2 * spec.rounds) throw DomainError("step out of range");
  if (step == 0) return spec.b_memory.front();
  const std::size_t k = (step + 1) / 2;
  if (step % 2 == 1) return spec.b_memory.at(k - 1).concat(spec.x_messages.at(k - 1));
  return spec.b_memory.at(k);
}

std::size_t message_dim_at_step(const ProtocolSpec& spec, std::size_t step) {
  if (step == 0 || step > 2 * spec.rounds) throw DomainError("step out of range");
  const std::size_t k = (step + 1) / 2;
  if (step % 2 == 1) return spec.x_messages.at(k - 1).total_dim();
  if (k == spec.rounds) return 1;
  return spec.y_messages.at(k - 1).total_dim();
}

RegisterLayout input_layout(const ProtocolSpec& spec) {
  const RegisterLayout& a0 = spec.a_memory.at(0);
  const RegisterLayout& b0 = spec.b_memory.at(0);
  return a0.concat(b0).concat(reference_layout(a0, b0));
}

RegisterLayout local_input_layout(const ProtocolSpec& spec) { return spec.a_memory.at(0).concat(spec.b_memory.at(0)); }

Transcript execute(const ProtocolSpec& spec, const DensityOperator& rho_in, const ExecutionOptions& options) {
  if (!rho_in.layout().same_registers(input_layout(spec))) {
    throw LayoutError("protocol input must be over " + input_layout(spec).to_string() + ", got " +
                      rho_in.layout().to_string());
  }
  return run_density(spec, rho_in, options);
}

Transcript execute_local(const ProtocolSpec& spec, const DensityOperator& rho_in, const ExecutionOptions& options) {
  return run_density(spec, rho_in, options);
}

PureTranscript execute_pure(const ProtocolSpec& spec, const StateVector& input, const ExecutionOptions& options) {
  spec.validate();
  require_inputs(spec, input.layout());
  check_guard(input.dim(), false, options, 0);
  RegisterLayout layout = input.layout();
  for (std::size_t i = 1; i <= 2 * spec.rounds; ++i) {
    layout = next_layout(spec, i, layout);
    check_guard(layout.total_dim(), false, options, i);
  }
  std::vector<Isometry> a_ops, b_ops;
  for (std::size_t k = 0; k < spec.rounds; ++k) {
    a_ops.push_back(as_isometry(spec.a_ops[k]));
    b_ops.push_back(as_isometry(spec.b_ops[k]));
  }
  PureTranscript out{input, {}};
  out.states.reserve(2 * spec.rounds);
  const StateVector* current = &input;
  for (std::size_t i = 1; i <= 2 * spec.rounds; ++i) {
    const Step st = step_of(i);
    const Isometry& op = st.party == Party::A ? a_ops[st.round - 1] : b_ops[st.round - 1];
    out.states.push_back(apply(op, *current));
    current = &out.states.back();
  }
  return out;
}

double communication_complexity(const ProtocolSpec& spec) {
  double c = 0.0;
  for (const auto& x : spec.x_messages) c += std::log2(static_cast<double>(x.total_dim()));
  for (const auto& y : spec.y_messages) c += std::log2(static_cast<double>(y.total_dim()));
  return c;
}

namespace {

std::set<std::string> all_labels(const ProtocolSpec& spec) {
  std::set<std::string> out{kReferenceLabel};
  for (const auto* group : {&spec.a_memory, &spec.b_memory, &spec.x_messages, &spec.y_messages}) {
    for (const auto& layout : *group) {
      for (const auto& reg : layout.registers()) out.insert(reg.label);
    }
  }
  return out;
}

// Stinespring dilation: rows indexed by output (x) environment.
Matrix stinespring(const std::vector<Matrix>& kraus) {
  const auto m = static_cast<Eigen::Index>(kraus.size());
  const Eigen::Index rows = kraus.front().rows();
  Matrix v(rows * m, kraus.front().cols());
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index o = 0; o < rows; ++o) v.row(o * m + j) = kraus[static_cast<std::size_t>(j)].row(o);
  }
  return v;
}

}  // namespace

ProtocolSpec purify_party(const ProtocolSpec& spec, Party party) {
  spec.validate();
  ProtocolSpec out = spec;
  std::set<std::string> taken = all_labels(spec);
  std::vector<Register> purifiers;  // accumulated P_1 .. P_k
  std::vector<RegisterLayout>& memory = party == Party::A ? out.a_memory : out.b_memory;
  std::vector<Operation>& ops = party == Party::A ? out.a_ops : out.b_ops;
  LabelSet& purifier_labels = party == Party::A ? out.a_purifiers : out.b_purifiers;

  for (std::size_t k = 1; k <= spec.rounds; ++k) {
    const RegisterLayout orig_in = spec.op_input(party, k);
    const RegisterLayout orig_out = spec.op_output(party, k);
    const std::vector<Matrix> kraus = kraus_ops(spec.ops(party)[k - 1]);

    std::string label = std::string("~") + to_string(party) + std::to_string(k);
    while (taken.count(label)) label += "'";
    taken.insert(label);
    const Register fresh{label, kraus.size()};

    const RegisterLayout previous(purifiers);
    purifiers.push_back(fresh);
    const RegisterLayout current(purifiers);
    memory[k] = spec.memory(party)[k].concat(current);

    // Target shapes with purifiers folded into memory.
    const RegisterLayout new_in = out.op_input(party, k);
    const RegisterLayout new_out = out.op_output(party, k);

    const Matrix v = kron(stinespring(kraus), Matrix::Identity(static_cast<Eigen::Index>(previous.total_dim()),
                                                               static_cast<Eigen::Index>(previous.total_dim())));
    const RegisterLayout raw_in = orig_in.concat(previous);
    const RegisterLayout raw_out = orig_out.concat(RegisterLayout{fresh}).concat(previous);
    Matrix m = permute_cols(permute_rows(v, raw_out, new_out), raw_in, new_in);
    ops[k - 1] = Isometry(new_in, new_out, std::move(m));
    purifier_labels.push_back(label);
  }
  out.validate();
  return out;
}

ProtocolSpec random_protocol(std::uint64_t seed, std::size_t rounds, std::size_t qubit_budget,
                             const RandomProtocolOptions& options) {
  if (rounds == 0) throw DomainError("a protocol needs at least one round");
  if (qubit_budget > 40) throw DomainError("qubit budget too large to split");
  Rng rng(seed);
  // Messages in sending order: X_1, Y_1, X_2, ..., X_s.
  const std::size_t messages = 2 * rounds - 1;
  std::vector<std::size_t> qubits(messages, 0);
  for (std::size_t q = 0; q < qubit_budget; ++q) ++qubits[rng.below(messages)];
  auto x = [&](std::size_t k) { return qubits[2 * (k - 1)]; };
  auto y = [&](std::size_t k) { return qubits[2 * k - 1]; };

  long a_need = 0, b_need = 0, a_net = 0, b_net = 0;
  for (std::size_t k = 1; k <= rounds; ++k) {
    a_net += static_cast<long>(x(k));
    b_net -= static_cast<long>(x(k));
    a_need = std::max(a_need, a_net);
    if (k < rounds) {
      b_net += static_cast<long>(y(k));
      a_net -= static_cast<long>(y(k));
      b_need = std::max(b_need, b_net);
    }
  }
  std::vector<std::size_t> a_qubits{static_cast<std::size_t>(a_need) + options.extra_memory_qubits};
  std::vector<std::size_t> b_qubits{static_cast<std::size_t>(b_need) + options.extra_memory_qubits};
  if (a_qubits[0] + b_qubits[0] > 40) throw DimensionGuardError("random protocol memory too large");
  for (std::size_t k = 1; k <= rounds; ++k) {
    const std::size_t y_prev = k > 1 ? y(k - 1) : 0;
    if (a_qubits.back() + y_prev < x(k)) throw DomainError("infeasible budget split");
    a_qubits.push_back(a_qubits.back() + y_prev - x(k));
    const std::size_t y_out = k < rounds ? y(k) : 0;
    if (b_qubits.back() + x(k) < y_out) throw DomainError("infeasible budget split");
    b_qubits.push_back(b_qubits.back() + x(k) - y_out);
  }

  auto reg = [](std::string label, std::size_t q) {
    return RegisterLayout{{std::move(label), std::size_t{1} << q}};
  };
  ProtocolSpec spec;
  spec.rounds = rounds;
  for (std::size_t k = 0; k <= rounds; ++k) {
    spec.a_memory.push_back(reg("A" + std::to_string(k), a_qubits[k]));
    spec.b_memory.push_back(reg("B" + std::to_string(k), b_qubits[k]));
  }
  for (std::size_t k = 1; k <= rounds; ++k) {
    spec.x_messages.push_back(reg("X" + std::to_string(k), x(k)));
    if (k < rounds) spec.y_messages.push_back(reg("Y" + std::to_string(k), y(k)));
  }
  for (std::size_t k = 1; k <= rounds; ++k) {
    for (Party p : {Party::A, Party::B}) {
      RegisterLayout in = spec.op_input(p, k);
      RegisterLayout out = spec.op_output(p, k);
      Matrix u = haar_unitary_matrix(in.total_dim(), rng);
      (p == Party::A ? spec.a_ops : spec.b_ops).push_back(Isometry(std::move(in), std::move(out), std::move(u)));
    }
  }
  spec.validate();
  return spec;
}

}  // namespace qpirlab
