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

#include "qpirlab/adversary.hpp"

#include <algorithm>
#include <cmath>

#include "qpirlab/error.hpp"
#include "qpirlab/quantum_info.hpp"

namespace qpirlab {

namespace {

const RegisterLayout& adversary_memory(const ProtocolSpec& spec, const AdversaryStrategy& adv, std::size_t k) {
  return k == 0 ? spec.memory(adv.party).front() : adv.memory.at(k - 1);
}

// Memory index and trailing message at `step` for a party holding `mem(k)`.
template <typename Mem>
RegisterLayout side_at_step(const ProtocolSpec& spec, Party party, std::size_t step, Mem&& mem) {
  if (step == 0 || step > 2 * spec.rounds) throw DomainError("step out of range");
  const std::size_t k = (step + 1) / 2;
  if (party == Party::A) {
    if (step % 2 == 1) return mem(k).concat(spec.x_messages.at(k - 1));
    return mem(k);
  }
  if (step % 2 == 1) return mem(k - 1);
  if (k == spec.rounds) return mem(k);
  return mem(k).concat(spec.y_messages.at(k - 1));
}

void check_recovery(const ProtocolSpec& spec, const AdversaryStrategy& adv, std::size_t step, const Operation& map) {
  const RegisterLayout want_in = recovery_input(spec, adv, step);
  const RegisterLayout want_out = recovery_output(spec, adv.party, step);
  const std::size_t round = (step + 1) / 2;
  if (!(input_layout(map) == want_in)) {
    throw ShapeError(round, "recovery map for step " + std::to_string(step) + " takes " +
                                input_layout(map).to_string() + ", expected " + want_in.to_string());
  }
  if (!output_layout(map).same_registers(want_out)) {
    throw ShapeError(round, "recovery map for step " + std::to_string(step) + " yields " +
                                output_layout(map).to_string() + ", expected " + want_out.to_string());
  }
}

SpeciousCertificate finish(std::vector<CertificationRow> rows, std::optional<double> gamma) {
  SpeciousCertificate out;
  out.rows = std::move(rows);
  for (const auto& r : out.rows) out.epsilon_hat = std::max(out.epsilon_hat, r.distance);
  out.gamma = gamma;
  out.certified = gamma.has_value() && out.epsilon_hat <= *gamma;
  return out;
}

}  // namespace

AdversaryStrategy honest_strategy(const ProtocolSpec& spec, Party party) {
  spec.validate();
  const auto& mem = spec.memory(party);
  return {party, std::vector<RegisterLayout>(mem.begin() + 1, mem.end()), spec.ops(party), 0.0};
}

AdversaryStrategy purified_strategy(const ProtocolSpec& spec, Party party) {
  const ProtocolSpec purified = purify_party(spec, party);
  const auto& mem = purified.memory(party);
  return {party, std::vector<RegisterLayout>(mem.begin() + 1, mem.end()), purified.ops(party), 0.0};
}

ProtocolSpec install(const ProtocolSpec& spec, const AdversaryStrategy& adv) {
  spec.validate();
  if (adv.memory.size() != spec.rounds || adv.ops.size() != spec.rounds) {
    throw ShapeError(0, "adversary must supply " + std::to_string(spec.rounds) + " memory spaces and operations");
  }
  ProtocolSpec out = spec;
  auto& mem = adv.party == Party::A ? out.a_memory : out.b_memory;
  for (std::size_t k = 1; k <= spec.rounds; ++k) mem[k] = adv.memory[k - 1];
  (adv.party == Party::A ? out.a_ops : out.b_ops) = adv.ops;
  (adv.party == Party::A ? out.a_purifiers : out.b_purifiers).clear();
  out.validate();
  return out;
}

RegisterLayout recovery_input(const ProtocolSpec& spec, const AdversaryStrategy& adv, std::size_t step) {
  return side_at_step(spec, adv.party, step, [&](std::size_t k) { return adversary_memory(spec, adv, k); });
}

RegisterLayout recovery_output(const ProtocolSpec& spec, Party party, std::size_t step) {
  return side_at_step(spec, party, step, [&](std::size_t k) { return spec.memory(party).at(k); });
}

RecoveryMapSet identity_recovery(const ProtocolSpec& spec, const AdversaryStrategy& adv) {
  RecoveryMapSet out;
  for (std::size_t i = 1; i <= 2 * spec.rounds; ++i) {
    try {
      out.maps.emplace_back(Isometry::relabel(recovery_input(spec, adv, i), recovery_output(spec, adv.party, i)));
    } catch (const LayoutError& e) {
      throw ShapeError((i + 1) / 2, e.what());
    }
  }
  return out;
}

RecoveryMapSet trace_out_recovery(const ProtocolSpec& spec, const AdversaryStrategy& adv) {
  RecoveryMapSet out;
  for (std::size_t i = 1; i <= 2 * spec.rounds; ++i) {
    const RegisterLayout in = recovery_input(spec, adv, i);
    const RegisterLayout want = recovery_output(spec, adv.party, i);
    for (const auto& reg : want.registers()) {
      if (!in.contains(reg.label) || in.dim_of(reg.label) != reg.dim) {
        throw ShapeError((i + 1) / 2, "adversary space " + in.to_string() + " lacks honest register '" + reg.label +
                                          "'");
      }
    }
    const KrausChannel traced = KrausChannel::partial_trace(in, want.labels());
    std::vector<Matrix> kraus;
    for (const auto& k : traced.kraus_ops()) kraus.push_back(permute_rows(k, traced.output_layout(), want));
    out.maps.emplace_back(KrausChannel(in, want, std::move(kraus)));
  }
  return out;
}

std::vector<NamedInput> default_input_suite(const ProtocolSpec& spec) {
  const RegisterLayout layout = input_layout(spec);
  const std::size_t da = spec.a_memory.front().total_dim();
  const std::size_t db = spec.b_memory.front().total_dim();
  const std::size_t dr = da * db;
  std::vector<NamedInput> out;
  for (std::size_t a = 0; a < da; ++a) {
    for (std::size_t b = 0; b < db; ++b) {
      out.push_back({"basis:" + std::to_string(a) + "," + std::to_string(b),
                     DensityOperator::pure(StateVector::basis(layout, (a * db + b) * dr))});
    }
  }
  for (std::size_t b = 0; b < db; ++b) {
    Vector v = Vector::Zero(static_cast<Eigen::Index>(layout.total_dim()));
    for (std::size_t a = 0; a < da; ++a) v(static_cast<Eigen::Index>((a * db + b) * dr)) = 1.0;
    out.push_back({"xi:" + std::to_string(b), DensityOperator::pure(StateVector::normalized(layout, std::move(v)))});
  }
  Vector v = Vector::Zero(static_cast<Eigen::Index>(layout.total_dim()));
  for (std::size_t ab = 0; ab < dr; ++ab) v(static_cast<Eigen::Index>(ab * dr + ab)) = 1.0;
  out.push_back({"max-entangled", DensityOperator::pure(StateVector::normalized(layout, std::move(v)))});
  return out;
}

SpeciousCertificate certify_specious(const ProtocolSpec& spec, const AdversaryStrategy& adv,
                                     const RecoveryMapSet& recovery, const std::vector<NamedInput>& inputs,
                                     const ExecutionOptions& options) {
  const ProtocolSpec installed = install(spec, adv);
  if (recovery.maps.size() != 2 * spec.rounds) {
    throw ShapeError(0, "expected " + std::to_string(2 * spec.rounds) + " recovery maps");
  }
  for (std::size_t i = 1; i <= 2 * spec.rounds; ++i) check_recovery(spec, adv, i, recovery.maps[i - 1]);
  std::vector<CertificationRow> rows;
  for (const auto& input : inputs) {
    const Transcript honest = execute(spec, input.state, options);
    const Transcript deviant = execute(installed, input.state, options);
    for (std::size_t i = 1; i <= 2 * spec.rounds; ++i) {
      const DensityOperator recovered = apply(recovery.maps[i - 1], deviant.step(i));
      rows.push_back({i, input.id, trace_distance(recovered, honest.step(i))});
    }
  }
  return finish(std::move(rows), adv.gamma);
}

SpeciousCertificate certify_ultimately_specious(const ProtocolSpec& spec, const AdversaryStrategy& adv,
                                                const Operation& recovery, const std::vector<NamedInput>& inputs,
                                                const ExecutionOptions& options) {
  const ProtocolSpec installed = install(spec, adv);
  const std::size_t last = 2 * spec.rounds;
  check_recovery(spec, adv, last, recovery);
  std::vector<CertificationRow> rows;
  for (const auto& input : inputs) {
    const Transcript honest = execute(spec, input.state, options);
    const Transcript deviant = execute(installed, input.state, options);
    rows.push_back({last, input.id, trace_distance(apply(recovery, deviant.final_state()), honest.final_state())});
  }
  return finish(std::move(rows), adv.gamma);
}

}  // namespace qpirlab
