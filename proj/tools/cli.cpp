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

#include "cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>

#include "qpirlab/adversary.hpp"
#include "qpirlab/error.hpp"
#include "qpirlab/properties.hpp"
#include "qpirlab/qpir.hpp"
#include "qpirlab/random.hpp"
#include "qpirlab/reduction.hpp"
#include "qpirlab/serialization.hpp"

namespace qpirlab::cli {

namespace {

struct RunConfig {
  std::string verb;
  std::string protocol;
  std::size_t n = 0;
  double delta = 0.0;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  double rank_tol = kDefaultRankTolerance;
  std::size_t dim_guard = kDefaultDimensionGuard;
  std::size_t trials = 200;
  std::string out;
  std::string format = "json";
  std::string x;
  std::size_t index = 1;
  std::string adversary = "purified-server";
  bool basis_inputs = false;

  bool has_n = false, has_delta = false, has_seed = false, has_x = false;
};

struct Outcome {
  Json report;
  std::function<std::string()> csv;
  int code = kExitOk;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GuardScope {
 public:
  explicit GuardScope(std::size_t guard) : previous_(dimension_guard()) { set_dimension_guard(guard); }
  ~GuardScope() { set_dimension_guard(previous_); }
  GuardScope(const GuardScope&) = delete;
  GuardScope& operator=(const GuardScope&) = delete;

 private:
  std::size_t previous_;
};

std::string num(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::uint64_t resolve_seed(const RunConfig& cfg) {
  if (cfg.has_seed) return cfg.seed;
  const char* env = std::getenv("QPIRLAB_SEED");
  if (env == nullptr || *env == '\0') return 0;
  std::uint64_t seed = 0;
  const std::string text(env);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), seed);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw UsageError("QPIRLAB_SEED must be a 64-bit unsigned integer, got '" + text + "'");
  }
  return seed;
}

ExecutionOptions execution(const RunConfig& cfg) { return ExecutionOptions{cfg.dim_guard}; }

QpirProtocol load(const RunConfig& cfg) {
  if (cfg.protocol.empty()) throw UsageError("--protocol is required");
  BuiltinParams params;
  params.seed = resolve_seed(cfg);
  if (cfg.has_delta) params.delta = cfg.delta;
  return load_qpir(cfg.protocol, cfg.has_n ? std::optional<std::size_t>(cfg.n) : std::nullopt, params);
}

Json header(const QpirProtocol& qpir) {
  return {{"protocol", qpir.name}, {"n", qpir.n}, {"c", communication_complexity(qpir.spec)}};
}

std::string table_csv(const std::string& head, const std::vector<std::string>& rows) {
  std::string out = head + "\n";
  for (const auto& r : rows) out += r + "\n";
  return out;
}

Outcome do_bound(const RunConfig& cfg) {
  if (!cfg.has_n) throw UsageError("bound needs --n");
  const LowerBound b = lower_bound(cfg.n, cfg.delta, cfg.epsilon);
  Outcome o;
  o.report = {{"n", cfg.n}, {"delta", cfg.delta}, {"epsilon", cfg.epsilon}, {"bound", b.value},
              {"argument", b.argument}, {"clamped", b.clamped}, {"vacuous", b.vacuous}};
  o.csv = [=] {
    return table_csv("n,delta,epsilon,bound,argument,vacuous",
                     {std::to_string(cfg.n) + "," + num(cfg.delta) + "," + num(cfg.epsilon) + "," + num(b.value) +
                      "," + num(b.argument) + "," + (b.vacuous ? "true" : "false")});
  };
  return o;
}

Outcome do_reduce(const RunConfig& cfg) {
  const QpirProtocol qpir = load(cfg);
  ReductionOptions options;
  options.rank_tolerance = cfg.rank_tol;
  options.execution = execution(cfg);
  const BoundReport r = reduce(qpir, options);
  Outcome o;
  o.report = to_json(r);
  o.csv = [r] { return table_csv(bound_csv_header(), {to_csv_row(r)}); };
  o.code = r.verdict == "VIOLATED" ? kExitVerdictFailure : kExitOk;
  return o;
}

Outcome do_correctness(const RunConfig& cfg) {
  const QpirProtocol qpir = load(cfg);
  const CorrectnessReport r = correctness_delta(qpir, execution(cfg));
  Outcome o;
  o.report = header(qpir);
  o.report["correctness"] = to_json(r);
  o.report["delta_hat"] = r.max;
  o.csv = [r] {
    std::vector<std::string> rows;
    for (std::size_t i = 0; i < r.per_index.size(); ++i) rows.push_back(std::to_string(i + 1) + "," + num(r.per_index[i]));
    return table_csv("index,delta_hat", rows);
  };
  return o;
}

Outcome do_privacy(const RunConfig& cfg) {
  const QpirProtocol qpir = load(cfg);
  const PrivacyReport r = privacy_epsilon_purified(qpir, {cfg.basis_inputs}, execution(cfg));
  Outcome o;
  o.report = header(qpir);
  o.report["privacy"] = to_json(r);
  o.report["epsilon_hat"] = r.epsilon_hat;
  o.csv = [r] {
    std::vector<std::string> rows;
    for (std::size_t i = 0; i < r.per_index.size(); ++i) rows.push_back(std::to_string(i + 1) + "," + num(r.per_index[i]));
    return table_csv("index,distance_to_reference", rows);
  };
  return o;
}

Outcome do_attack(const RunConfig& cfg) {
  const QpirProtocol qpir = load(cfg);
  const AttackReport r = superposition_attack(qpir, execution(cfg));
  Outcome o;
  o.report = to_json(r);
  o.csv = [r] {
    return table_csv("protocol,n,communication,max_distance,guess_probability,verdict,consistency",
                     {r.protocol + "," + std::to_string(r.n) + "," + num(r.communication) + "," + num(r.max_distance) +
                      "," + num(r.guess_probability) + "," + r.verdict + "," + r.consistency});
  };
  o.code = r.consistency == "inconsistent" ? kExitVerdictFailure : kExitOk;
  return o;
}

AdversaryStrategy adversary_from_json(const Json& j, const ProtocolSpec& spec, RecoveryMapSet& recovery) {
  AdversaryStrategy adv;
  const std::string party = j.value("party", "A");
  if (party != "A" && party != "B") throw ParseError("/party", "expected \"A\" or \"B\"");
  adv.party = party == "A" ? Party::A : Party::B;
  if (!j.contains("memory") || !j["memory"].is_array()) throw ParseError("/memory", "missing list of layouts");
  for (std::size_t k = 0; k < j["memory"].size(); ++k) {
    adv.memory.push_back(layout_from_json(j["memory"][k], "/memory/" + std::to_string(k)));
  }
  if (adv.memory.size() != spec.rounds) throw ParseError("/memory", "expected one layout per round");
  ProtocolSpec shaped = spec;
  auto& mem = adv.party == Party::A ? shaped.a_memory : shaped.b_memory;
  for (std::size_t k = 1; k <= spec.rounds; ++k) mem[k] = adv.memory[k - 1];
  if (!j.contains("ops") || !j["ops"].is_array()) throw ParseError("/ops", "missing list of operations");
  for (std::size_t k = 0; k < j["ops"].size(); ++k) {
    const RegisterLayout in = shaped.op_input(adv.party, k + 1), out = shaped.op_output(adv.party, k + 1);
    adv.ops.push_back(operation_from_json(j["ops"][k], "/ops/" + std::to_string(k), &in, &out));
  }
  if (j.contains("gamma")) adv.gamma = j["gamma"].get<double>();
  if (j.contains("recovery")) {
    for (std::size_t i = 0; i < j["recovery"].size(); ++i) {
      const RegisterLayout in = recovery_input(spec, adv, i + 1), out = recovery_output(spec, adv.party, i + 1);
      recovery.maps.push_back(operation_from_json(j["recovery"][i], "/recovery/" + std::to_string(i), &in, &out));
    }
  } else {
    recovery = trace_out_recovery(spec, adv);
  }
  return adv;
}

Outcome do_certify(const RunConfig& cfg) {
  const QpirProtocol qpir = load(cfg);
  const ProtocolSpec& spec = qpir.spec;
  AdversaryStrategy adv;
  RecoveryMapSet recovery;
  if (cfg.adversary == "purified-server" || cfg.adversary == "purified-client") {
    adv = purified_strategy(spec, cfg.adversary == "purified-server" ? Party::A : Party::B);
    recovery = trace_out_recovery(spec, adv);
  } else if (cfg.adversary == "honest-server" || cfg.adversary == "honest-client") {
    adv = honest_strategy(spec, cfg.adversary == "honest-server" ? Party::A : Party::B);
    recovery = identity_recovery(spec, adv);
  } else {
    std::ifstream in(cfg.adversary);
    if (!in) throw UsageError("cannot open adversary file '" + cfg.adversary + "'");
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    adv = adversary_from_json(parse_json_text(text), spec, recovery);
  }
  const std::vector<NamedInput> inputs = default_input_suite(spec);
  const SpeciousCertificate cert = certify_specious(spec, adv, recovery, inputs, execution(cfg));
  Outcome o;
  o.report = header(qpir);
  o.report["adversary"] = cfg.adversary;
  Json rows = Json::array();
  for (const auto& r : cert.rows) rows.push_back({{"step", r.step}, {"input_id", r.input_id}, {"distance", r.distance}});
  o.report["rows"] = std::move(rows);
  o.report["epsilon_hat"] = cert.epsilon_hat;
  o.report["gamma"] = cert.gamma ? Json(*cert.gamma) : Json(nullptr);
  o.report["certified"] = cert.certified;
  o.report["inputs"] = inputs.size();
  o.report["scope"] = "finite input suite";
  o.csv = [cert] {
    std::vector<std::string> rows;
    for (const auto& r : cert.rows) rows.push_back(std::to_string(r.step) + "," + r.input_id + "," + num(r.distance));
    return table_csv("step,input_id,distance", rows);
  };
  o.code = cert.certified ? kExitOk : kExitVerdictFailure;
  return o;
}

Json trial_json(const SchmidtTrial& t) {
  return {{"seed", t.seed},          {"rounds", t.rounds},
          {"communication", t.communication}, {"ranks", t.ranks},
          {"cumulative_qubits", t.cumulative}, {"within_total", t.within_total},
          {"within_stepwise", t.within_stepwise}};
}

Outcome do_schmidt_suite(const RunConfig& cfg) {
  const std::uint64_t seed = resolve_seed(cfg);
  const std::vector<SchmidtTrial> trials = schmidt_rank_suite(seed, cfg.trials, cfg.rank_tol);
  std::size_t violations = 0;
  Json rows = Json::array();
  for (const auto& t : trials) {
    if (!t.within_total || !t.within_stepwise) ++violations;
    rows.push_back(trial_json(t));
  }
  Outcome o;
  o.report = {{"seed", seed}, {"input", "random product state"}, {"trials", trials.size()},
              {"violations", violations}, {"results", std::move(rows)}};
  o.csv = [trials] {
    std::vector<std::string> rows;
    for (const auto& t : trials) {
      rows.push_back(std::to_string(t.seed) + "," + std::to_string(t.rounds) + "," + num(t.communication) + "," +
                     std::to_string(t.ranks.back()) + "," + (t.within_total && t.within_stepwise ? "1" : "0"));
    }
    return table_csv("seed,rounds,communication,final_rank,ok", rows);
  };
  o.code = violations == 0 ? kExitOk : kExitVerdictFailure;
  return o;
}

Outcome do_schmidt(const RunConfig& cfg) {
  if (cfg.protocol.empty()) return do_schmidt_suite(cfg);
  const QpirProtocol qpir = load(cfg);
  const ProtocolSpec pure = fully_purified(qpir.spec);
  const SchmidtTrial t = schmidt_rank_profile(pure, superposition_input(qpir, cfg.index), cfg.rank_tol, execution(cfg));
  Outcome o;
  o.report = header(qpir);
  o.report["index"] = cfg.index;
  o.report["input"] = "uniform superposition database with fixed index";
  o.report["schmidt"] = trial_json(t);
  o.csv = [t] {
    std::vector<std::string> rows;
    for (std::size_t i = 0; i < t.ranks.size(); ++i) {
      rows.push_back(std::to_string(i) + "," + std::to_string(t.ranks[i]) + "," + num(t.cumulative[i]));
    }
    return table_csv("step,rank,cumulative_qubits", rows);
  };
  o.code = t.within_total && t.within_stepwise ? kExitOk : kExitVerdictFailure;
  return o;
}

Outcome do_fuzz(const RunConfig& cfg) {
  const std::uint64_t seed = resolve_seed(cfg);
  const PropertySuiteReport r = run_property_suite(seed, cfg.trials);
  Outcome o;
  Json schmidt_failures = Json::array(), fvdg_failures = Json::array();
  for (const auto& t : r.schmidt) {
    if (!t.within_total || !t.within_stepwise) schmidt_failures.push_back(trial_json(t));
  }
  for (const auto& t : r.fvdg) {
    if (!t.lower_ok || !t.upper_ok) {
      fvdg_failures.push_back({{"dim", t.dim}, {"distance", t.distance}, {"fidelity", t.fidelity}});
    }
  }
  o.report = {{"seed", seed},
              {"schmidt_rank", {{"trials", r.schmidt_trials}, {"violations", r.schmidt_violations},
                                {"failures", std::move(schmidt_failures)}}},
              {"fuchs_van_de_graaf", {{"trials", r.fvdg_trials}, {"violations", r.fvdg_violations},
                                      {"failures", std::move(fvdg_failures)}}}};
  o.csv = [r] {
    return table_csv("suite,trials,violations", {"schmidt_rank," + std::to_string(r.schmidt_trials) + "," +
                                                     std::to_string(r.schmidt_violations),
                                                 "fuchs_van_de_graaf," + std::to_string(r.fvdg_trials) + "," +
                                                     std::to_string(r.fvdg_violations)});
  };
  o.code = r.schmidt_violations + r.fvdg_violations == 0 ? kExitOk : kExitVerdictFailure;
  return o;
}

std::uint64_t parse_bits(const std::string& bits, std::size_t n) {
  if (bits.size() != n) throw UsageError("--x must have exactly n = " + std::to_string(n) + " bits");
  std::uint64_t x = 0;
  for (char ch : bits) {
    if (ch != '0' && ch != '1') throw UsageError("--x must be a bit string");
    x = (x << 1) | static_cast<std::uint64_t>(ch - '0');
  }
  return x;
}

std::string to_bits(std::uint64_t x, std::size_t n) {
  std::string out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back(static_cast<char>('0' + database_bit(x, i, n)));
  return out;
}

Outcome do_run(const RunConfig& cfg) {
  const QpirProtocol qpir = load(cfg);
  const std::uint64_t mask = (std::uint64_t{1} << qpir.n) - 1;
  const std::uint64_t x = cfg.has_x ? parse_bits(cfg.x, qpir.n) : (Rng(resolve_seed(cfg)).bits() & mask);
  const ProtocolSpec pure = fully_purified(qpir.spec);
  const PureTranscript run = execute_pure(pure, qpir_input(qpir, x, cfg.index), execution(cfg));

  Json steps = Json::array();
  for (std::size_t i = 1; i <= 2 * pure.rounds; ++i) {
    const StateVector& st = run.step(i);
    steps.push_back({{"step", i},
                     {"party", (i % 2 == 1) ? "A" : "B"},
                     {"dim", st.dim()},
                     {"message_dim", message_dim_at_step(pure, i)},
                     {"norm", st.amplitudes().norm()},
                     {"schmidt_rank",
                      schmidt_decompose(st, a_side_after_step(pure, i).labels(), cfg.rank_tol).rank}});
  }
  Json client = Json::array();
  for (const auto& reg : qpir.spec.b_memory.back().registers()) {
    const DensityOperator marginal = partial_trace(run.final_state(), {reg.label});
    Eigen::Index best = 0;
    const RealVector diag = marginal.matrix().diagonal().real();
    diag.maxCoeff(&best);
    client.push_back({{"label", reg.label}, {"dim", reg.dim}, {"most_likely", best}, {"probability", diag(best)}});
  }
  Outcome o;
  o.report = header(qpir);
  o.report["rounds"] = qpir.spec.rounds;
  o.report["x"] = to_bits(x, qpir.n);
  o.report["index"] = cfg.index;
  o.report["steps"] = std::move(steps);
  o.report["client_registers"] = std::move(client);
  o.csv = [report = o.report] {
    std::vector<std::string> rows;
    for (const auto& s : report["steps"]) {
      rows.push_back(s["step"].dump() + "," + s["party"].get<std::string>() + "," + s["dim"].dump() + "," +
                     s["message_dim"].dump() + "," + s["schmidt_rank"].dump());
    }
    return table_csv("step,party,dim,message_dim,schmidt_rank", rows);
  };
  return o;
}

std::string to_text(const Json& report) {
  std::string out;
  for (auto it = report.begin(); it != report.end(); ++it) {
    if (it->is_object()) {
      for (auto jt = it->begin(); jt != it->end(); ++jt) {
        if (!jt->is_structured()) out += it.key() + "." + jt.key() + ": " + jt->dump() + "\n";
      }
    } else if (!it->is_array() || it->size() <= 16) {
      out += it.key() + ": " + it->dump() + "\n";
    }
  }
  return out;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--protocol", cfg.protocol, "builtin:<name>?n=..&delta=..&seed=.. or a protocol JSON file");
  sub->add_option_function<std::size_t>("--n", [&cfg](const std::size_t& v) { cfg.n = v; cfg.has_n = true; },
                                        "database size in bits");
  sub->add_option_function<double>("--delta", [&cfg](const double& v) { cfg.delta = v; cfg.has_delta = true; },
                                   "correctness error");
  sub->add_option("--epsilon", cfg.epsilon, "privacy error");
  sub->add_option_function<std::uint64_t>("--seed", [&cfg](const std::uint64_t& v) { cfg.seed = v; cfg.has_seed = true; },
                                          "RNG seed (fallback: QPIRLAB_SEED)");
  sub->add_option("--rank-tol", cfg.rank_tol, "Schmidt rank tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--dim-guard", cfg.dim_guard, "largest number of stored amplitudes or matrix entries")
      ->check(CLI::PositiveNumber);
  sub->add_option("--trials", cfg.trials, "number of random trials");
  sub->add_option("--out", cfg.out, "write the report to this file");
  sub->add_option("--format", cfg.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  sub->add_option_function<std::string>("--x", [&cfg](const std::string& v) { cfg.x = v; cfg.has_x = true; },
                                        "database bit string");
  sub->add_option("--index", cfg.index, "queried index, 1-based");
  sub->add_option("--adversary", cfg.adversary,
                  "purified-server, purified-client, honest-server, honest-client or an adversary JSON file");
  sub->add_flag("--basis-inputs", cfg.basis_inputs, "also compare server states on basis databases");
}

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args = raw_args;
  if (args.size() >= 2 && args[0] == "qpir") {
    args[1] = "qpir-" + args[1];
    args.erase(args.begin());
  }

  RunConfig cfg;
  CLI::App app{"Two-party quantum protocol laboratory: QPIR reductions and bound audits", "qpirlab"};
  app.require_subcommand(1);
  const std::vector<std::pair<std::string, std::string>> verbs = {
      {"run", "execute a protocol on one database and index"},
      {"bound", "evaluate the communication lower bound"},
      {"reduce", "build the random access encoding and audit the bound"},
      {"qpir-correctness", "measure the correctness error"},
      {"qpir-privacy", "measure privacy against a purified server"},
      {"attack", "superposition-database attack by a purified server"},
      {"certify", "certify speciousness of an adversary on the default input suite"},
      {"schmidt", "Schmidt ranks across the party cut, step by step"},
      {"fuzz", "Schmidt-rank and Fuchs-van de Graaf property suites"}};
  for (const auto& [name, help] : verbs) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub, cfg);
    sub->callback([&cfg, name = name] { cfg.verb = name; });
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    GuardScope guard(cfg.dim_guard);
    Outcome outcome;
    if (cfg.verb == "run") outcome = do_run(cfg);
    else if (cfg.verb == "bound") outcome = do_bound(cfg);
    else if (cfg.verb == "reduce") outcome = do_reduce(cfg);
    else if (cfg.verb == "qpir-correctness") outcome = do_correctness(cfg);
    else if (cfg.verb == "qpir-privacy") outcome = do_privacy(cfg);
    else if (cfg.verb == "attack") outcome = do_attack(cfg);
    else if (cfg.verb == "certify") outcome = do_certify(cfg);
    else if (cfg.verb == "schmidt") outcome = do_schmidt(cfg);
    else outcome = do_fuzz(cfg);

    outcome.report["command"] = cfg.verb;
    std::string text;
    if (cfg.format == "csv") text = outcome.csv();
    else if (cfg.format == "text") text = to_text(outcome.report);
    else text = dump(outcome.report);

    if (cfg.out.empty()) {
      out << text;
    } else {
      std::ofstream file(cfg.out, std::ios::binary);
      if (!file || !(file << text)) throw UsageError("cannot write '" + cfg.out + "'");
    }
    if (outcome.code == kExitVerdictFailure) err << "verdict failure in " << cfg.verb << "\n";
    return outcome.code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const ParseError& e) {
    err << "error: malformed input: " << e.what() << "\n";
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitInputError;
}

}  // namespace qpirlab::cli
