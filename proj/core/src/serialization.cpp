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

#include "qpirlab/serialization.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qpirlab/error.hpp"

namespace qpirlab {

namespace {

std::string at(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string at(const std::string& path, std::size_t index) { return path + "/" + std::to_string(index); }

const Json& member(const Json& j, const std::string& path, const char* key) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(at(path, key), "missing field");
  return *it;
}

const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected an array");
  return j;
}

double real_from_json(const Json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0' || errno == ERANGE) throw ParseError(path, "bad number '" + s + "'");
    return v;
  }
  throw ParseError(path, "expected a number");
}

std::size_t size_from_json(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw ParseError(path, "expected a non-negative integer");
  return j.get<std::size_t>();
}

template <typename F>
auto wrap(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const ShapeError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(path, e.what());
  }
}

std::vector<RegisterLayout> layouts_from_json(const Json& j, const std::string& path) {
  std::vector<RegisterLayout> out;
  const Json& arr = array(j, path);
  for (std::size_t k = 0; k < arr.size(); ++k) out.push_back(layout_from_json(arr[k], at(path, k)));
  return out;
}

Json layouts_to_json(const std::vector<RegisterLayout>& layouts) {
  Json out = Json::array();
  for (const auto& l : layouts) out.push_back(to_json(l));
  return out;
}

}  // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw ParseError(path, "expected [re, im]");
  return {real_from_json(j[0], at(path, 0)), real_from_json(j[1], at(path, 1))};
}

Json to_json(const RegisterLayout& layout) {
  Json out = Json::array();
  for (const auto& r : layout.registers()) out.push_back({{"label", r.label}, {"dim", r.dim}});
  return out;
}

Json to_json(const Matrix& matrix) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < matrix.cols(); ++c) row.push_back(complex_to_json(matrix(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const StateVector& state) {
  Json amps = Json::array();
  for (Eigen::Index k = 0; k < state.amplitudes().size(); ++k) amps.push_back(complex_to_json(state.amplitudes()(k)));
  return {{"layout", to_json(state.layout())}, {"amplitudes", std::move(amps)}};
}

Json to_json(const DensityOperator& state) {
  return {{"layout", to_json(state.layout())}, {"matrix", to_json(state.matrix())}};
}

Json to_json(const Operation& op) {
  if (const auto* iso = std::get_if<Isometry>(&op)) {
    return {{"type", "isometry"},
            {"input_layout", to_json(iso->input_layout())},
            {"output_layout", to_json(iso->output_layout())},
            {"matrix", to_json(iso->matrix())}};
  }
  const auto& ch = std::get<KrausChannel>(op);
  Json kraus = Json::array();
  for (const auto& k : ch.kraus_ops()) kraus.push_back(to_json(k));
  return {{"type", "kraus"},
          {"input_layout", to_json(ch.input_layout())},
          {"output_layout", to_json(ch.output_layout())},
          {"kraus", std::move(kraus)}};
}

Json to_json(const ProtocolSpec& spec) {
  Json a_ops = Json::array(), b_ops = Json::array();
  for (const auto& op : spec.a_ops) a_ops.push_back(to_json(op));
  for (const auto& op : spec.b_ops) b_ops.push_back(to_json(op));
  Json out = {{"s", spec.rounds},
              {"layouts",
               {{"A", layouts_to_json(spec.a_memory)},
                {"B", layouts_to_json(spec.b_memory)},
                {"X", layouts_to_json(spec.x_messages)},
                {"Y", layouts_to_json(spec.y_messages)}}},
              {"ops", {{"A", std::move(a_ops)}, {"B", std::move(b_ops)}}}};
  if (!spec.a_purifiers.empty() || !spec.b_purifiers.empty()) {
    out["purifiers"] = {{"A", spec.a_purifiers}, {"B", spec.b_purifiers}};
  }
  return out;
}

RegisterLayout layout_from_json(const Json& j, const std::string& path) {
  std::vector<Register> regs;
  const Json& arr = array(j, path);
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const std::string p = at(path, k);
    const Json& label = member(arr[k], p, "label");
    if (!label.is_string()) throw ParseError(at(p, "label"), "expected a string");
    regs.push_back({label.get<std::string>(), size_from_json(member(arr[k], p, "dim"), at(p, "dim"))});
  }
  return wrap(path, [&] { return RegisterLayout(std::move(regs)); });
}

Matrix matrix_from_json(const Json& j, const std::string& path) {
  const Json& rows = array(j, path);
  if (rows.empty()) throw ParseError(path, "empty matrix");
  const std::size_t cols = array(rows[0], at(path, 0)).size();
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Json& row = array(rows[r], at(path, r));
    if (row.size() != cols) throw ParseError(at(path, r), "ragged matrix row");
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = complex_from_json(row[c], at(at(path, r), c));
    }
  }
  return m;
}

StateVector state_from_json(const Json& j, const std::string& path) {
  RegisterLayout layout = layout_from_json(member(j, path, "layout"), at(path, "layout"));
  const std::string ap = at(path, "amplitudes");
  const Json& amps = array(member(j, path, "amplitudes"), ap);
  if (amps.size() != layout.total_dim()) throw ParseError(ap, "length does not match layout dimension");
  Vector v(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t k = 0; k < amps.size(); ++k) v(static_cast<Eigen::Index>(k)) = complex_from_json(amps[k], at(ap, k));
  return wrap(path, [&] { return StateVector(std::move(layout), std::move(v)); });
}

DensityOperator density_from_json(const Json& j, const std::string& path) {
  RegisterLayout layout = layout_from_json(member(j, path, "layout"), at(path, "layout"));
  Matrix m = matrix_from_json(member(j, path, "matrix"), at(path, "matrix"));
  return wrap(path, [&] { return DensityOperator(std::move(layout), std::move(m)); });
}

Operation operation_from_json(const Json& j, const std::string& path, const RegisterLayout* default_input,
                              const RegisterLayout* default_output) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  auto read_layout = [&](const char* key, const RegisterLayout* fallback) {
    if (j.contains(key)) return layout_from_json(j[key], at(path, key));
    if (fallback == nullptr) throw ParseError(at(path, key), "missing field");
    return *fallback;
  };
  RegisterLayout in = read_layout("input_layout", default_input);
  RegisterLayout out = read_layout("output_layout", default_output);
  const Json& type = member(j, path, "type");
  if (type == "isometry" || type == "unitary") {
    Matrix m = matrix_from_json(member(j, path, "matrix"), at(path, "matrix"));
    return wrap(path, [&] { return Operation(Isometry(std::move(in), std::move(out), std::move(m))); });
  }
  if (type == "kraus") {
    const std::string kp = at(path, "kraus");
    const Json& arr = array(member(j, path, "kraus"), kp);
    std::vector<Matrix> ops;
    for (std::size_t k = 0; k < arr.size(); ++k) ops.push_back(matrix_from_json(arr[k], at(kp, k)));
    return wrap(path, [&] { return Operation(KrausChannel(std::move(in), std::move(out), std::move(ops))); });
  }
  throw ParseError(at(path, "type"), "unknown operation type " + type.dump());
}

ProtocolSpec protocol_from_json(const Json& j) {
  ProtocolSpec spec;
  spec.rounds = size_from_json(member(j, "", "s"), "/s");
  if (spec.rounds == 0) throw ParseError("/s", "a protocol needs at least one round");
  const Json& layouts = member(j, "", "layouts");
  spec.a_memory = layouts_from_json(member(layouts, "/layouts", "A"), "/layouts/A");
  spec.b_memory = layouts_from_json(member(layouts, "/layouts", "B"), "/layouts/B");
  spec.x_messages = layouts_from_json(member(layouts, "/layouts", "X"), "/layouts/X");
  spec.y_messages = layouts.contains("Y") ? layouts_from_json(layouts["Y"], "/layouts/Y") : std::vector<RegisterLayout>{};
  auto expect_count = [](const std::vector<RegisterLayout>& v, std::size_t n, const char* p) {
    if (v.size() != n) throw ParseError(p, "expected " + std::to_string(n) + " entries, got " + std::to_string(v.size()));
  };
  expect_count(spec.a_memory, spec.rounds + 1, "/layouts/A");
  expect_count(spec.b_memory, spec.rounds + 1, "/layouts/B");
  expect_count(spec.x_messages, spec.rounds, "/layouts/X");
  expect_count(spec.y_messages, spec.rounds - 1, "/layouts/Y");

  const Json& ops = member(j, "", "ops");
  for (Party p : {Party::A, Party::B}) {
    const std::string pp = std::string("/ops/") + to_string(p);
    const Json& arr = array(member(ops, "/ops", to_string(p)), pp);
    if (arr.size() != spec.rounds) throw ParseError(pp, "expected " + std::to_string(spec.rounds) + " operations");
    auto& target = p == Party::A ? spec.a_ops : spec.b_ops;
    for (std::size_t k = 0; k < arr.size(); ++k) {
      const RegisterLayout in = spec.op_input(p, k + 1);
      const RegisterLayout out = spec.op_output(p, k + 1);
      target.push_back(operation_from_json(arr[k], at(pp, k), &in, &out));
    }
  }
  if (j.contains("purifiers")) {
    const Json& pur = j["purifiers"];
    try {
      if (pur.contains("A")) spec.a_purifiers = pur["A"].get<LabelSet>();
      if (pur.contains("B")) spec.b_purifiers = pur["B"].get<LabelSet>();
    } catch (const nlohmann::json::exception&) {
      throw ParseError("/purifiers", "expected lists of labels");
    }
  }
  spec.validate();
  return spec;
}

Json parse_json_text(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t k = 0; k < stop; ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError("", "syntax error at line " + std::to_string(line) + ", column " + std::to_string(column));
  }
}

ProtocolSpec load_protocol_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("", "cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return protocol_from_json(parse_json_text(buffer.str()));
  } catch (const ParseError& e) {
    throw ParseError(e.path(), path + ": " + (e.path().empty() ? std::string(e.what()) : std::string(e.what()).substr(e.path().size() + 2)));
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace qpirlab
