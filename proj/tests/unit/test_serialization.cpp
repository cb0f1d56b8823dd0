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


#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "qpirlab/error.hpp"
#include "qpirlab/protocol.hpp"
#include "qpirlab/qpir.hpp"
#include "qpirlab/random.hpp"
#include "qpirlab/serialization.hpp"

namespace qpirlab {
namespace {

// One-round protocol moving a qubit from A0 to B1 through X1.
Json move_qubit_json() {
  return parse_json_text(R"({
    "s": 1,
    "layouts": {
      "A": [[{"label": "a0", "dim": 2}], []],
      "B": [[], [{"label": "b1", "dim": 2}]],
      "X": [[{"label": "x1", "dim": 2}]]
    },
    "ops": {
      "A": [{"type": "unitary", "matrix": [[1, 0], [0, 1]]}],
      "B": [{"type": "isometry", "matrix": [[1, 0], [0, 1]]}]
    }
  })");
}

std::string error_path(const Json& j) {
  try {
    protocol_from_json(j);
  } catch (const ParseError& e) {
    return e.path();
  }
  return "<no error>";
}

TEST(Complex, ParsesPairsNumbersAndHexStrings) {
  EXPECT_EQ(complex_from_json(Json::array({1.5, -2.0})), Complex(1.5, -2.0));
  EXPECT_EQ(complex_from_json(Json(0.25)), Complex(0.25, 0.0));
  EXPECT_EQ(complex_from_json(Json::array({"0x1.8p+0", "-0x1p-1"})), Complex(1.5, -0.5));
  EXPECT_THROW(complex_from_json(Json::array({"abc", 0})), ParseError);
  EXPECT_THROW(complex_from_json(Json("x")), ParseError);
}

TEST(Serialization, LayoutAndMatrixRoundTrip) {
  const RegisterLayout l{{"a", 2}, {"b", 3}};
  EXPECT_EQ(layout_from_json(to_json(l)), l);
  Rng rng(1);
  const Matrix m = ginibre_matrix(3, 2, rng);
  EXPECT_EQ(matrix_from_json(to_json(m)), m);
}

TEST(Serialization, StatesRoundTrip) {
  Rng rng(2);
  const StateVector s = random_state(RegisterLayout{{"a", 2}, {"b", 2}}, rng);
  const StateVector t = state_from_json(to_json(s));
  EXPECT_EQ(t.layout(), s.layout());
  EXPECT_EQ(t.amplitudes(), s.amplitudes());
  const DensityOperator rho = random_density(RegisterLayout{{"a", 3}}, rng);
  EXPECT_LT((density_from_json(to_json(rho)).matrix() - rho.matrix()).norm(), 1e-15);
}

TEST(Serialization, ProtocolRoundTripIsExact) {
  const ProtocolSpec spec = random_protocol(5, 2, 3);
  const Json j = to_json(spec);
  const ProtocolSpec back = protocol_from_json(parse_json_text(dump(j)));
  EXPECT_EQ(dump(to_json(back)), dump(j));
}

TEST(Serialization, PurifiedProtocolKeepsPurifierLabels) {
  const ProtocolSpec spec = purify_party(noisy_trivial_qpir(2, 0.1).spec, Party::A);
  const ProtocolSpec back = protocol_from_json(to_json(spec));
  EXPECT_EQ(back.a_purifiers, spec.a_purifiers);
  EXPECT_FALSE(back.a_purifiers.empty());
}

TEST(Serialization, OperationLayoutsDefaultFromProtocol) {
  const ProtocolSpec spec = protocol_from_json(move_qubit_json());
  EXPECT_EQ(input_layout(spec.a_ops[0]), (RegisterLayout{{"a0", 2}}));
  EXPECT_EQ(output_layout(spec.b_ops[0]), (RegisterLayout{{"b1", 2}}));
}

TEST(Serialization, ErrorsCarryFieldPaths) {
  Json j = move_qubit_json();
  j["layouts"].erase("A");
  EXPECT_EQ(error_path(j), "/layouts/A");

  j = move_qubit_json();
  j["layouts"]["A"].push_back(Json::array());
  EXPECT_EQ(error_path(j), "/layouts/A");

  j = move_qubit_json();
  j["ops"]["A"][0]["type"] = "teleport";
  EXPECT_EQ(error_path(j), "/ops/A/0/type");

  j = move_qubit_json();
  j["ops"]["B"][0]["matrix"] = Json::array({Json::array({1, 1}), Json::array({0, 1})});
  EXPECT_EQ(error_path(j).rfind("/ops/B/0", 0), 0u);

  j = move_qubit_json();
  j["s"] = 0;
  EXPECT_EQ(error_path(j), "/s");
}

TEST(Serialization, SyntaxErrorsReportLineAndColumn) {
  try {
    parse_json_text("{\n  \"s\": 1,\n  oops\n}");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(Serialization, LoadProtocolFileNamesTheFile) {
  const std::string path = ::testing::TempDir() + "qpirlab_bad_protocol.json";
  {
    std::ofstream out(path);
    out << "{\"s\": 1}";
  }
  try {
    load_protocol_file(path);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find(path), std::string::npos);
    EXPECT_EQ(e.path(), "/layouts");
  }
  std::remove(path.c_str());
  EXPECT_THROW(load_protocol_file(path), ParseError);
}

TEST(Serialization, DumpIsDeterministic) {
  const Json a = to_json(trivial_qpir(2).spec);
  const Json b = to_json(trivial_qpir(2).spec);
  EXPECT_EQ(dump(a), dump(b));
  EXPECT_EQ(dump(a).back(), '\n');
}

}  // namespace
}  // namespace qpirlab
