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

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "qpirlab/layout.hpp"
#include "qpirlab/protocol.hpp"
#include "qpirlab/states.hpp"

namespace qpirlab {

using Json = nlohmann::json;

// Complex entries are [re, im] pairs. Reals are written in shortest
// round-trip decimal; readers also accept hexadecimal floating-point strings
// such as "0x1.8p+1".
Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j, const std::string& path = "");

Json to_json(const RegisterLayout& layout);
Json to_json(const Matrix& matrix);
Json to_json(const StateVector& state);
Json to_json(const DensityOperator& state);
Json to_json(const Operation& op);
Json to_json(const ProtocolSpec& spec);

RegisterLayout layout_from_json(const Json& j, const std::string& path = "");
Matrix matrix_from_json(const Json& j, const std::string& path = "");
StateVector state_from_json(const Json& j, const std::string& path = "");
DensityOperator density_from_json(const Json& j, const std::string& path = "");

/// Reads an operation. Layouts absent from `j` fall back to the given ones.
Operation operation_from_json(const Json& j, const std::string& path = "",
                              const RegisterLayout* default_input = nullptr,
                              const RegisterLayout* default_output = nullptr);
ProtocolSpec protocol_from_json(const Json& j);

/// Parses text, reporting syntax errors with line and column.
Json parse_json_text(std::string_view text);
ProtocolSpec load_protocol_file(const std::string& path);

/// Canonical text form: two-space indentation, trailing newline.
std::string dump(const Json& j);

}  // namespace qpirlab
