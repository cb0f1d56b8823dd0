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

#include <cmath>
#include <string>

#include "qpirlab/layout.hpp"
#include "qpirlab/states.hpp"

namespace qpirlab::testing {

inline RegisterLayout qubits(std::initializer_list<const char*> labels) {
  std::vector<Register> regs;
  for (const char* l : labels) regs.push_back({l, 2});
  return RegisterLayout(std::move(regs));
}

inline StateVector ket(const RegisterLayout& layout, std::size_t index) { return StateVector::basis(layout, index); }

inline StateVector plus_state(const std::string& label) {
  Vector v(2);
  v << 1.0, 1.0;
  return StateVector::normalized(RegisterLayout{{label, 2}}, v);
}

inline StateVector bell_state(const std::string& a = "A", const std::string& b = "B") {
  Vector v = Vector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return StateVector(RegisterLayout{{a, 2}, {b, 2}}, v);
}

inline DensityOperator projector(const StateVector& s) { return DensityOperator::pure(s); }

}  // namespace qpirlab::testing
