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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qpirlab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Labels naming a subset of registers. Order matters wherever an operation
/// documents that it does.
using LabelSet = std::vector<std::string>;

inline constexpr std::size_t kDefaultDimensionGuard = std::size_t{1} << 20;

/// Process-wide ceiling on the total dimension of any RegisterLayout.
std::size_t dimension_guard() noexcept;
void set_dimension_guard(std::size_t guard);

struct Register {
  std::string label;
  std::size_t dim = 1;

  friend bool operator==(const Register&, const Register&) = default;
};

/// Ordered tensor-product structure of a Hilbert space. The first register is
/// the most significant digit of a basis index.
class RegisterLayout {
 public:
  RegisterLayout() = default;
  explicit RegisterLayout(std::vector<Register> registers);
  RegisterLayout(std::initializer_list<Register> registers);

  const std::vector<Register>& registers() const noexcept { return registers_; }
  std::size_t size() const noexcept { return registers_.size(); }
  bool empty() const noexcept { return registers_.empty(); }
  std::size_t total_dim() const noexcept { return total_dim_; }

  bool contains(std::string_view label) const noexcept;
  /// Position of `label`; throws LayoutError when absent.
  std::size_t position(std::string_view label) const;
  std::size_t dim_of(std::string_view label) const;
  LabelSet labels() const;

  /// Registers named in `labels`, in the order given.
  RegisterLayout select(const LabelSet& labels) const;
  /// Registers not named in `labels`, in this layout's order.
  RegisterLayout without(const LabelSet& labels) const;
  /// Registers of `*this` followed by those of `other`; labels must be disjoint.
  RegisterLayout concat(const RegisterLayout& other) const;
  /// Same registers (label and dimension), in any order.
  bool same_registers(const RegisterLayout& other) const;

  std::string to_string() const;

  friend bool operator==(const RegisterLayout& a, const RegisterLayout& b) {
    return a.registers_ == b.registers_;
  }

 private:
  std::vector<Register> registers_;
  std::size_t total_dim_ = 1;
};

/// For each basis index of `to`, the matching basis index of `from`.
/// Both layouts must hold the same registers.
std::vector<std::size_t> permutation_map(const RegisterLayout& from, const RegisterLayout& to);

}  // namespace qpirlab
