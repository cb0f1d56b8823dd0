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

#include <utility>
#include <variant>
#include <vector>

#include "qpirlab/layout.hpp"

namespace qpirlab {

inline constexpr double kStateTolerance = 1e-9;
inline constexpr double kChannelTolerance = 1e-8;

/// Normalized pure state over a register layout.
class StateVector {
 public:
  StateVector(RegisterLayout layout, Vector amplitudes);

  static StateVector basis(RegisterLayout layout, std::size_t index);
  /// Rescales `amplitudes` to unit norm; throws on a zero vector.
  static StateVector normalized(RegisterLayout layout, Vector amplitudes);

  const RegisterLayout& layout() const noexcept { return layout_; }
  const Vector& amplitudes() const noexcept { return amplitudes_; }
  std::size_t dim() const noexcept { return layout_.total_dim(); }

  /// Same state with registers rearranged into `target`'s order.
  StateVector permuted(const RegisterLayout& target) const;

 private:
  RegisterLayout layout_;
  Vector amplitudes_;
};

StateVector tensor(const StateVector& a, const StateVector& b);

/// Mixed state: Hermitian, positive semidefinite, unit trace.
class DensityOperator {
 public:
  /// Full validation: Hermitian, trace one and eigenvalues >= -1e-9.
  DensityOperator(RegisterLayout layout, Matrix matrix);

  static DensityOperator pure(const StateVector& state);
  static DensityOperator maximally_mixed(RegisterLayout layout);
  /// Skips the eigenvalue check. For operators produced by trace-preserving
  /// maps from valid states; the matrix is still Hermitized.
  static DensityOperator from_trusted(RegisterLayout layout, Matrix matrix);

  const RegisterLayout& layout() const noexcept { return layout_; }
  const Matrix& matrix() const noexcept { return matrix_; }
  std::size_t dim() const noexcept { return layout_.total_dim(); }

  DensityOperator permuted(const RegisterLayout& target) const;

 private:
  DensityOperator(RegisterLayout layout, Matrix matrix, bool check_spectrum);

  RegisterLayout layout_;
  Matrix matrix_;
};

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);

/// Linear map with orthonormal columns from `input_layout` to `output_layout`.
class Isometry {
 public:
  Isometry(RegisterLayout input_layout, RegisterLayout output_layout, Matrix matrix);

  /// Identity map that renames `input` into `output` (equal total dimension).
  static Isometry relabel(RegisterLayout input, RegisterLayout output);
  static Isometry identity(RegisterLayout layout);

  const RegisterLayout& input_layout() const noexcept { return input_; }
  const RegisterLayout& output_layout() const noexcept { return output_; }
  const Matrix& matrix() const noexcept { return matrix_; }
  bool is_unitary() const noexcept { return matrix_.rows() == matrix_.cols(); }

  /// Row and value of the single nonzero entry of each column, when the
  /// matrix has that form (permutations, copies, relabelings); else empty.
  const std::vector<std::pair<Eigen::Index, Complex>>& monomial() const noexcept { return monomial_; }

 private:
  RegisterLayout input_;
  RegisterLayout output_;
  Matrix matrix_;
  std::vector<std::pair<Eigen::Index, Complex>> monomial_;
};

/// Trace-preserving completely positive map in Kraus form.
class KrausChannel {
 public:
  KrausChannel(RegisterLayout input_layout, RegisterLayout output_layout,
               std::vector<Matrix> kraus_ops);

  static KrausChannel identity(RegisterLayout layout);
  static KrausChannel from_isometry(const Isometry& isometry);
  /// Discards every register of `input` not listed in `keep`.
  static KrausChannel partial_trace(RegisterLayout input, const LabelSet& keep);

  const RegisterLayout& input_layout() const noexcept { return input_; }
  const RegisterLayout& output_layout() const noexcept { return output_; }
  const std::vector<Matrix>& kraus_ops() const noexcept { return kraus_; }

 private:
  RegisterLayout input_;
  RegisterLayout output_;
  std::vector<Matrix> kraus_;
};

/// A protocol step: general channel, or isometry for purified parties.
using Operation = std::variant<KrausChannel, Isometry>;

const RegisterLayout& input_layout(const Operation& op);
const RegisterLayout& output_layout(const Operation& op);
std::vector<Matrix> kraus_ops(const Operation& op);
/// Isometry view of `op`: the isometry itself, or a single-Kraus channel.
/// Throws NumericalError for channels with several Kraus operators.
Isometry as_isometry(const Operation& op);

// Applying operators to a subset of registers. The operator acts on the
// registers named by its input layout (which must all be present) and as the
// identity elsewhere. The result layout is the untouched registers, in their
// original order, followed by the operator's output registers.

StateVector apply(const Isometry& op, const StateVector& state);
DensityOperator apply(const Isometry& op, const DensityOperator& state);
DensityOperator apply(const KrausChannel& op, const DensityOperator& state);
DensityOperator apply(const Operation& op, const DensityOperator& state);

/// Applies `op` (rows: `out`, columns: `in`) to each column of `columns`,
/// whose rows are indexed by `layout`. The result rows are indexed by
/// `layout.without(in).concat(out)`.
Matrix apply_to_columns(const Matrix& op, const RegisterLayout& in, const RegisterLayout& out,
                        const RegisterLayout& layout, const Matrix& columns);

/// Reorders row (resp. column) indices of `m` from layout `from` to `to`.
Matrix permute_rows(const Matrix& m, const RegisterLayout& from, const RegisterLayout& to);
Matrix permute_cols(const Matrix& m, const RegisterLayout& from, const RegisterLayout& to);

/// Kronecker product, `a` on the more significant factor.
Matrix kron(const Matrix& a, const Matrix& b);

}  // namespace qpirlab
