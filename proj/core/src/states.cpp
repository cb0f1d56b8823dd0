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

#include "qpirlab/states.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "qpirlab/error.hpp"

namespace qpirlab {
namespace {

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

void require_dims(const Matrix& m, std::size_t rows, std::size_t cols, const char* what) {
  if (static_cast<std::size_t>(m.rows()) != rows || static_cast<std::size_t>(m.cols()) != cols) {
    throw LayoutError(std::string(what) + ": matrix is " + std::to_string(m.rows()) + "x" +
                      std::to_string(m.cols()) + ", layout requires " + std::to_string(rows) + "x" +
                      std::to_string(cols));
  }
}

// Rows of `columns` permuted so that `in` sits last (least significant),
// then `op` applied to that factor. See apply_to_columns.
Matrix apply_on_trailing(const Matrix& op, std::size_t in_dim, Matrix&& permuted) {
  const Eigen::Index rest = permuted.rows() / static_cast<Eigen::Index>(in_dim);
  const Eigen::Index ncols = permuted.cols();
  Eigen::Map<const Matrix> blocks(permuted.data(), static_cast<Eigen::Index>(in_dim), rest * ncols);
  Matrix out = op * blocks;
  return Eigen::Map<const Matrix>(out.data(), op.rows() * rest, ncols);
}

// Same as apply_on_trailing for an operator with one nonzero per column.
Matrix scatter_on_trailing(const std::vector<std::pair<Eigen::Index, Complex>>& entries, Eigen::Index out_dim,
                           const Matrix& permuted) {
  const auto in_dim = static_cast<Eigen::Index>(entries.size());
  const Eigen::Index rest = permuted.rows() / in_dim;
  Matrix out = Matrix::Zero(out_dim * rest, permuted.cols());
  for (Eigen::Index c = 0; c < permuted.cols(); ++c) {
    for (Eigen::Index r = 0; r < rest; ++r) {
      for (Eigen::Index j = 0; j < in_dim; ++j) {
        const auto& [row, value] = entries[static_cast<std::size_t>(j)];
        out(r * out_dim + row, c) = value * permuted(r * in_dim + j, c);
      }
    }
  }
  return out;
}

struct LocalFrame {
  RegisterLayout trailing;  // untouched registers followed by the input registers
  RegisterLayout result;    // untouched registers followed by the output registers
};

LocalFrame local_frame(const RegisterLayout& in, const RegisterLayout& out, const RegisterLayout& layout) {
  for (const auto& reg : in.registers()) {
    if (!layout.contains(reg.label) || layout.dim_of(reg.label) != reg.dim) {
      throw LayoutError("operator input register '" + reg.label + ":" + std::to_string(reg.dim) +
                        "' not present in " + layout.to_string());
    }
  }
  RegisterLayout rest = layout.without(in.labels());
  return {rest.concat(in), rest.concat(out)};
}

}  // namespace

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(RegisterLayout layout, Vector amplitudes)
    : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != layout_.total_dim()) {
    throw LayoutError("state has " + std::to_string(amplitudes_.size()) + " amplitudes, layout " +
                      layout_.to_string() + " requires " + std::to_string(layout_.total_dim()));
  }
  if (std::abs(amplitudes_.norm() - 1.0) > kStateTolerance) {
    throw NumericalError("state vector norm " + std::to_string(amplitudes_.norm()) + " differs from 1");
  }
}

StateVector StateVector::basis(RegisterLayout layout, std::size_t index) {
  if (index >= layout.total_dim()) throw DomainError("basis index out of range");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(layout.total_dim()));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(std::move(layout), std::move(v));
}

StateVector StateVector::normalized(RegisterLayout layout, Vector amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0)) throw NumericalError("cannot normalize a zero vector");
  amplitudes /= norm;
  return StateVector(std::move(layout), std::move(amplitudes));
}

StateVector StateVector::permuted(const RegisterLayout& target) const {
  if (target == layout_) return *this;
  const auto map = permutation_map(layout_, target);
  Vector v(amplitudes_.size());
  for (std::size_t q = 0; q < map.size(); ++q) v(static_cast<Eigen::Index>(q)) = amplitudes_(static_cast<Eigen::Index>(map[q]));
  return StateVector(target, std::move(v));
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  RegisterLayout layout = a.layout().concat(b.layout());
  Vector v(static_cast<Eigen::Index>(layout.total_dim()));
  const Eigen::Index nb = b.amplitudes().size();
  for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i) v.segment(i * nb, nb) = a.amplitudes()(i) * b.amplitudes();
  return StateVector::normalized(std::move(layout), std::move(v));
}

// ---------------------------------------------------------------------------
// DensityOperator

DensityOperator::DensityOperator(RegisterLayout layout, Matrix matrix)
    : DensityOperator(std::move(layout), std::move(matrix), true) {}

DensityOperator DensityOperator::from_trusted(RegisterLayout layout, Matrix matrix) {
  return DensityOperator(std::move(layout), std::move(matrix), false);
}

DensityOperator::DensityOperator(RegisterLayout layout, Matrix matrix, bool check_spectrum)
    : layout_(std::move(layout)), matrix_(std::move(matrix)) {
  require_dims(matrix_, layout_.total_dim(), layout_.total_dim(), "density operator");
  const Complex trace = matrix_.trace();
  if (check_spectrum) {
    if (max_abs(matrix_ - matrix_.adjoint()) > kStateTolerance) {
      throw NumericalError("density operator is not Hermitian");
    }
    if (std::abs(trace - 1.0) > kStateTolerance) {
      throw NumericalError("density operator trace " + std::to_string(trace.real()) + " differs from 1");
    }
    Matrix hermitian = 0.5 * (matrix_ + matrix_.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -kStateTolerance) {
      throw NumericalError("density operator has eigenvalue " + std::to_string(solver.eigenvalues().minCoeff()));
    }
    matrix_ = std::move(hermitian);
  } else {
    if (std::abs(trace - 1.0) > kChannelTolerance) {
      throw NumericalError("density operator trace " + std::to_string(trace.real()) + " differs from 1");
    }
    matrix_ = 0.5 * (matrix_ + matrix_.adjoint()).eval();
  }
}

DensityOperator DensityOperator::pure(const StateVector& state) {
  const Vector& v = state.amplitudes();
  return from_trusted(state.layout(), v * v.adjoint());
}

DensityOperator DensityOperator::maximally_mixed(RegisterLayout layout) {
  const auto d = static_cast<Eigen::Index>(layout.total_dim());
  Matrix m = Matrix::Identity(d, d) / static_cast<double>(d);
  return from_trusted(std::move(layout), std::move(m));
}

DensityOperator DensityOperator::permuted(const RegisterLayout& target) const {
  if (target == layout_) return *this;
  const auto map = permutation_map(layout_, target);
  const auto n = static_cast<Eigen::Index>(map.size());
  Matrix m(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    const auto sc = static_cast<Eigen::Index>(map[static_cast<std::size_t>(c)]);
    for (Eigen::Index r = 0; r < n; ++r) m(r, c) = matrix_(static_cast<Eigen::Index>(map[static_cast<std::size_t>(r)]), sc);
  }
  return from_trusted(target, std::move(m));
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  return DensityOperator::from_trusted(a.layout().concat(b.layout()), kron(a.matrix(), b.matrix()));
}

// ---------------------------------------------------------------------------
// Isometry and KrausChannel

Isometry::Isometry(RegisterLayout input_layout, RegisterLayout output_layout, Matrix matrix)
    : input_(std::move(input_layout)), output_(std::move(output_layout)), matrix_(std::move(matrix)) {
  require_dims(matrix_, output_.total_dim(), input_.total_dim(), "isometry");
  if (output_.total_dim() < input_.total_dim()) {
    throw LayoutError("isometry output " + output_.to_string() + " smaller than input " + input_.to_string());
  }
  const auto n = matrix_.cols();
  std::vector<std::pair<Eigen::Index, Complex>> entries;
  entries.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index row = -1;
    for (Eigen::Index r = 0; r < matrix_.rows(); ++r) {
      if (matrix_(r, c) == Complex(0.0, 0.0)) continue;
      if (row >= 0) {
        row = -2;
        break;
      }
      row = r;
    }
    if (row < 0) break;
    entries.emplace_back(row, matrix_(row, c));
  }
  if (static_cast<Eigen::Index>(entries.size()) == n) {
    std::vector<bool> used(static_cast<std::size_t>(matrix_.rows()), false);
    for (const auto& [row, value] : entries) {
      if (std::abs(std::abs(value) - 1.0) > kStateTolerance || used[static_cast<std::size_t>(row)]) {
        throw NumericalError("matrix columns are not orthonormal");
      }
      used[static_cast<std::size_t>(row)] = true;
    }
    monomial_ = std::move(entries);
    return;
  }
  if (max_abs(matrix_.adjoint() * matrix_ - Matrix::Identity(n, n)) > kStateTolerance) {
    throw NumericalError("matrix columns are not orthonormal");
  }
}

Isometry Isometry::relabel(RegisterLayout input, RegisterLayout output) {
  if (input.total_dim() != output.total_dim()) {
    throw LayoutError("relabel between " + input.to_string() + " and " + output.to_string() +
                      " changes dimension");
  }
  const auto d = static_cast<Eigen::Index>(input.total_dim());
  return Isometry(std::move(input), std::move(output), Matrix::Identity(d, d));
}

Isometry Isometry::identity(RegisterLayout layout) { return relabel(layout, layout); }

KrausChannel::KrausChannel(RegisterLayout input_layout, RegisterLayout output_layout, std::vector<Matrix> kraus_ops)
    : input_(std::move(input_layout)), output_(std::move(output_layout)), kraus_(std::move(kraus_ops)) {
  if (kraus_.empty()) throw DomainError("channel needs at least one Kraus operator");
  const auto n = static_cast<Eigen::Index>(input_.total_dim());
  Matrix sum = Matrix::Zero(n, n);
  for (const auto& k : kraus_) {
    require_dims(k, output_.total_dim(), input_.total_dim(), "Kraus operator");
    sum.noalias() += k.adjoint() * k;
  }
  if (max_abs(sum - Matrix::Identity(n, n)) > kChannelTolerance) {
    throw NumericalError("Kraus operators are not trace preserving");
  }
}

KrausChannel KrausChannel::identity(RegisterLayout layout) {
  const auto d = static_cast<Eigen::Index>(layout.total_dim());
  return KrausChannel(layout, layout, {Matrix::Identity(d, d)});
}

KrausChannel KrausChannel::from_isometry(const Isometry& isometry) {
  return KrausChannel(isometry.input_layout(), isometry.output_layout(), {isometry.matrix()});
}

KrausChannel KrausChannel::partial_trace(RegisterLayout input, const LabelSet& keep) {
  RegisterLayout kept = input.select(keep);
  RegisterLayout traced = input.without(keep);
  const auto map = permutation_map(input, kept.concat(traced));
  const std::size_t dk = kept.total_dim();
  const std::size_t dt = traced.total_dim();
  std::vector<Matrix> kraus;
  kraus.reserve(dt);
  for (std::size_t t = 0; t < dt; ++t) {
    Matrix k = Matrix::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(input.total_dim()));
    for (std::size_t a = 0; a < dk; ++a) k(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(map[a * dt + t])) = 1.0;
    kraus.push_back(std::move(k));
  }
  return KrausChannel(std::move(input), std::move(kept), std::move(kraus));
}

const RegisterLayout& input_layout(const Operation& op) {
  return std::visit([](const auto& o) -> const RegisterLayout& { return o.input_layout(); }, op);
}

const RegisterLayout& output_layout(const Operation& op) {
  return std::visit([](const auto& o) -> const RegisterLayout& { return o.output_layout(); }, op);
}

std::vector<Matrix> kraus_ops(const Operation& op) {
  if (const auto* iso = std::get_if<Isometry>(&op)) return {iso->matrix()};
  return std::get<KrausChannel>(op).kraus_ops();
}

Isometry as_isometry(const Operation& op) {
  if (const auto* iso = std::get_if<Isometry>(&op)) return *iso;
  const auto& ch = std::get<KrausChannel>(op);
  if (ch.kraus_ops().size() != 1) {
    throw NumericalError("channel with " + std::to_string(ch.kraus_ops().size()) +
                         " Kraus operators is not an isometry");
  }
  return Isometry(ch.input_layout(), ch.output_layout(), ch.kraus_ops().front());
}

// ---------------------------------------------------------------------------
// Local application

Matrix permute_rows(const Matrix& m, const RegisterLayout& from, const RegisterLayout& to) {
  require_dims(m, from.total_dim(), static_cast<std::size_t>(m.cols()), "permute_rows");
  if (from == to) return m;
  const auto map = permutation_map(from, to);
  Matrix out(m.rows(), m.cols());
  for (std::size_t q = 0; q < map.size(); ++q) out.row(static_cast<Eigen::Index>(q)) = m.row(static_cast<Eigen::Index>(map[q]));
  return out;
}

Matrix permute_cols(const Matrix& m, const RegisterLayout& from, const RegisterLayout& to) {
  require_dims(m, static_cast<std::size_t>(m.rows()), from.total_dim(), "permute_cols");
  if (from == to) return m;
  const auto map = permutation_map(from, to);
  Matrix out(m.rows(), m.cols());
  for (std::size_t q = 0; q < map.size(); ++q) out.col(static_cast<Eigen::Index>(q)) = m.col(static_cast<Eigen::Index>(map[q]));
  return out;
}

Matrix apply_to_columns(const Matrix& op, const RegisterLayout& in, const RegisterLayout& out,
                        const RegisterLayout& layout, const Matrix& columns) {
  require_dims(op, out.total_dim(), in.total_dim(), "operator");
  const LocalFrame frame = local_frame(in, out, layout);
  return apply_on_trailing(op, in.total_dim(), permute_rows(columns, layout, frame.trailing));
}

StateVector apply(const Isometry& op, const StateVector& state) {
  const LocalFrame frame = local_frame(op.input_layout(), op.output_layout(), state.layout());
  Matrix column = permute_rows(state.amplitudes(), state.layout(), frame.trailing);
  Matrix result = op.monomial().empty()
                      ? apply_on_trailing(op.matrix(), op.input_layout().total_dim(), std::move(column))
                      : scatter_on_trailing(op.monomial(), op.matrix().rows(), column);
  return StateVector::normalized(frame.result, result.col(0));
}

namespace {

DensityOperator apply_kraus(const std::vector<Matrix>& kraus, const RegisterLayout& in, const RegisterLayout& out,
                            const DensityOperator& state) {
  const LocalFrame frame = local_frame(in, out, state.layout());
  const Matrix rho = state.permuted(frame.trailing).matrix();
  const auto n = static_cast<Eigen::Index>(frame.result.total_dim());
  Matrix result = Matrix::Zero(n, n);
  for (const auto& k : kraus) {
    Matrix left = apply_on_trailing(k, in.total_dim(), Matrix(rho));
    // rho is Hermitian, so (I(x)K) left^dagger = (I(x)K) rho (I(x)K)^dagger.
    result += apply_on_trailing(k, in.total_dim(), left.adjoint());
  }
  return DensityOperator::from_trusted(frame.result, std::move(result));
}

}  // namespace

DensityOperator apply(const Isometry& op, const DensityOperator& state) {
  return apply_kraus({op.matrix()}, op.input_layout(), op.output_layout(), state);
}

DensityOperator apply(const KrausChannel& op, const DensityOperator& state) {
  return apply_kraus(op.kraus_ops(), op.input_layout(), op.output_layout(), state);
}

DensityOperator apply(const Operation& op, const DensityOperator& state) {
  return std::visit([&](const auto& o) { return apply(o, state); }, op);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

}  // namespace qpirlab
