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

#include "qpirlab/quantum_info.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "qpirlab/error.hpp"
#include "qpirlab/random.hpp"

namespace qpirlab {
namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

Eigen::SelfAdjointEigenSolver<Matrix> hermitian_eigen(const Matrix& m, int options = Eigen::ComputeEigenvectors) {
  return Eigen::SelfAdjointEigenSolver<Matrix>(0.5 * (m + m.adjoint()), options);
}

// Registers of `layout` named in `labels`, in layout order.
RegisterLayout ordered_subset(const RegisterLayout& layout, const LabelSet& labels) {
  for (const auto& label : labels) layout.position(label);
  LabelSet ordered;
  for (const auto& reg : layout.registers()) {
    if (std::find(labels.begin(), labels.end(), reg.label) != labels.end()) ordered.push_back(reg.label);
  }
  return layout.select(ordered);
}

void require_proper_cut(const RegisterLayout& layout, const LabelSet& cut) {
  if (cut.empty()) throw DomainError("cut must name at least one register");
  const RegisterLayout sub = ordered_subset(layout, cut);
  if (sub.size() != cut.size()) throw DomainError("cut names a register twice");
  if (sub.size() == layout.size()) throw DomainError("cut must leave at least one register outside");
}

// Inverse of matricize: rows indexed by `rows`, columns by `cols`.
Vector flatten(const Matrix& x) {
  Matrix t = x.transpose();
  return Eigen::Map<const Vector>(t.data(), t.size());
}

}  // namespace

double trace_norm(const Matrix& m) {
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues().sum();
}

Matrix psd_sqrt(const Matrix& hermitian) {
  auto solver = hermitian_eigen(hermitian);
  RealVector ev = solver.eigenvalues();
  if (ev.size() > 0 && ev.minCoeff() < -kNegativeEigenvalueTolerance) {
    throw NumericalError("operator is not positive semidefinite (eigenvalue " + std::to_string(ev.minCoeff()) + ")");
  }
  ev = ev.cwiseMax(0.0).cwiseSqrt();
  return solver.eigenvectors() * ev.asDiagonal() * solver.eigenvectors().adjoint();
}

namespace {

// Trace norm of a Hermitian matrix through a sampled range; empty when the
// sampled basis does not capture the matrix to within the residual tolerance.
std::optional<double> low_rank_trace_norm(const Matrix& h) {
  const Eigen::Index dim = h.rows();
  const double scale = std::max(1.0, h.norm());
  Rng rng(0x5eedf00dULL);
  for (Eigen::Index k = 8; 4 * k <= dim; k *= 2) {
    const Matrix y = h * ginibre_matrix(static_cast<std::size_t>(dim), static_cast<std::size_t>(k), rng);
    Eigen::HouseholderQR<Matrix> qr(y);
    const Matrix q = qr.householderQ() * Matrix::Identity(dim, k);
    const Matrix qh = q.adjoint() * h;
    if ((h - q * qh).norm() > 1e-13 * scale) continue;
    Matrix core = qh * q;
    core = 0.5 * (core + core.adjoint()).eval();
    return hermitian_eigen(core, Eigen::EigenvaluesOnly).eigenvalues().cwiseAbs().sum();
  }
  return std::nullopt;
}

}  // namespace

double trace_distance(const DensityOperator& rho, const DensityOperator& sigma) {
  const Matrix diff = rho.matrix() - sigma.permuted(rho.layout()).matrix();
  if (diff.rows() >= 64) {
    if (const auto norm = low_rank_trace_norm(diff)) return clamp01(0.5 * *norm);
  }
  auto solver = hermitian_eigen(diff, Eigen::EigenvaluesOnly);
  return clamp01(0.5 * solver.eigenvalues().cwiseAbs().sum());
}

double trace_distance(const StateVector& phi, const StateVector& psi) {
  const double f = fidelity(phi, psi);
  return std::sqrt(std::max(0.0, 1.0 - f * f));
}

double fidelity(const DensityOperator& rho, const DensityOperator& sigma) {
  const Matrix s = sigma.permuted(rho.layout()).matrix();
  return clamp01(trace_norm(psd_sqrt(rho.matrix()) * psd_sqrt(s)));
}

double fidelity(const StateVector& phi, const StateVector& psi) {
  const Vector b = psi.permuted(phi.layout()).amplitudes();
  return clamp01(std::abs(phi.amplitudes().dot(b)));
}

DensityOperator partial_trace(const DensityOperator& state, const LabelSet& keep) {
  const RegisterLayout kept = ordered_subset(state.layout(), keep);
  const RegisterLayout traced = state.layout().without(kept.labels());
  const auto map = permutation_map(state.layout(), kept.concat(traced));
  const auto dk = static_cast<Eigen::Index>(kept.total_dim());
  const std::size_t dt = traced.total_dim();
  const Matrix& rho = state.matrix();
  Matrix out = Matrix::Zero(dk, dk);
  for (Eigen::Index c = 0; c < dk; ++c) {
    for (Eigen::Index r = 0; r < dk; ++r) {
      Complex acc = 0.0;
      for (std::size_t t = 0; t < dt; ++t) {
        acc += rho(static_cast<Eigen::Index>(map[static_cast<std::size_t>(r) * dt + t]),
                   static_cast<Eigen::Index>(map[static_cast<std::size_t>(c) * dt + t]));
      }
      out(r, c) = acc;
    }
  }
  return DensityOperator::from_trusted(kept, std::move(out));
}

DensityOperator partial_trace(const StateVector& state, const LabelSet& keep) {
  const RegisterLayout kept = ordered_subset(state.layout(), keep);
  const Matrix x = matricize(state, kept.labels());
  std::vector<Eigen::Index> live;
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    if (!x.col(c).isZero(0.0)) live.push_back(c);
  }
  if (live.size() * 2 < static_cast<std::size_t>(x.cols())) {
    Matrix y(x.rows(), static_cast<Eigen::Index>(live.size()));
    for (std::size_t j = 0; j < live.size(); ++j) y.col(static_cast<Eigen::Index>(j)) = x.col(live[j]);
    return DensityOperator::from_trusted(kept, y * y.adjoint());
  }
  return DensityOperator::from_trusted(kept, x * x.adjoint());
}

Matrix matricize(const StateVector& state, const LabelSet& rows) {
  const RegisterLayout row_layout = state.layout().select(rows);
  const RegisterLayout col_layout = state.layout().without(rows);
  const StateVector arranged = state.permuted(row_layout.concat(col_layout));
  const auto dr = static_cast<Eigen::Index>(row_layout.total_dim());
  const auto dc = static_cast<Eigen::Index>(col_layout.total_dim());
  return Eigen::Map<const Matrix>(arranged.amplitudes().data(), dc, dr).transpose();
}

StateVector purify(const DensityOperator& rho, const std::string& purifier_label) {
  auto solver = hermitian_eigen(rho.matrix());
  RealVector ev = solver.eigenvalues();
  if (ev.minCoeff() < -kNegativeEigenvalueTolerance) throw NumericalError("cannot purify a non-PSD operator");
  ev = ev.cwiseMax(0.0).cwiseSqrt();
  const Matrix y = solver.eigenvectors() * ev.asDiagonal();
  RegisterLayout layout = rho.layout().concat(RegisterLayout{{purifier_label, rho.dim()}});
  return StateVector::normalized(std::move(layout), flatten(y));
}

// ---------------------------------------------------------------------------
// Schmidt decomposition

StateVector SchmidtDecomposition::reconstruct() const {
  const Matrix x = left_basis * coefficients.cast<Complex>().asDiagonal() * right_basis.transpose();
  return StateVector::normalized(cut_layout.concat(rest_layout), flatten(x));
}

SchmidtDecomposition schmidt_decompose(const StateVector& state, const LabelSet& cut, double rank_tolerance) {
  require_proper_cut(state.layout(), cut);
  if (!(rank_tolerance > 0.0)) throw DomainError("rank tolerance must be positive");
  SchmidtDecomposition out;
  out.cut_layout = ordered_subset(state.layout(), cut);
  out.rest_layout = state.layout().without(out.cut_layout.labels());
  const Matrix x = matricize(state, out.cut_layout.labels());
  Eigen::BDCSVD<Matrix> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  out.coefficients = svd.singularValues();
  out.left_basis = svd.matrixU();
  // x = U S V^dagger, so the complement vectors are the conjugated columns of V.
  out.right_basis = svd.matrixV().conjugate();
  out.rank = static_cast<std::size_t>((out.coefficients.array() > rank_tolerance).count());
  return out;
}

Isometry schmidt_compressor(const StateVector& state, const LabelSet& cut, double rank_tolerance,
                            const std::string& compressed_label) {
  const SchmidtDecomposition sd = schmidt_decompose(state, cut, rank_tolerance);
  if (sd.cut_layout.contains(compressed_label)) {
    throw LayoutError("compressed register label '" + compressed_label + "' collides with the cut");
  }
  const auto r = static_cast<Eigen::Index>(sd.rank);
  return Isometry(RegisterLayout{{compressed_label, sd.rank}}, sd.cut_layout, sd.left_basis.leftCols(r));
}

// ---------------------------------------------------------------------------
// Uhlmann

Matrix SubspaceUnitary::to_matrix() const {
  const auto d = static_cast<Eigen::Index>(layout.total_dim());
  const auto k = core.rows();
  return Matrix::Identity(d, d) + basis * (core - Matrix::Identity(k, k)) * basis.adjoint();
}

Matrix SubspaceUnitary::apply_to_columns(const Matrix& columns) const {
  const auto k = core.rows();
  return columns + basis * ((core - Matrix::Identity(k, k)) * (basis.adjoint() * columns));
}

StateVector SubspaceUnitary::apply(const StateVector& state) const {
  const RegisterLayout rest = state.layout().without(layout.labels());
  const Matrix x = matricize(state, rest.labels());  // columns follow state order of `layout` registers
  const RegisterLayout col_layout = state.layout().without(rest.labels());
  // Row vectors transform by U^T.
  Matrix xt = permute_rows(x.transpose(), col_layout, layout);
  xt = apply_to_columns(xt);
  const Matrix y = xt.transpose();
  const StateVector arranged = StateVector::normalized(rest.concat(layout), flatten(y));
  return arranged.permuted(state.layout());
}

UhlmannSolution uhlmann_rotation(const StateVector& phi, const StateVector& psi, const LabelSet& purifier) {
  require_proper_cut(phi.layout(), purifier);
  const StateVector psi_aligned = psi.permuted(phi.layout());
  const RegisterLayout purifier_layout = ordered_subset(phi.layout(), purifier);
  const LabelSet system = phi.layout().without(purifier_layout.labels()).labels();

  const Matrix a = matricize(phi, system);          // system x purifier
  const Matrix b = matricize(psi_aligned, system);  // system x purifier

  // Both states' purifier-side rows lie in the span of V below.
  Matrix stacked(a.rows() + b.rows(), a.cols());
  stacked << a, b;
  const Matrix stacked_h = stacked.adjoint();
  Eigen::HouseholderQR<Matrix> span_qr(stacked_h);
  const Eigen::Index k = std::min(stacked_h.rows(), stacked_h.cols());
  const Matrix v = span_qr.householderQ() * Matrix::Identity(stacked_h.rows(), k);

  const Matrix cross = (a * v).adjoint() * (b * v);
  Eigen::BDCSVD<Matrix> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
  // (1 (x) U)|psi> matricizes to b U^T; U^T = V T V^dagger on the span with
  // T = Z W^dagger maximizes |tr(a^dagger b U^T)|.
  const Matrix t = svd.matrixV() * svd.matrixU().adjoint();

  UhlmannSolution out;
  out.rotation.layout = purifier_layout;
  out.rotation.basis = v.conjugate();
  out.rotation.core = t.transpose();
  out.overlap = svd.singularValues().sum();
  return out;
}

Isometry uhlmann_unitary(const StateVector& phi, const StateVector& psi, const LabelSet& purifier) {
  const UhlmannSolution sol = uhlmann_rotation(phi, psi, purifier);
  return Isometry(sol.rotation.layout, sol.rotation.layout, sol.rotation.to_matrix());
}

// ---------------------------------------------------------------------------
// Helstrom and entropies

HelstromResult helstrom(const DensityOperator& rho0, const DensityOperator& rho1, double prior0) {
  if (!(prior0 >= 0.0 && prior0 <= 1.0)) throw DomainError("prior must lie in [0, 1]");
  const Matrix a = prior0 * rho0.matrix() - (1.0 - prior0) * rho1.permuted(rho0.layout()).matrix();
  auto solver = hermitian_eigen(a);
  const RealVector& ev = solver.eigenvalues();
  HelstromResult out;
  out.probability = clamp01(0.5 + 0.5 * ev.cwiseAbs().sum());
  out.projector = Matrix::Zero(a.rows(), a.cols());
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (ev(k) > 0.0) out.projector += solver.eigenvectors().col(k) * solver.eigenvectors().col(k).adjoint();
  }
  return out;
}

double helstrom_probability(const DensityOperator& rho0, const DensityOperator& rho1, double prior0) {
  return helstrom(rho0, rho1, prior0).probability;
}

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("binary entropy argument outside [0, 1]");
  const double q = 1.0 - p;
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (q > 0.0) h -= q * std::log2(q);
  return h;
}

double shannon_entropy(std::span<const double> distribution) {
  if (distribution.empty()) throw DomainError("empty distribution");
  double sum = 0.0, h = 0.0;
  for (double p : distribution) {
    if (!(p >= 0.0)) throw DomainError("distribution has a negative entry");
    sum += p;
    if (p > 0.0) h -= p * std::log2(p);
  }
  if (std::abs(sum - 1.0) > kStateTolerance) throw DomainError("distribution does not sum to 1");
  return h;
}

Isometry haar_random_unitary(std::size_t dim, std::uint64_t seed) {
  if (dim == 0) throw DomainError("unitary dimension must be positive");
  Rng rng(seed);
  RegisterLayout layout{{"q", dim}};
  return Isometry(layout, layout, haar_unitary_matrix(dim, rng));
}

}  // namespace qpirlab
