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

#include <cstdint>
#include <span>
#include <string>

#include "qpirlab/states.hpp"

namespace qpirlab {

inline constexpr double kDefaultRankTolerance = 1e-10;

/// Negative eigenvalues down to this are treated as round-off and clamped to
/// zero by PSD square roots; anything lower is an error.
inline constexpr double kNegativeEigenvalueTolerance = 1e-9;

// Distances. Operands must hold the same registers; a different register
// order is permuted into the first operand's order.

/// Half the trace norm of `rho - sigma`.
double trace_distance(const DensityOperator& rho, const DensityOperator& sigma);
/// Pure-state form sqrt(1 - |<phi|psi>|^2).
double trace_distance(const StateVector& phi, const StateVector& psi);

/// Trace norm of sqrt(rho) sqrt(sigma).
double fidelity(const DensityOperator& rho, const DensityOperator& sigma);
double fidelity(const StateVector& phi, const StateVector& psi);

/// Sum of singular values.
double trace_norm(const Matrix& m);
/// PSD square root of a Hermitian matrix with round-off clamping.
Matrix psd_sqrt(const Matrix& hermitian);

DensityOperator partial_trace(const DensityOperator& state, const LabelSet& keep);
/// Reduced state of a pure state, without forming the global projector.
DensityOperator partial_trace(const StateVector& state, const LabelSet& keep);

/// Purification with a purifier register of the full system dimension,
/// appended after the system registers.
StateVector purify(const DensityOperator& rho, const std::string& purifier_label);

/// Rows indexed by the `rows` registers (in the given order), columns by the
/// remaining registers (in layout order).
Matrix matricize(const StateVector& state, const LabelSet& rows);

struct SchmidtDecomposition {
  /// Descending Schmidt coefficients, min(dim cut, dim rest) of them.
  RealVector coefficients;
  /// Columns are the cut-side vectors |a_k>.
  Matrix left_basis;
  /// Columns are the complement-side vectors |b_k>.
  Matrix right_basis;
  /// Number of coefficients above the rank tolerance.
  std::size_t rank = 0;
  RegisterLayout cut_layout;
  RegisterLayout rest_layout;

  /// sum_k lambda_k |a_k>|b_k>, over cut_layout followed by rest_layout.
  StateVector reconstruct() const;
};

/// `cut` must be a proper, nonempty subset of the state's registers.
SchmidtDecomposition schmidt_decompose(const StateVector& state, const LabelSet& cut,
                                       double rank_tolerance = kDefaultRankTolerance);

/// Decompressing isometry for the `cut` factor: maps a register of dimension r
/// (the Schmidt rank, labelled `compressed_label`) onto the support of the
/// reduced state on `cut`. Compression is its adjoint.
Isometry schmidt_compressor(const StateVector& state, const LabelSet& cut,
                            double rank_tolerance = kDefaultRankTolerance,
                            const std::string& compressed_label = "compressed");

/// Unitary on `layout` of the form I + basis (core - I) basis^dagger, with
/// `basis` orthonormal columns. Dense form is available via to_matrix().
struct SubspaceUnitary {
  RegisterLayout layout;
  Matrix basis;
  Matrix core;

  Matrix to_matrix() const;
  /// Applies the unitary to the `layout` registers of `state`, keeping the
  /// state's register order.
  StateVector apply(const StateVector& state) const;
  /// Applies the unitary to each column (rows indexed by `layout`).
  Matrix apply_to_columns(const Matrix& columns) const;
};

struct UhlmannSolution {
  SubspaceUnitary rotation;
  /// |<phi| (1 (x) U) |psi>|, the maximal overlap.
  double overlap = 0.0;
};

/// Unitary U on the `purifier` registers maximizing |<phi|(1 (x) U)|psi>|,
/// solved as a unitary Procrustes problem restricted to the span of both
/// states' purifier-side supports.
UhlmannSolution uhlmann_rotation(const StateVector& phi, const StateVector& psi,
                                 const LabelSet& purifier);

/// Dense form of uhlmann_rotation on the purifier registers.
Isometry uhlmann_unitary(const StateVector& phi, const StateVector& psi, const LabelSet& purifier);

struct HelstromResult {
  double probability = 0.0;
  /// Projector for the outcome "rho0" (positive eigenspace of
  /// prior0 rho0 - (1 - prior0) rho1).
  Matrix projector;
};

HelstromResult helstrom(const DensityOperator& rho0, const DensityOperator& rho1, double prior0);
double helstrom_probability(const DensityOperator& rho0, const DensityOperator& rho1, double prior0);

/// In bits; 0 log 0 = 0.
double binary_entropy(double p);
double shannon_entropy(std::span<const double> distribution);

/// Haar-distributed unitary on a single register labelled "q".
Isometry haar_random_unitary(std::size_t dim, std::uint64_t seed);

}  // namespace qpirlab
