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

#include "qpirlab/random.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/QR>

#include "qpirlab/error.hpp"

namespace qpirlab {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw DomainError("empty range");
  // Rejection sampling keeps the draw exactly uniform.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t v;
  do {
    v = engine_();
  } while (v >= limit);
  return v % bound;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

Matrix ginibre_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) m(r, c) = rng.complex_normal();
  }
  return m;
}

Matrix haar_unitary_matrix(std::size_t dim, Rng& rng) {
  if (dim == 0) throw DomainError("unitary dimension must be positive");
  const Matrix g = ginibre_matrix(dim, dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    const Complex d = r(k, k);
    const double mag = std::abs(d);
    q.col(k) *= mag > 0.0 ? d / mag : Complex(1.0);
  }
  return q;
}

Matrix haar_isometry_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  if (cols > rows) throw DomainError("isometry needs rows >= cols");
  return haar_unitary_matrix(rows, rng).leftCols(static_cast<Eigen::Index>(cols));
}

StateVector random_state(const RegisterLayout& layout, Rng& rng) {
  Matrix g = ginibre_matrix(layout.total_dim(), 1, rng);
  return StateVector::normalized(layout, g.col(0));
}

DensityOperator random_density(const RegisterLayout& layout, Rng& rng, std::size_t rank) {
  const std::size_t k = rank == 0 ? layout.total_dim() : rank;
  const Matrix g = ginibre_matrix(layout.total_dim(), k, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace();
  return DensityOperator(layout, std::move(rho));
}

KrausChannel random_channel(const RegisterLayout& input, const RegisterLayout& output, std::size_t kraus_count,
                            Rng& rng) {
  if (kraus_count == 0) throw DomainError("channel needs at least one Kraus operator");
  const std::size_t din = input.total_dim();
  const std::size_t dout = output.total_dim();
  const Matrix v = haar_isometry_matrix(dout * kraus_count, din, rng);
  std::vector<Matrix> kraus;
  kraus.reserve(kraus_count);
  // Row index of v is (output index) * kraus_count + environment index.
  for (std::size_t e = 0; e < kraus_count; ++e) {
    Matrix k(static_cast<Eigen::Index>(dout), static_cast<Eigen::Index>(din));
    for (std::size_t o = 0; o < dout; ++o) k.row(static_cast<Eigen::Index>(o)) = v.row(static_cast<Eigen::Index>(o * kraus_count + e));
    kraus.push_back(std::move(k));
  }
  return KrausChannel(input, output, std::move(kraus));
}

}  // namespace qpirlab
