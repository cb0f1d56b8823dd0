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
#include <random>

#include "qpirlab/states.hpp"

namespace qpirlab {

/// Seeded generator whose output depends only on the seed: mt19937_64 bits
/// with in-house uniform and Gaussian transforms (the standard distributions
/// are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform();
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);
  double normal();
  Complex complex_normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

Matrix ginibre_matrix(std::size_t rows, std::size_t cols, Rng& rng);
/// Haar unitary: QR of a Ginibre matrix with the phases of R's diagonal
/// absorbed into Q.
Matrix haar_unitary_matrix(std::size_t dim, Rng& rng);
/// First `cols` columns of a Haar unitary of size `rows`.
Matrix haar_isometry_matrix(std::size_t rows, std::size_t cols, Rng& rng);

StateVector random_state(const RegisterLayout& layout, Rng& rng);
/// Induced-measure mixed state of the given rank (0 means full rank).
DensityOperator random_density(const RegisterLayout& layout, Rng& rng, std::size_t rank = 0);
/// Channel from a Haar isometry into output (x) environment(kraus_count).
KrausChannel random_channel(const RegisterLayout& input, const RegisterLayout& output,
                            std::size_t kraus_count, Rng& rng);

}  // namespace qpirlab
