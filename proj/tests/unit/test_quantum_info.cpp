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

#include <array>
#include <cmath>

#include "qpirlab/error.hpp"
#include "qpirlab/quantum_info.hpp"
#include "qpirlab/random.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

namespace qpirlab {
namespace {

using testing::bell_state;
using testing::ket;
using testing::plus_state;
using testing::projector;
using testing::qubits;

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

DensityOperator zero_a() { return projector(ket(qubits({"a"}), 0)); }
DensityOperator one_a() { return projector(ket(qubits({"a"}), 1)); }
DensityOperator plus_a() { return projector(plus_state("a")); }

TEST(TraceDistance, Examples) {
  Rng rng(1);
  const DensityOperator rho = random_density(qubits({"a", "b"}), rng);
  EXPECT_NEAR(trace_distance(rho, rho), 0.0, 1e-12);
  EXPECT_NEAR(trace_distance(zero_a(), one_a()), 1.0, 1e-12);
  EXPECT_NEAR(trace_distance(zero_a(), plus_a()), kInvSqrt2, 1e-12);
  EXPECT_NEAR(trace_distance(ket(qubits({"a"}), 0), plus_state("a")), kInvSqrt2, 1e-12);
}

TEST(TraceDistance, AcceptsPermutedLayouts) {
  Rng rng(2);
  const DensityOperator rho = random_density(RegisterLayout{{"a", 2}, {"b", 3}}, rng);
  EXPECT_NEAR(trace_distance(rho, rho.permuted(RegisterLayout{{"b", 3}, {"a", 2}})), 0.0, 1e-12);
}

TEST(TraceDistance, TriangleInequalityOnSampledTriples) {
  Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    const RegisterLayout l{{"s", static_cast<std::size_t>(2 + t % 4)}};
    const auto a = random_density(l, rng), b = random_density(l, rng), c = random_density(l, rng);
    EXPECT_LE(trace_distance(a, c), trace_distance(a, b) + trace_distance(b, c) + 1e-9);
    EXPECT_NEAR(trace_distance(a, b), trace_distance(b, a), 1e-12);
  }
}

TEST(TraceDistance, DataProcessingUnderRandomChannels) {
  Rng rng(4);
  for (int t = 0; t < 60; ++t) {
    const RegisterLayout in{{"s", 3}};
    const RegisterLayout out{{"o", 2}};
    const auto a = random_density(in, rng), b = random_density(in, rng);
    const KrausChannel e = random_channel(in, out, 2 + t % 3, rng);
    EXPECT_LE(trace_distance(apply(e, a), apply(e, b)), trace_distance(a, b) + 1e-9);
  }
}

TEST(TraceDistance, LargeLowRankMatchesDenseOracle) {
  Rng rng(5);
  const RegisterLayout l{{"s", 16}, {"t", 16}};
  for (std::size_t rank : {1u, 3u, 40u, 256u}) {
    const auto a = random_density(l, rng, rank), b = random_density(l, rng, rank);
    EXPECT_NEAR(trace_distance(a, b), testing::dense_trace_distance(a.matrix(), b.matrix()), 1e-10)
        << "rank " << rank;
  }
}

TEST(Fidelity, Examples) {
  Rng rng(6);
  const DensityOperator rho = random_density(qubits({"a"}), rng);
  EXPECT_NEAR(fidelity(rho, rho), 1.0, 1e-8);
  EXPECT_NEAR(fidelity(ket(qubits({"a"}), 0), plus_state("a")), kInvSqrt2, 1e-12);
  EXPECT_NEAR(fidelity(DensityOperator::maximally_mixed(qubits({"a"})), zero_a()), kInvSqrt2, 1e-8);
}

TEST(Fidelity, FuchsVanDeGraafOnRandomPairs) {
  Rng rng(7);
  const std::array<std::size_t, 3> dims{2, 4, 8};
  for (int t = 0; t < 150; ++t) {
    const RegisterLayout l{{"s", dims[t % 3]}};
    const std::size_t rank = t % 2 == 0 ? 0 : 1 + static_cast<std::size_t>(t) % dims[t % 3];
    const auto a = random_density(l, rng, rank), b = random_density(l, rng, rank);
    const double d = trace_distance(a, b), f = fidelity(a, b);
    EXPECT_LE(1.0 - f - 1e-9, d);
    EXPECT_LE(d, std::sqrt(1.0 - f * f) + 1e-9);
  }
}

TEST(PartialTrace, Examples) {
  const DensityOperator a = partial_trace(bell_state("a", "b"), {"a"});
  EXPECT_LT((a.matrix() - 0.5 * Matrix::Identity(2, 2)).norm(), 1e-12);
  const StateVector prod = tensor(ket(qubits({"a"}), 0), ket(qubits({"b"}), 1));
  EXPECT_LT((partial_trace(prod, {"a"}).matrix() - zero_a().matrix()).norm(), 1e-12);
}

TEST(PartialTrace, RandomThreeQubitMarginalsHaveUnitTrace) {
  Rng rng(8);
  for (int t = 0; t < 20; ++t) {
    const StateVector s = random_state(qubits({"a", "b", "c"}), rng);
    for (const char* keep : {"a", "b", "c"}) {
      EXPECT_NEAR(partial_trace(s, {keep}).matrix().trace().real(), 1.0, 1e-9);
    }
  }
}

TEST(PartialTrace, MatchesLoopOracleForDensityAndKet) {
  Rng rng(9);
  const RegisterLayout l{{"a", 2}, {"b", 3}, {"c", 2}};
  const DensityOperator rho = random_density(l, rng);
  const Matrix oracle = testing::loop_partial_trace(rho.matrix(), {2, 3, 2}, {true, false, true});
  EXPECT_LT((partial_trace(rho, {"a", "c"}).matrix() - oracle).norm(), 1e-12);
  const StateVector s = random_state(l, rng);
  const Matrix oracle_pure =
      testing::loop_partial_trace(DensityOperator::pure(s).matrix(), {2, 3, 2}, {false, true, false});
  EXPECT_LT((partial_trace(s, {"b"}).matrix() - oracle_pure).norm(), 1e-12);
}

TEST(PartialTrace, ResultKeepsOriginalOrder) {
  Rng rng(10);
  const RegisterLayout l{{"a", 2}, {"b", 3}, {"c", 2}};
  const DensityOperator rho = random_density(l, rng);
  const DensityOperator ca = partial_trace(rho, {"c", "a"});
  EXPECT_EQ(ca.layout(), (RegisterLayout{{"a", 2}, {"c", 2}}));
  EXPECT_LT((ca.matrix() - partial_trace(rho, {"a", "c"}).matrix())
                .norm(),
            1e-12);
}

TEST(Purify, Examples) {
  const StateVector p0 = purify(zero_a(), "p");
  const SchmidtDecomposition s0 = schmidt_decompose(p0, {"a"});
  EXPECT_EQ(s0.rank, 1u);
  EXPECT_LT((partial_trace(p0, {"a"}).matrix() - zero_a().matrix()).norm(), 1e-12);
  const StateVector pm = purify(DensityOperator::maximally_mixed(qubits({"a"})), "p");
  const SchmidtDecomposition sm = schmidt_decompose(pm, {"a"});
  EXPECT_EQ(sm.rank, 2u);
  EXPECT_NEAR(sm.coefficients(0), kInvSqrt2, 1e-12);
  EXPECT_NEAR(sm.coefficients(1), kInvSqrt2, 1e-12);
}

TEST(Purify, RoundTripOnRandomStates) {
  Rng rng(11);
  for (int t = 0; t < 30; ++t) {
    const DensityOperator rho = random_density(RegisterLayout{{"a", 2}, {"b", 2}}, rng, 1 + t % 4);
    const StateVector p = purify(rho, "p");
    EXPECT_LT((partial_trace(p, {"a", "b"}).matrix() - rho.matrix()).norm(), 1e-8);
  }
}

TEST(Schmidt, Examples) {
  const SchmidtDecomposition bell = schmidt_decompose(bell_state("a", "b"), {"a"});
  EXPECT_EQ(bell.rank, 2u);
  EXPECT_NEAR(bell.coefficients(0), kInvSqrt2, 1e-12);
  const StateVector prod = tensor(plus_state("a"), ket(qubits({"b"}), 1));
  EXPECT_EQ(schmidt_decompose(prod, {"a"}).rank, 1u);
  EXPECT_THROW(schmidt_decompose(prod, {"a", "b"}), DomainError);
  EXPECT_THROW(schmidt_decompose(prod, {}), DomainError);
  EXPECT_THROW(schmidt_decompose(prod, {"a"}, 0.0), DomainError);
}

TEST(Schmidt, ReconstructionOnRandomStates) {
  Rng rng(12);
  for (int t = 0; t < 40; ++t) {
    const StateVector s = random_state(RegisterLayout{{"a", 4}, {"b", 4}}, rng);
    const SchmidtDecomposition sd = schmidt_decompose(s, {"a"});
    EXPECT_NEAR(sd.coefficients.squaredNorm(), 1.0, 1e-12);
    EXPECT_NEAR(fidelity(sd.reconstruct(), s), 1.0, 1e-8);
    EXPECT_LT((sd.reconstruct().permuted(s.layout()).amplitudes() - s.amplitudes()).norm(), 1e-8);
  }
}

TEST(SchmidtCompressor, Examples) {
  const Isometry bell = schmidt_compressor(bell_state("a", "b"), {"a"});
  EXPECT_EQ(bell.input_layout().total_dim(), 2u);
  Rng rng(13);
  const StateVector psi = random_state(qubits({"b"}), rng);
  const StateVector s = tensor(ket(qubits({"a1", "a2", "a3"}), 0), psi);
  EXPECT_EQ(schmidt_compressor(s, {"a1", "a2", "a3"}).input_layout().total_dim(), 1u);
}

TEST(SchmidtCompressor, RankThreeInsideEightRoundTrips) {
  Rng rng(14);
  const Matrix a = haar_isometry_matrix(8, 3, rng);
  const Matrix b = haar_isometry_matrix(5, 3, rng);
  RealVector lambda(3);
  lambda << 0.8, 0.5, std::sqrt(1.0 - 0.64 - 0.25);
  const Matrix x = a * lambda.cast<Complex>().asDiagonal() * b.transpose();
  const StateVector s(RegisterLayout{{"a", 8}, {"b", 5}}, x.reshaped<Eigen::RowMajor>());
  const Isometry c = schmidt_compressor(s, {"a"});
  ASSERT_EQ(c.input_layout().total_dim(), 3u);
  const Matrix proj = c.matrix() * c.matrix().adjoint();
  EXPECT_LT((proj * x - x).norm(), 1e-8);
}

TEST(Uhlmann, IdenticalStatesNeedNoRotation) {
  Rng rng(15);
  const StateVector s = random_state(RegisterLayout{{"a", 2}, {"p", 3}}, rng);
  const UhlmannSolution u = uhlmann_rotation(s, s, {"p"});
  EXPECT_NEAR(u.overlap, 1.0, 1e-10);
  EXPECT_NEAR(trace_distance(u.rotation.apply(s), s), 0.0, 1e-6);
}

TEST(Uhlmann, PermutedPurifierIsUndone) {
  const RegisterLayout l{{"a", 3}, {"p", 3}};
  Vector phi = Vector::Zero(9), psi = Vector::Zero(9);
  const double lam[3] = {0.7, 0.6, std::sqrt(1.0 - 0.49 - 0.36)};
  const int perm[3] = {2, 0, 1};
  for (int k = 0; k < 3; ++k) {
    phi(k * 3 + k) = lam[k];
    psi(k * 3 + perm[k]) = lam[k];
  }
  const StateVector sphi(l, phi), spsi(l, psi);
  const UhlmannSolution u = uhlmann_rotation(sphi, spsi, {"p"});
  EXPECT_NEAR(trace_distance(sphi, u.rotation.apply(spsi)), 0.0, 1e-6);
  const Isometry full = uhlmann_unitary(sphi, spsi, {"p"});
  EXPECT_NEAR(std::abs(full.matrix()(0, 2)), 1.0, 1e-8);
}

TEST(Uhlmann, RandomPairsMeetLocalBoundAndAchieveFidelity) {
  Rng rng(16);
  for (int t = 0; t < 60; ++t) {
    const RegisterLayout l{{"a", 2 + static_cast<std::size_t>(t % 3)}, {"p", 4}};
    const StateVector phi = random_state(l, rng), psi = random_state(l, rng);
    const double eps = trace_distance(partial_trace(phi, {"a"}), partial_trace(psi, {"a"}));
    const double f = fidelity(partial_trace(phi, {"a"}), partial_trace(psi, {"a"}));
    const UhlmannSolution u = uhlmann_rotation(phi, psi, {"p"});
    const StateVector rotated = u.rotation.apply(psi);
    EXPECT_LE(trace_distance(phi, rotated), std::sqrt(eps * (2.0 - eps)) + 1e-9);
    EXPECT_NEAR(fidelity(phi, rotated), f, 1e-8);
    EXPECT_NEAR(u.overlap, f, 1e-8);
    const Matrix m = u.rotation.to_matrix();
    EXPECT_LT((m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())).norm(), 1e-9);
  }
}

TEST(Helstrom, Examples) {
  EXPECT_NEAR(helstrom_probability(zero_a(), zero_a(), 0.5), 0.5, 1e-12);
  EXPECT_NEAR(helstrom_probability(zero_a(), one_a(), 0.5), 1.0, 1e-12);
  EXPECT_NEAR(helstrom_probability(zero_a(), plus_a(), 0.5), 0.5 + 0.5 * kInvSqrt2, 1e-12);
  EXPECT_THROW(helstrom_probability(zero_a(), one_a(), 1.5), DomainError);
}

TEST(Helstrom, ProjectorRealizesProbability) {
  Rng rng(17);
  for (int t = 0; t < 20; ++t) {
    const RegisterLayout l{{"s", 3}};
    const auto a = random_density(l, rng), b = random_density(l, rng);
    const double prior = 0.2 + 0.03 * t;
    const HelstromResult h = helstrom(a, b, prior);
    const Matrix pi = h.projector;
    const double p = prior * (pi * a.matrix()).trace().real() +
                     (1.0 - prior) * ((Matrix::Identity(3, 3) - pi) * b.matrix()).trace().real();
    EXPECT_NEAR(p, h.probability, 1e-10);
    EXPECT_NEAR(h.probability, 0.5 * (1.0 + trace_norm(prior * a.matrix() - (1.0 - prior) * b.matrix())), 1e-10);
  }
}

TEST(Helstrom, MatchesBruteForceGridAtDimensionTwo) {
  Rng rng(18);
  for (int t = 0; t < 20; ++t) {
    const auto a = random_density(qubits({"s"}), rng), b = random_density(qubits({"s"}), rng);
    EXPECT_NEAR(helstrom_probability(a, b, 0.5), testing::brute_force_helstrom_qubit(a.matrix(), b.matrix(), 0.5),
                1e-3);
  }
}

TEST(Entropy, BinaryExamples) {
  EXPECT_EQ(binary_entropy(0.0), 0.0);
  EXPECT_EQ(binary_entropy(1.0), 0.0);
  EXPECT_NEAR(binary_entropy(0.5), 1.0, 1e-15);
  EXPECT_NEAR(binary_entropy(0.75), 0.811278, 1e-6);
  EXPECT_THROW(binary_entropy(-0.1), DomainError);
}

TEST(Entropy, ShannonExamples) {
  const std::vector<double> point{1.0, 0.0};
  EXPECT_NEAR(shannon_entropy(point), 0.0, 1e-15);
  const std::vector<double> uniform(8, 0.125);
  EXPECT_NEAR(shannon_entropy(uniform), 3.0, 1e-12);
  const std::vector<double> mixed{0.5, 0.25, 0.25};
  EXPECT_NEAR(shannon_entropy(mixed), 1.5, 1e-12);
}

TEST(HaarUnitary, Properties) {
  const Isometry u1 = haar_random_unitary(1, 3);
  EXPECT_NEAR(std::abs(u1.matrix()(0, 0)), 1.0, 1e-12);
  EXPECT_EQ(haar_random_unitary(5, 9).matrix(), haar_random_unitary(5, 9).matrix());
  const Isometry u = haar_random_unitary(16, 4);
  for (Eigen::Index c = 0; c < 16; ++c) EXPECT_NEAR(u.matrix().col(c).norm(), 1.0, 1e-9);
  EXPECT_THROW(haar_random_unitary(0, 1), DomainError);
}

}  // namespace
}  // namespace qpirlab
