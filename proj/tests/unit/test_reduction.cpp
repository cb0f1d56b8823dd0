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

#include <cmath>

#include "qpirlab/error.hpp"
#include "qpirlab/qpir.hpp"
#include "qpirlab/quantum_info.hpp"
#include "qpirlab/reduction.hpp"

namespace qpirlab {
namespace {

constexpr double kSlack = 1e-6;

StateVector per_x_state(const QpirProtocol& q, const ProtocolSpec& purified, std::uint64_t x, std::size_t i) {
  return execute_pure(purified, qpir_input(q, x, i)).final_state();
}

TEST(Nu, TrivialHasFullSchmidtRank) {
  for (std::size_t n : {1u, 2u, 3u}) {
    const QpirProtocol q = trivial_qpir(n);
    const RandomAccessEncoding rae = build_rae(q);
    const StateVector nu = nu_state(q, 1);
    EXPECT_EQ(schmidt_decompose(nu, rae.server_layout.labels()).rank, std::size_t{1} << n);
  }
}

TEST(Nu, IndexInClearSingleBitRankWithinCommunication) {
  const QpirProtocol q = index_in_clear_qpir(1);
  const RandomAccessEncoding rae = build_rae(q);
  const std::size_t rank = schmidt_decompose(nu_state(q, 1), rae.server_layout.labels()).rank;
  EXPECT_LE(static_cast<double>(rank), std::exp2(communication_complexity(q.spec)) + 1e-9);
  EXPECT_EQ(rank, 2u);
}

TEST(Nu, IsTheNormalizedSumOfPerDatabaseRuns) {
  for (const QpirProtocol& q : {random_qpir(2, 3), noisy_trivial_qpir(2, 0.1)}) {
    const ProtocolSpec purified = fully_purified(q.spec);
    for (std::size_t i = 1; i <= q.n; ++i) {
      const StateVector nu = nu_state(q, i);
      Vector sum = Vector::Zero(static_cast<Eigen::Index>(nu.dim()));
      for (std::uint64_t x = 0; x < (std::uint64_t{1} << q.n); ++x) {
        sum += per_x_state(q, purified, x, i).permuted(nu.layout()).amplitudes();
      }
      EXPECT_LT((sum.normalized() - nu.amplitudes()).norm(), 1e-8);
    }
  }
}

TEST(Rae, TrivialEncodesDatabaseExactly) {
  const QpirProtocol q = trivial_qpir(3);
  const RandomAccessEncoding rae = build_rae(q);
  EXPECT_EQ(rae.support_dim, 8u);
  EXPECT_DOUBLE_EQ(rae.m, 3.0);
  EXPECT_EQ(rae.m_qubits, 3u);
  for (std::uint64_t x = 0; x < 8; ++x) {
    const Matrix& c = rae.encode(x).matrix();
    EXPECT_NEAR((c * c).trace().real(), 1.0, 1e-10);
    for (std::uint64_t y = 0; y < x; ++y) EXPECT_NEAR(trace_distance(rae.encode(x), rae.encode(y)), 1.0, 1e-10);
  }
  const RecoveryReport r = recovery_probability(rae);
  for (double p : r.per_index) EXPECT_NEAR(p, 1.0, 1e-8);
}

TEST(Rae, CompressionNeverExceedsCommunication) {
  for (const QpirProtocol& q : {trivial_qpir(2), index_in_clear_qpir(3), noisy_trivial_qpir(2, 0.1),
                                random_qpir(2, 1), random_qpir(3, 2)}) {
    const RandomAccessEncoding rae = build_rae(q);
    EXPECT_LE(rae.m, communication_complexity(q.spec) + 1e-9) << q.name;
    EXPECT_EQ(rae.m_qubits, static_cast<std::size_t>(std::ceil(rae.m - 1e-12)));
  }
}

TEST(Rae, DecompressionIsLosslessOnEveryCodeword) {
  for (const QpirProtocol& q : {random_qpir(2, 7), noisy_trivial_qpir(2, 0.2)}) {
    const RandomAccessEncoding rae = build_rae(q);
    const ProtocolSpec purified = fully_purified(q.spec);
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << q.n); ++x) {
      const DensityOperator marginal = partial_trace(per_x_state(q, purified, x, 1), rae.client_layout.labels());
      const DensityOperator lifted = apply(rae.decompressor, rae.encode(x));
      EXPECT_LT(trace_distance(lifted, marginal), 1e-8) << q.name << " x=" << x;
    }
  }
}

TEST(Rae, SingleBitRecoversWithCorrectness) {
  const QpirProtocol q = noisy_trivial_qpir(1, 0.2);
  const CorrectnessReport c = correctness_delta(q);
  const RandomAccessEncoding rae = build_rae(q, c);
  EXPECT_LE(rae.m, communication_complexity(q.spec) + 1e-9);
  EXPECT_NEAR(recovery_probability(rae).per_index[0], 1.0 - c.per_index[0], 1e-8);
}

TEST(Rae, FirstIndexNeedsNoRotation) {
  const QpirProtocol q = random_qpir(2, 4);
  const CorrectnessReport c = correctness_delta(q);
  const RandomAccessEncoding rae = build_rae(q, c);
  EXPECT_NEAR(rae.uhlmann_overlap[0], 1.0, 1e-8);
  EXPECT_NEAR(recovery_probability(rae).per_index[0], 1.0 - c.per_index[0], 1e-8);
}

TEST(Rae, DecodeBitIsAProbability) {
  const RandomAccessEncoding rae = build_rae(random_qpir(2, 6));
  for (std::uint64_t x = 0; x < 4; ++x) {
    for (std::size_t i = 1; i <= 2; ++i) {
      const double p0 = decode_bit(rae, rae.encode(x), i, 0), p1 = decode_bit(rae, rae.encode(x), i, 1);
      EXPECT_NEAR(p0 + p1, 1.0, 1e-9);
      EXPECT_GE(p0, -1e-12);
    }
  }
}

TEST(Rae, TruncatedSupportIsReported) {
  ReductionOptions opts;
  opts.rank_tolerance = 0.3;
  EXPECT_THROW(build_rae(random_qpir(2, 1), opts), NumericalError);
}

TEST(Recovery, GuaranteeHoldsForBuiltins) {
  for (const QpirProtocol& q : {trivial_qpir(3), noisy_trivial_qpir(2, 0.05), noisy_trivial_qpir(3, 0.1),
                                random_qpir(2, 11), random_qpir(3, 12)}) {
    const BoundReport r = reduce(q);
    EXPECT_GE(r.recovery.min, r.guarantee - kSlack) << q.name;
    EXPECT_TRUE(r.nayak.holds) << q.name;
    EXPECT_TRUE(r.compression_ok) << q.name;
    EXPECT_TRUE(r.bound.vacuous || r.c >= r.bound.value - kSlack) << q.name;
    EXPECT_NE(r.verdict, "VIOLATED") << q.name;
  }
}

TEST(Recovery, UhlmannStepWithinLocalBound) {
  for (const QpirProtocol& q : {random_qpir(2, 21), random_qpir(3, 22)}) {
    const BoundReport r = reduce(q);
    for (const auto& u : r.uhlmann) {
      EXPECT_TRUE(u.within_local) << q.name << " i=" << u.index;
      if (r.epsilon_hat <= 2.0 / 3.0) {
        EXPECT_TRUE(u.within_privacy) << q.name << " i=" << u.index;
      }
    }
  }
}

TEST(Recovery, MeasuringTheDatabaseNeverHurts) {
  for (const QpirProtocol& q : {random_qpir(2, 31), noisy_trivial_qpir(2, 0.1)}) {
    const BoundReport r = reduce(q);
    ASSERT_EQ(r.superposition_recovery.size(), q.n) << q.name;
    double sup = 0.0;
    for (double p : r.superposition_recovery) sup += p;
    EXPECT_GE(r.recovery.mean, sup / static_cast<double>(q.n) - 1e-8) << q.name;
  }
}

TEST(LowerBound, Examples) {
  for (std::size_t n : {1u, 7u, 100u}) EXPECT_EQ(lower_bound(n, 0.0, 0.0).value, static_cast<double>(n));
  EXPECT_NEAR(lower_bound(100, 0.25, 0.0).value, 18.8722, 1e-3);
  EXPECT_NEAR(lower_bound(10, 0.5, 0.0).value, 0.0, 1e-12);
  EXPECT_THROW(lower_bound(4, -0.1, 0.0), DomainError);
  EXPECT_THROW(lower_bound(4, 0.0, 1.5), DomainError);
}

TEST(LowerBound, VacuousRegionIsFlagged) {
  const LowerBound b = lower_bound(8, 0.0, 0.5);
  EXPECT_TRUE(b.vacuous);
  EXPECT_NEAR(b.argument, 0.0, 1e-12);
  EXPECT_EQ(b.value, 0.0);
  EXPECT_FALSE(lower_bound(8, 0.1, 0.01).vacuous);
  EXPECT_NEAR(recovery_guarantee(0.1, 0.01), 1.0 - 0.1 - 2.0 * std::sqrt(0.01 * 0.99), 1e-15);
}

TEST(LowerBound, MonotoneInErrorAndLeakage) {
  double previous = 1e9;
  for (double d = 0.0; d <= 0.5; d += 0.05) {
    const double v = lower_bound(50, d, 0.0).value;
    EXPECT_LE(v, previous + 1e-12);
    previous = v;
  }
  previous = 1e9;
  for (double e = 0.0; e <= 0.06; e += 0.01) {
    const double v = lower_bound(50, 0.0, e).value;
    EXPECT_LE(v, previous + 1e-12);
    previous = v;
  }
}

TEST(Nayak, Examples) {
  const NayakVerdict full = nayak_check(5, 5.0, 1.0);
  EXPECT_TRUE(full.holds);
  EXPECT_NEAR(full.slack, 0.0, 1e-15);
  const NayakVerdict bad = nayak_check(4, 1.0, 0.99);
  EXPECT_FALSE(bad.holds);
  EXPECT_NEAR(bad.required, 3.677, 1e-3);
  EXPECT_THROW(nayak_check(4, 1.0, 1.01), DomainError);
}

TEST(Attack, TrivialIsPrivate) {
  const AttackReport a = superposition_attack(trivial_qpir(3));
  EXPECT_NEAR(a.max_distance, 0.0, 1e-9);
  EXPECT_EQ(a.verdict, "PRIVATE");
  EXPECT_EQ(a.consistency, "consistent");
  EXPECT_TRUE(a.premise.empty());
}

TEST(Attack, IndexInClearIsCaught) {
  const AttackReport a = superposition_attack(index_in_clear_qpir(4));
  EXPECT_NEAR(a.max_distance, 1.0, 1e-9);
  EXPECT_NEAR(a.guess_probability, 1.0, 1e-9);
  EXPECT_EQ(a.verdict, "NOT-PRIVATE");
  EXPECT_FALSE(a.premise.empty());
  EXPECT_DOUBLE_EQ(a.communication, 3.0);
  EXPECT_EQ(a.consistency, "consistent-because-non-private");
}

TEST(Attack, DistinguishabilityIsTwicePairwiseLower) {
  for (const QpirProtocol& q : {random_qpir(2, 41), random_qpir(3, 42), index_in_clear_qpir(3)}) {
    const AttackReport a = superposition_attack(q);
    const PrivacyReport p = privacy_epsilon_purified(q);
    EXPECT_NEAR(a.max_distance, 2.0 * p.pairwise_lower, 1e-9) << q.name;
  }
}

TEST(Reduce, TrivialEndToEnd) {
  const BoundReport r = reduce(trivial_qpir(4));
  EXPECT_DOUBLE_EQ(r.c, 4.0);
  EXPECT_NEAR(r.delta_hat, 0.0, 1e-9);
  EXPECT_NEAR(r.epsilon_hat, 0.0, 1e-9);
  EXPECT_DOUBLE_EQ(r.m, 4.0);
  EXPECT_NEAR(r.recovery.min, 1.0, 1e-8);
  EXPECT_DOUBLE_EQ(r.bound.value, 4.0);
  EXPECT_TRUE(r.nayak.holds);
  EXPECT_LE(std::abs(r.nayak.slack), 1e-6);
  EXPECT_EQ(r.verdict, "HOLDS");
}

TEST(Reduce, IndexInClearFailsThePrivacyPremise) {
  const BoundReport r = reduce(index_in_clear_qpir(4));
  EXPECT_FALSE(r.premises_hold);
  EXPECT_NE(r.premise.find("epsilon"), std::string::npos);
  EXPECT_GT(r.epsilon_hat, 0.5);
  // The formula is not monotone past 1/2: a near-one guarantee the protocol cannot meet.
  EXPECT_FALSE(r.recovery_ok);
  EXPECT_EQ(r.verdict, "PREMISE-FAILS");
}

TEST(Reduce, JsonAndCsv) {
  const BoundReport r = reduce(trivial_qpir(2));
  const Json j = to_json(r);
  EXPECT_EQ(j.at("verdict"), "HOLDS");
  EXPECT_EQ(j.at("n"), 2);
  EXPECT_EQ(bound_csv_header(), "protocol,n,c,m,delta_hat,epsilon_hat,p_hat,bound,verdict");
  const std::string row = to_csv_row(r);
  EXPECT_EQ(std::count(row.begin(), row.end(), ','), 8);
  EXPECT_EQ(row.rfind("trivial,2,", 0), 0u);
}

}  // namespace
}  // namespace qpirlab
