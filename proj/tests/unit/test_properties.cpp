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

#include "qpirlab/properties.hpp"
#include "qpirlab/qpir.hpp"
#include "qpirlab/random.hpp"

namespace qpirlab {
namespace {

TEST(SchmidtTrial, DeterministicPerSeed) {
  const SchmidtTrial a = schmidt_rank_trial(5, 2, 4);
  const SchmidtTrial b = schmidt_rank_trial(5, 2, 4);
  EXPECT_EQ(a.ranks, b.ranks);
  EXPECT_EQ(a.cumulative, b.cumulative);
  EXPECT_DOUBLE_EQ(a.communication, 4.0);
  EXPECT_EQ(a.ranks.size(), 5u);
}

TEST(SchmidtTrial, CumulativeCommunicationIsMonotone) {
  const SchmidtTrial t = schmidt_rank_trial(9, 3, 6);
  for (std::size_t k = 1; k < t.cumulative.size(); ++k) EXPECT_GE(t.cumulative[k], t.cumulative[k - 1]);
  EXPECT_DOUBLE_EQ(t.cumulative.back(), t.communication);
}

TEST(SchmidtProfile, QpirSuperpositionRunIsWithinBound) {
  for (const QpirProtocol& q : {trivial_qpir(3), index_in_clear_qpir(3), random_qpir(2, 2)}) {
    const SchmidtTrial t = schmidt_rank_profile(fully_purified(q.spec), superposition_input(q, 1));
    EXPECT_TRUE(t.within_stepwise) << q.name;
    EXPECT_EQ(t.ranks.front(), 1u) << q.name;
    EXPECT_LE(static_cast<double>(t.ranks.back()), std::exp2(t.communication) + 1e-9) << q.name;
  }
}

TEST(SchmidtProfile, EntangledInputScalesTheBound) {
  const ProtocolSpec s = random_protocol(3, 2, 2);
  Rng rng(3);
  const StateVector psi = random_state(local_input_layout(s), rng);
  const SchmidtTrial t = schmidt_rank_profile(s, psi);
  EXPECT_TRUE(t.within_stepwise);
  EXPECT_LE(static_cast<double>(t.ranks.back()),
            std::exp2(t.communication) * static_cast<double>(t.ranks.front()) + 1e-9);
}

TEST(FuchsVanDeGraaf, TrialsHold) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const FuchsVanDeGraafTrial t = fuchs_van_de_graaf_trial(seed, std::size_t{2} << (seed % 3));
    EXPECT_TRUE(t.lower_ok) << seed;
    EXPECT_TRUE(t.upper_ok) << seed;
    EXPECT_GE(t.distance, 0.0);
    EXPECT_LE(t.fidelity, 1.0);
  }
}

TEST(PropertySuite, DefaultSizeHasNoViolations) {
  const PropertySuiteReport r = run_property_suite(2024, 200);
  EXPECT_EQ(r.schmidt_trials, 200u);
  EXPECT_GE(r.fvdg_trials, 500u);
  EXPECT_EQ(r.schmidt_violations, 0u);
  EXPECT_EQ(r.fvdg_violations, 0u);
  std::size_t per_budget[7] = {0};
  for (const auto& t : r.schmidt) ++per_budget[static_cast<std::size_t>(t.communication)];
  for (std::size_t c = 1; c <= 6; ++c) EXPECT_GT(per_budget[c], 0u);
}

TEST(PropertySuite, SchmidtSuiteMatchesPropertySuite) {
  const auto suite = schmidt_rank_suite(7, 12);
  const PropertySuiteReport r = run_property_suite(7, 12);
  ASSERT_EQ(suite.size(), r.schmidt.size());
  for (std::size_t k = 0; k < suite.size(); ++k) EXPECT_EQ(suite[k].ranks, r.schmidt[k].ranks);
}

}  // namespace
}  // namespace qpirlab
