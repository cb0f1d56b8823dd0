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

#include <numeric>

#include "qpirlab/error.hpp"
#include "qpirlab/layout.hpp"

namespace qpirlab {
namespace {

TEST(RegisterLayout, TotalDimensionIsProduct) {
  const RegisterLayout l{{"a", 2}, {"b", 3}, {"c", 5}};
  EXPECT_EQ(l.total_dim(), 30u);
  EXPECT_EQ(l.size(), 3u);
  EXPECT_EQ(l.position("b"), 1u);
  EXPECT_EQ(l.dim_of("c"), 5u);
  EXPECT_EQ(RegisterLayout{}.total_dim(), 1u);
}

TEST(RegisterLayout, RejectsDuplicateEmptyAndZero) {
  EXPECT_THROW((RegisterLayout{{"a", 2}, {"a", 2}}), LayoutError);
  EXPECT_THROW((RegisterLayout{{"", 2}}), LayoutError);
  EXPECT_THROW((RegisterLayout{{"a", 0}}), LayoutError);
}

TEST(RegisterLayout, UnknownLabelThrows) {
  const RegisterLayout l{{"a", 2}};
  EXPECT_THROW(l.position("z"), LayoutError);
  EXPECT_THROW(l.without({"z"}), LayoutError);
}

TEST(RegisterLayout, SelectWithoutConcat) {
  const RegisterLayout l{{"a", 2}, {"b", 3}, {"c", 4}};
  EXPECT_EQ(l.select({"c", "a"}), (RegisterLayout{{"c", 4}, {"a", 2}}));
  EXPECT_EQ(l.without({"b"}), (RegisterLayout{{"a", 2}, {"c", 4}}));
  EXPECT_EQ(l.select({"a"}).concat(l.select({"b"})), (RegisterLayout{{"a", 2}, {"b", 3}}));
  EXPECT_THROW(l.concat(l.select({"a"})), LayoutError);
  EXPECT_TRUE(l.same_registers(l.select({"c", "b", "a"})));
  EXPECT_FALSE(l.same_registers(l.select({"c", "b"})));
}

TEST(RegisterLayout, DimensionGuardIsEnforced) {
  const std::size_t saved = dimension_guard();
  set_dimension_guard(64);
  EXPECT_NO_THROW((RegisterLayout{{"a", 8}, {"b", 8}}));
  EXPECT_THROW((RegisterLayout{{"a", 8}, {"b", 9}}), DimensionGuardError);
  set_dimension_guard(saved);
  EXPECT_THROW(set_dimension_guard(0), DomainError);
}

TEST(PermutationMap, IdentityForSameOrder) {
  const RegisterLayout l{{"a", 2}, {"b", 3}};
  const auto map = permutation_map(l, l);
  std::vector<std::size_t> expected(6);
  std::iota(expected.begin(), expected.end(), 0);
  EXPECT_EQ(map, expected);
}

TEST(PermutationMap, SwapFollowsRowMajorConvention) {
  const RegisterLayout ab{{"a", 2}, {"b", 3}};
  const RegisterLayout ba{{"b", 3}, {"a", 2}};
  const auto map = permutation_map(ab, ba);
  ASSERT_EQ(map.size(), 6u);
  // map[target index] = source index
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 3; ++b) EXPECT_EQ(map[b * 2 + a], a * 3 + b);
  }
}

TEST(PermutationMap, RoundTripIsIdentity) {
  const RegisterLayout x{{"a", 2}, {"b", 3}, {"c", 4}};
  const RegisterLayout y{{"c", 4}, {"a", 2}, {"b", 3}};
  const auto f = permutation_map(x, y);
  const auto g = permutation_map(y, x);
  for (std::size_t k = 0; k < f.size(); ++k) EXPECT_EQ(g[f[k]], k);
}

}  // namespace
}  // namespace qpirlab
