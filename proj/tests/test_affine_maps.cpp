// Copyright 2026 The ifsfit Authors
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
#include <vector>

#include "ifs/affine_maps.hpp"
#include "ifs/baselines.hpp"

namespace ifs {
namespace {

TEST(AffineMapTest, RejectsNonContractingSlope) {
  EXPECT_THROW(AffineMap(0.0, 1.0), InvalidArgument);
  EXPECT_THROW(AffineMap(0.0, -1.0), InvalidArgument);
  EXPECT_THROW(AffineMap(0.0, std::nan("")), InvalidArgument);
  EXPECT_NO_THROW(AffineMap(0.2, 0.999));
}

TEST(AffineMapTest, InvertMapExamples) {
  EXPECT_DOUBLE_EQ(invert_map(AffineMap(0.0, 0.5), 0.25), 0.5);
  EXPECT_DOUBLE_EQ(invert_map(AffineMap(0.5, 0.5), 1.0), 1.0);
  EXPECT_NEAR(invert_map(AffineMap(0.3, 0.4), 0.5), 0.5, 1e-15);
  EXPECT_THROW(invert_map(AffineMap(0.3, 0.0), 0.3), NonInvertibleMap);
}

TEST(AffineMapTest, InverseComposesToIdentity) {
  const AffineMap w(0.125, -0.375);
  for (double x = 0.0; x <= 1.0; x += 0.0625) EXPECT_NEAR(invert_map(w, w(x)), x, 1e-14);
}

TEST(WaveletMapsTest, W1LevelOne) {
  const auto f = build_wavelet_maps_w1(1);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f.maps[0].a(), 0.0);
  EXPECT_EQ(f.maps[0].b(), 0.5);
  EXPECT_EQ(f.maps[1].a(), 0.5);
  EXPECT_EQ(f.maps[1].b(), 0.5);
}

TEST(WaveletMapsTest, W1Sizes) {
  EXPECT_EQ(build_wavelet_maps_w1(5).size(), 62u);
  const auto f = build_wavelet_maps_w1(2);
  ASSERT_EQ(f.size(), 6u);
  const std::vector<double> slopes{0.5, 0.5, 0.25, 0.25, 0.25, 0.25};
  for (std::size_t i = 0; i < slopes.size(); ++i) EXPECT_EQ(f.maps[i].b(), slopes[i]);
  for (int k = 1; k <= 8; ++k) EXPECT_EQ(build_wavelet_maps_w1(k).size(), (1u << (k + 1)) - 2u);
}

TEST(WaveletMapsTest, W2Examples) {
  const auto two = build_wavelet_maps_w2(2);
  ASSERT_EQ(two.size(), 1u);
  EXPECT_EQ(two.maps[0].a(), 0.5);
  EXPECT_EQ(two.maps[0].b(), 0.5);
  EXPECT_EQ(build_wavelet_maps_w2(8).size(), 28u);
  const auto three = build_wavelet_maps_w2(3);
  ASSERT_EQ(three.size(), 3u);
  EXPECT_DOUBLE_EQ(three.maps[0].b(), 0.5);
  EXPECT_DOUBLE_EQ(three.maps[1].b(), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(three.maps[2].b(), 1.0 / 3.0);
}

TEST(WaveletMapsTest, RejectsBadLevel) {
  EXPECT_THROW(build_wavelet_maps_w1(0), InvalidArgument);
  EXPECT_THROW(build_wavelet_maps_w2(1), InvalidArgument);
}

TEST(WaveletMapsTest, EveryMapSendsUnitIntervalIntoItself) {
  for (const auto& f : {build_wavelet_maps_w1(6), build_wavelet_maps_w2(9)}) {
    EXPECT_LT(f.contractivity(), 1.0);
    for (const auto& w : f.maps) {
      EXPECT_GE(std::min(w(0.0), w(1.0)), 0.0);
      EXPECT_LE(std::max(w(0.0), w(1.0)), 1.0 + 1e-15);
    }
  }
}

TEST(QuantileMapsTest, EvenlySpacedSample) {
  const Sample s({0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0}, SupportInterval::unit());
  const auto f = build_quantile_maps(s, 3);
  ASSERT_EQ(f.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(f.maps[i].a(), i / 3.0, 1e-15);
    EXPECT_NEAR(f.maps[i].b(), 1.0 / 3.0, 1e-15);
    EXPECT_EQ(f.merge_counts[i], 1u);
  }
}

TEST(QuantileMapsTest, DuplicateQuantilesMerge) {
  const Sample s({0.0, 0.0, 0.5, 1.0, 1.0}, SupportInterval::unit());
  const auto f = build_quantile_maps(s, 4);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f.merge_counts, (std::vector<std::size_t>{2, 2}));
  EXPECT_EQ(f.intervals, 4u);
  EXPECT_EQ(f.maps[0].a(), 0.0);
  EXPECT_EQ(f.maps[0].b(), 0.5);
  EXPECT_EQ(f.maps[1].a(), 0.5);
}

TEST(QuantileMapsTest, RescalesDeclaredSupport) {
  const Sample s({2.0, 3.0, 4.0, 6.0}, SupportInterval(2.0, 6.0));
  const auto f = build_quantile_maps(s, 2);
  ASSERT_EQ(f.size(), 2u);
  // Unit-scale values (0, .25, .5, 1); the median sits at 0.375.
  EXPECT_NEAR(f.maps[0].b(), 0.375, 1e-15);
  EXPECT_NEAR(f.maps[1].a(), 0.375, 1e-15);
  EXPECT_EQ(f.support, SupportInterval(2.0, 6.0));
}

TEST(QuantileMapsTest, HalfSampleSizeOnBetaData) {
  const auto s = beta_sample({2, 2}, 40, RngSeed{11});
  const auto f = build_quantile_maps(s, s.size() / 2);
  std::size_t total = 0;
  for (auto c : f.merge_counts) total += c;
  EXPECT_EQ(total, 20u);
  EXPECT_LT(f.contractivity(), 1.0);
}

TEST(QuantileMapsTest, DegenerateSamples) {
  EXPECT_THROW(build_quantile_maps(Sample({0.4, 0.4}, SupportInterval::unit()), 2), DegenerateSample);
  EXPECT_THROW(build_quantile_maps(Sample({0.0, 1.0}, SupportInterval::unit()), 1), DegenerateSample);
  EXPECT_THROW(build_quantile_maps(Sample({0.0, 1.0}, SupportInterval::unit()), 0), InvalidArgument);
}

TEST(MapKindTest, ParsesCaseInsensitively) {
  EXPECT_EQ(parse_map_kind("w1"), MapKind::W1);
  EXPECT_EQ(parse_map_kind("Q2"), MapKind::Q2);
  EXPECT_FALSE(parse_map_kind("w3").has_value());
  EXPECT_EQ(to_string(MapKind::W2), "W2");
}

}  // namespace
}  // namespace ifs
