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

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "ifs/baselines.hpp"
#include "ifs/ifs_operator.hpp"

namespace ifs {
namespace {

IfsModel dyadic(double p0 = 0.5, SupportInterval support = SupportInterval::unit()) {
  return IfsModel(build_wavelet_maps_w1(1, support), ProbabilityVector({p0, 1.0 - p0}));
}

IfsModel single_map(double a, double b) {
  MapFamily f;
  f.maps = {AffineMap(a, b)};
  f.merge_counts = {1};
  f.intervals = 1;
  return IfsModel(std::move(f), ProbabilityVector({1.0}));
}

TEST(IfsModelTest, SizeMismatchThrows) {
  EXPECT_THROW(IfsModel(build_wavelet_maps_w1(2), ProbabilityVector({0.5, 0.5})), InvalidArgument);
}

TEST(PiecewiseCdfTest, Validation) {
  EXPECT_THROW(PiecewiseCdf({0.0, 0.5}), InvalidArgument);
  EXPECT_THROW(PiecewiseCdf({0.0, 0.6, 0.4, 1.0}), InvalidArgument);
  EXPECT_THROW(PiecewiseCdf({0.1, 1.0}), InvalidArgument);
  const PiecewiseCdf f({0.0, 0.25, 1.0});
  EXPECT_DOUBLE_EQ(f(-1.0), 0.0);
  EXPECT_DOUBLE_EQ(f(0.25), 0.125);
  EXPECT_DOUBLE_EQ(f(0.75), 0.625);
  EXPECT_DOUBLE_EQ(f(2.0), 1.0);
}

TEST(ApplyTTest, UniformIsFixedByDyadicModel) {
  const auto u = PiecewiseCdf::uniform(512);
  const auto t = apply_T(dyadic(), u);
  EXPECT_EQ(t.values().front(), 0.0);
  EXPECT_EQ(t.values().back(), 1.0);
  EXPECT_LT(t.sup_distance(u), 1e-15);
}

TEST(ApplyTTest, HalvingMap) {
  const auto t = apply_T(single_map(0.0, 0.5), PiecewiseCdf::uniform(512));
  for (std::size_t j = 0; j <= t.grid(); ++j) {
    const double x = t.abscissa(j);
    EXPECT_NEAR(t.values()[j], std::min(2.0 * x, 1.0), 1e-15) << x;
  }
}

TEST(ApplyTTest, ConstantMapGivesStep) {
  const auto t = apply_T(single_map(0.3, 0.0), PiecewiseCdf::uniform(10));
  EXPECT_DOUBLE_EQ(t.values()[2], 0.0);
  EXPECT_DOUBLE_EQ(t.values()[3], 1.0);
}

TEST(ApplyTTest, ReflectingMap) {
  // w(x) = 1 - x/2 pushes the uniform law onto [1/2, 1].
  const auto t = apply_T(single_map(1.0, -0.5), PiecewiseCdf::uniform(512));
  for (std::size_t j = 0; j <= t.grid(); ++j) {
    const double x = t.abscissa(j);
    EXPECT_NEAR(t.values()[j], std::clamp(2.0 * x - 1.0, 0.0, 1.0), 1e-12) << x;
  }
}

TEST(FixedPointTest, DyadicModelStaysUniform) {
  for (int iterations : {1, 5, 12}) {
    const auto r = fixed_point_cdf(dyadic(), iterations, 512);
    EXPECT_LT(r.cdf.sup_distance(PiecewiseCdf::uniform(512)), 1e-15);
    EXPECT_EQ(r.successive_distances.size(), static_cast<std::size_t>(iterations));
  }
}

TEST(FixedPointTest, SuccessiveDistancesShrink) {
  const auto r = fixed_point_cdf(dyadic(0.3), 10, 512);
  EXPECT_GT(r.successive_distances.front(), 0.0);
  for (std::size_t k = 1; k < r.successive_distances.size(); ++k) {
    EXPECT_LE(r.successive_distances[k], r.successive_distances[k - 1] + 1e-15);
  }
}

TEST(FixedPointTest, QuantileModelTracksEdf) {
  const auto s = beta_sample({1, 1}, 200, RngSeed{41});
  const std::size_t n_maps = s.size() / 2;
  auto fam = build_quantile_maps(s, n_maps);
  std::vector<double> p(fam.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = static_cast<double>(fam.merge_counts[i]) / n_maps;
  const IfsModel model(std::move(fam), ProbabilityVector(p));
  const auto cdf = fixed_point_cdf(model).cdf;
  const EmpiricalCdf edf_fn(s);
  double d = 0.0;
  for (double x : s.values()) {
    d = std::max(d, std::fabs(evaluate_cdf(model, cdf, x) - edf_fn(x)));
    d = std::max(d, std::fabs(evaluate_cdf(model, cdf, x - 1e-12) - edf_fn(x - 1e-12)));
  }
  EXPECT_LE(d, 2.0 / n_maps);
}

TEST(FixedPointTest, RejectsBadArguments) {
  EXPECT_THROW(fixed_point_cdf(dyadic(), 0), InvalidArgument);
  EXPECT_THROW(fixed_point_cdf(dyadic(), 3, 1), InvalidArgument);
}

TEST(EvaluateCdfTest, OriginalCoordinates) {
  const auto model = dyadic(0.5, SupportInterval(-2.0, 2.0));
  const auto cdf = fixed_point_cdf(model).cdf;
  EXPECT_EQ(evaluate_cdf(model, cdf, -2.0), 0.0);
  EXPECT_EQ(evaluate_cdf(model, cdf, -3.0), 0.0);
  EXPECT_EQ(evaluate_cdf(model, cdf, 2.0), 1.0);
  EXPECT_NEAR(evaluate_cdf(model, cdf, 1.0), 0.75, 1e-15);
  EXPECT_NEAR(evaluate_cdf(model, cdf, -1.3), 0.175, 1e-12);
}

TEST(ApplyTTest, RandomModelsKeepCdfInvariants) {
  std::mt19937_64 gen(101);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    MapFamily fam;
    const int n_maps = 1 + trial % 6;
    std::vector<double> p(n_maps);
    double total = 0.0;
    for (int i = 0; i < n_maps; ++i) {
      const double b = (u(gen) < 0.2 ? -1.0 : 1.0) * 0.95 * u(gen);
      const double lo = std::max(0.0, -b);
      const double hi = std::min(1.0, 1.0 - b);
      fam.maps.emplace_back(lo + (hi - lo) * u(gen), b);
      total += (p[i] = u(gen) + 1e-3);
    }
    for (auto& v : p) v /= total;
    fam.merge_counts.assign(n_maps, 1);
    fam.intervals = n_maps;
    const IfsModel model(std::move(fam), ProbabilityVector(p));
    const auto r = fixed_point_cdf(model, 4, 128);
    const auto v = r.cdf.values();
    EXPECT_EQ(v.front(), 0.0);
    EXPECT_EQ(v.back(), 1.0);
    EXPECT_TRUE(std::is_sorted(v.begin(), v.end()));
  }
}

}  // namespace
}  // namespace ifs
