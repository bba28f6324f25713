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
#include <sstream>
#include <vector>

#include "ifs/experiments.hpp"

namespace ifs {
namespace {

// 3x^2 - 2x^3 evaluated directly.
double beta22_cdf(double x) { return x * x * (3.0 - 2.0 * x); }

TEST(MetricsTest, InteriorGrid) {
  const auto g = interior_grid(3, SupportInterval(0.0, 4.0));
  EXPECT_EQ(g, (std::vector<double>{1.0, 2.0, 3.0}));
  EXPECT_THROW(interior_grid(0), InvalidArgument);
}

TEST(MetricsTest, AmseExamples) {
  auto truth = [](double x) { return beta22_cdf(x); };
  auto offset = [](double x) { return beta22_cdf(x) + 0.1; };
  EXPECT_EQ(amse(truth, truth), 0.0);
  EXPECT_NEAR(amse(offset, truth), 0.01, 1e-15);
  const auto s = beta_sample({1, 1}, 10, RngSeed{3});
  const EmpiricalCdf f(s);
  const double e = amse(f, [](double x) { return x; });
  EXPECT_GT(e, 0.0);
  EXPECT_LT(e, 0.25);
}

TEST(MetricsTest, SupExamples) {
  auto truth = [](double x) { return beta22_cdf(x); };
  auto offset = [](double x) { return beta22_cdf(x) + 0.1; };
  EXPECT_EQ(sup_distance(truth, truth), 0.0);
  EXPECT_NEAR(sup_distance(offset, truth), 0.1, 1e-15);
  const auto s = beta_sample({2, 2}, 25, RngSeed{5});
  const EmpiricalCdf f(s);
  EXPECT_GE(sup_distance(f, truth), std::sqrt(amse(f, truth)));
}

TEST(FitTest, QuantileFitOnFourPoints) {
  const Sample s({0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0}, SupportInterval::unit());
  FitConfig cfg;
  cfg.quantile_maps = 2;
  const auto fit = fit_ifs(s, MapKind::Q1, cfg);
  EXPECT_FALSE(fit.report.has_value());
  const auto& maps = fit.model.family().maps;
  ASSERT_EQ(maps.size(), 2u);
  EXPECT_NEAR(maps[0].a(), 0.0, 1e-15);
  EXPECT_NEAR(maps[0].b(), 0.5, 1e-15);
  EXPECT_NEAR(maps[1].a(), 0.5, 1e-15);
  EXPECT_NEAR(maps[1].b(), 0.5, 1e-15);
  EXPECT_DOUBLE_EQ(fit.model.probabilities()[0], 0.5);
  EXPECT_DOUBLE_EQ(fit.model.probabilities()[1], 0.5);
}

TEST(FitTest, DefaultFamilySizes) {
  const auto s = beta_sample({2, 2}, 30, RngSeed{1});
  EXPECT_EQ(fit_ifs(s, MapKind::W1).model.size(), 62u);
  EXPECT_EQ(fit_ifs(s, MapKind::W2).model.size(), 28u);
  const auto q2 = fit_ifs(s, MapKind::Q2);
  EXPECT_TRUE(q2.report.has_value());
  std::size_t total = 0;
  for (auto c : q2.model.family().merge_counts) total += c;
  EXPECT_EQ(total, 15u);
  for (auto kind : {MapKind::W1, MapKind::W2, MapKind::Q1, MapKind::Q2}) {
    const auto fit = fit_ifs(s, kind);
    EXPECT_EQ(fit.model.size(), fit.model.probabilities().size());
    EXPECT_LT(fit.model.contractivity(), 1.0);
  }
}

TEST(BenchmarkTest, DeterministicAcrossThreadCounts) {
  BenchmarkConfig cfg;
  cfg.distributions = {{2, 2}, {.9, .1}};
  cfg.sample_sizes = {10, 20};
  cfg.replications = 6;
  cfg.threads = 1;
  const auto serial = run_benchmark(cfg);
  cfg.threads = 4;
  const auto parallel = run_benchmark(cfg);
  ASSERT_EQ(serial.size(), 2u * 2u * 4u * 2u);
  for (std::size_t i = 0; i < serial.size(); ++i) {
    EXPECT_EQ(serial[i].ratio_percent, parallel[i].ratio_percent);
    EXPECT_EQ(serial[i].failures, parallel[i].failures);
  }
  EXPECT_EQ(serial[0].family, MapKind::W1);
  EXPECT_EQ(serial[0].metric, Metric::kAmse);
  EXPECT_EQ(serial[1].metric, Metric::kSup);
  std::ostringstream a, b;
  write_benchmark_csv(a, serial);
  write_benchmark_csv(b, parallel);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str().substr(0, a.str().find('\n')), "distribution,n,family,metric,ratio_percent,failures");
}

TEST(BenchmarkTest, TooManyFailuresIsHarnessError) {
  BenchmarkConfig cfg;
  cfg.distributions = {{2, 2}};
  cfg.sample_sizes = {10};
  cfg.families = {MapKind::W1};
  cfg.fit.w1_i_star = 0;  // every fit throws
  cfg.replications = 4;
  EXPECT_THROW(run_benchmark(cfg), HarnessError);
  cfg.replications = 0;
  EXPECT_THROW(run_benchmark(cfg), InvalidArgument);
}

TEST(BenchmarkTest, UniformQ2LargeSampleBand) {
  BenchmarkConfig cfg;
  cfg.distributions = {{1, 1}};
  cfg.sample_sizes = {250};
  cfg.families = {MapKind::Q2};
  const auto rows = run_benchmark(cfg);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_GE(rows[1].ratio_percent, 85.0);
  EXPECT_LE(rows[1].ratio_percent, 105.0);
}

TEST(CensoringTest, Examples) {
  const Sample s({0.12, 0.5, 0.75}, SupportInterval::unit());
  const auto kept = apply_window_censoring(s, CensorWindows::paper());
  EXPECT_EQ(std::vector<double>(kept.values().begin(), kept.values().end()), (std::vector<double>{0.12, 0.75}));
  const Sample t({0.2, 0.4, 0.9}, SupportInterval::unit());
  const auto all = apply_window_censoring(t, CensorWindows({{0.0, 1.0}}));
  EXPECT_EQ(all.size(), 3u);
  EXPECT_THROW(apply_window_censoring(Sample({0.5}, SupportInterval::unit()), CensorWindows::paper()), NoData);
  EXPECT_THROW(apply_window_censoring(s, CensorWindows({{0.5, 1.5}})), InvalidArgument);
  EXPECT_THROW(CensorWindows({{0.1, 0.3}, {0.2, 0.4}}), InvalidArgument);
}

TEST(CensoringTest, RetainedFractionMatchesWindowMass) {
  const auto windows = CensorWindows::paper();
  double mass = 0.0;
  for (const auto& [lo, hi] : windows.windows()) mass += beta22_cdf(hi) - beta22_cdf(lo);
  EXPECT_NEAR(mass, 0.231042, 1e-6);
  const std::size_t n = 500;
  const auto s = beta_sample({2, 2}, n, RngSeed{21});
  const auto kept = apply_window_censoring(s, CensorWindows::paper());
  const double sd = std::sqrt(mass * (1.0 - mass) / n);
  EXPECT_NEAR(static_cast<double>(kept.size()) / n, mass, 4.0 * sd);
}

TEST(CensoringTest, GapsComplementWindows) {
  const auto gaps = CensorWindows::paper().gaps(SupportInterval::unit());
  ASSERT_EQ(gaps.size(), 4u);
  EXPECT_EQ(gaps[0], (std::pair{0.0, 0.1}));
  EXPECT_EQ(gaps[3], (std::pair{0.8, 1.0}));
}

TEST(MissingDataTest, ShapeOfReport) {
  MissingDataConfig cfg;
  const auto r = run_missing_data_experiment(cfg);
  EXPECT_EQ(r.drawn, 400u);
  EXPECT_EQ(r.retained, r.censored_values.size());
  EXPECT_LT(r.amse_ratio_percent, 50.0);
  EXPECT_LT(r.sup_ratio_percent, 75.0);
  ASSERT_TRUE(r.model.has_value());
  EXPECT_EQ(r.model->size(), 62u);
  EXPECT_EQ(r.cdf_curve.size(), 201u);
  EXPECT_EQ(r.density_curve.size(), 201u);

  const EmpiricalCdf edf_fn(Sample(r.censored_values, SupportInterval::unit()));
  for (const auto& [lo, hi] : cfg.windows.gaps(SupportInterval::unit())) {
    for (int j = 0; j <= 50; ++j) EXPECT_EQ(edf_fn(lo + (hi - lo) * j / 50.0), edf_fn(lo));
    EXPECT_GT(evaluate_cdf(*r.model, *r.cdf, hi), evaluate_cdf(*r.model, *r.cdf, lo));
  }

  std::ostringstream cdf_out, pdf_out;
  write_cdf_curve_csv(cdf_out, r.cdf_curve);
  write_density_curve_csv(pdf_out, r.density_curve);
  EXPECT_EQ(cdf_out.str().substr(0, 22), "x,true_cdf,edf,ifs_cdf");
  EXPECT_EQ(pdf_out.str().substr(0, 25), "x,true_pdf,kernel,ifs_pdf");
}

TEST(MissingDataTest, Deterministic) {
  MissingDataConfig cfg;
  cfg.seed = RngSeed{99};
  const auto a = run_missing_data_experiment(cfg);
  const auto b = run_missing_data_experiment(cfg);
  EXPECT_EQ(a.amse_ratio_percent, b.amse_ratio_percent);
  EXPECT_EQ(a.censored_values, b.censored_values);
}

}  // namespace
}  // namespace ifs
