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

// Estimator construction from a sample, the Monte Carlo relative-efficiency
// harness (IFS error / EDF error, averaged over replications) and the
// window-censoring experiment.

#ifndef IFS_EXPERIMENTS_HPP
#define IFS_EXPERIMENTS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "ifs/affine_maps.hpp"
#include "ifs/baselines.hpp"
#include "ifs/errors.hpp"
#include "ifs/ifs_operator.hpp"
#include "ifs/inverse_problem.hpp"
#include "ifs/moments.hpp"
#include "ifs/spectral.hpp"

namespace ifs {

inline constexpr std::size_t kDefaultEvalGrid = 512;

// ---------------------------------------------------------------------------
// Error metrics
// ---------------------------------------------------------------------------

// Interior evaluation points alpha + j (beta - alpha) / (grid + 1), j = 1..grid.
inline std::vector<double> interior_grid(std::size_t grid_size,
                                         const SupportInterval& support = SupportInterval::unit()) {
  if (grid_size < 1) throw InvalidArgument("evaluation grid must have at least one point");
  std::vector<double> x(grid_size);
  for (std::size_t j = 0; j < grid_size; ++j) {
    x[j] = support.from_unit(static_cast<double>(j + 1) / static_cast<double>(grid_size + 1));
  }
  return x;
}

template <class Estimate, class Truth>
double amse(const Estimate& estimate, const Truth& truth, std::size_t grid_size = kDefaultEvalGrid,
            const SupportInterval& support = SupportInterval::unit()) {
  double sum = 0.0;
  for (double x : interior_grid(grid_size, support)) {
    const double e = estimate(x) - truth(x);
    sum += e * e;
  }
  return sum / static_cast<double>(grid_size);
}

template <class Estimate, class Truth>
double sup_distance(const Estimate& estimate, const Truth& truth,
                    std::size_t grid_size = kDefaultEvalGrid,
                    const SupportInterval& support = SupportInterval::unit()) {
  double d = 0.0;
  for (double x : interior_grid(grid_size, support)) d = std::max(d, std::fabs(estimate(x) - truth(x)));
  return d;
}

// ---------------------------------------------------------------------------
// Fitting
// ---------------------------------------------------------------------------

struct FitConfig {
  int w1_i_star = 5;                 // 62 maps
  int w2_i_star = 8;                 // 28 maps
  std::size_t quantile_maps = 0;     // 0: n/2
  int moment_order = kDefaultMomentOrder;
  SolverConfig solver;
};

struct IfsFit {
  IfsModel model;
  std::optional<SolverReport> report;  // empty for Q1, whose p is fixed
};

inline MapFamily build_family(const Sample& sample, MapKind kind, const FitConfig& config) {
  switch (kind) {
    case MapKind::W1: return build_wavelet_maps_w1(config.w1_i_star, sample.support());
    case MapKind::W2: return build_wavelet_maps_w2(config.w2_i_star, sample.support());
    case MapKind::Q1:
    case MapKind::Q2: {
      const std::size_t count =
          config.quantile_maps > 0 ? config.quantile_maps : std::max<std::size_t>(1, sample.size() / 2);
      return build_quantile_maps(sample, count, kind);
    }
  }
  throw InvalidArgument("unknown map family");
}

// Q1 takes p_i = (merged intervals)/N; every other family solves the collage
// problem against the sample moments.
inline IfsFit fit_ifs(const Sample& sample, MapKind kind, const FitConfig& config = {}) {
  MapFamily family = build_family(sample, kind, config);
  if (kind == MapKind::Q1) {
    std::vector<double> p(family.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      p[i] = static_cast<double>(family.merge_counts[i]) / static_cast<double>(family.intervals);
    }
    return {IfsModel(std::move(family), ProbabilityVector(std::move(p))), std::nullopt};
  }
  const auto g = empirical_moments(sample, config.moment_order);
  const auto qp = assemble_quadratic_problem(transfer_matrix(family, g), g);
  auto report = solve_box_constrained(qp, config.solver);
  ProbabilityVector p = report.solution;
  return {IfsModel(std::move(family), std::move(p)), std::move(report)};
}

// ---------------------------------------------------------------------------
// Monte Carlo relative efficiency
// ---------------------------------------------------------------------------

enum class Metric { kAmse, kSup };

inline std::string_view to_string(Metric m) { return m == Metric::kAmse ? "AMSE" : "SUP"; }

struct BenchmarkConfig {
  std::vector<BetaParams> distributions;
  std::vector<std::size_t> sample_sizes;
  int replications = 100;
  std::vector<MapKind> families{MapKind::W1, MapKind::W2, MapKind::Q1, MapKind::Q2};
  FitConfig fit;
  RngSeed seed;
  std::size_t eval_grid_size = kDefaultEvalGrid;
  std::size_t cdf_grid = kDefaultCdfGrid;
  int iterations = kDefaultIterations;
  unsigned threads = 0;  // 0: hardware concurrency
  double max_failure_fraction = 0.05;

  void validate() const {
    if (replications < 1) throw InvalidArgument("replications must be >= 1");
    if (distributions.empty() || sample_sizes.empty() || families.empty()) {
      throw InvalidArgument("benchmark needs at least one distribution, sample size and family");
    }
    for (auto n : sample_sizes)
      if (n < 2) throw InvalidArgument("benchmark sample sizes must be >= 2");
    if (eval_grid_size < 1 || cdf_grid < 2 || iterations < 1) {
      throw InvalidArgument("invalid evaluation grid or iteration count");
    }
  }
};

// The eight laws and the five sample sizes of the published tables.
inline BenchmarkConfig paper_benchmark_config() {
  BenchmarkConfig c;
  c.distributions = {{.9, .1}, {.1, .9}, {.1, .1}, {2, 2}, {5, 5}, {3, 5}, {5, 3}, {1, 1}};
  c.sample_sizes = {10, 20, 30, 50, 100, 250};
  return c;
}

struct EfficiencyRow {
  BetaParams distribution;
  std::size_t n = 0;
  MapKind family = MapKind::W1;
  Metric metric = Metric::kAmse;
  double ratio_percent = 0.0;
  int failures = 0;
};

class HarnessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Seed of replication r for the (distribution, size) cell. Depends only on
// the master seed and the three indices.
inline RngSeed replication_seed(RngSeed master, std::size_t dist, std::size_t size, std::size_t rep) {
  return split_seed(split_seed(split_seed(master, dist), size), rep);
}

namespace detail {

struct ReplicationOutcome {
  // Per family: {amse ratio, sup ratio}, empty on failure.
  std::vector<std::optional<std::pair<double, double>>> ratios;
};

inline ReplicationOutcome run_replication(const BenchmarkConfig& cfg, const BetaParams& law,
                                          std::size_t n, RngSeed seed) {
  ReplicationOutcome out;
  const Sample sample = beta_sample(law, n, seed);
  const EmpiricalCdf edf_fn(sample);
  auto truth = [&law](double x) { return beta_cdf(law, x); };
  const double edf_amse = amse(edf_fn, truth, cfg.eval_grid_size);
  const double edf_sup = sup_distance(edf_fn, truth, cfg.eval_grid_size);
  for (MapKind kind : cfg.families) {
    try {
      if (!(edf_amse > 0.0) || !(edf_sup > 0.0)) throw DegenerateSample("EDF error is zero");
      const auto fit = fit_ifs(sample, kind, cfg.fit);
      const auto cdf = fixed_point_cdf(fit.model, cfg.iterations, cfg.cdf_grid).cdf;
      auto estimate = [&](double x) { return evaluate_cdf(fit.model, cdf, x); };
      const double r_amse = amse(estimate, truth, cfg.eval_grid_size) / edf_amse;
      const double r_sup = sup_distance(estimate, truth, cfg.eval_grid_size) / edf_sup;
      out.ratios.emplace_back(std::pair{r_amse, r_sup});
    } catch (const std::exception&) {
      out.ratios.emplace_back(std::nullopt);
    }
  }
  return out;
}

template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < count; i += threads) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace detail

// Rows come out in config order: distribution, then size, then family, with
// AMSE before SUP. Failed replications are excluded per family and counted.
inline std::vector<EfficiencyRow> run_benchmark(const BenchmarkConfig& config) {
  config.validate();
  std::vector<EfficiencyRow> rows;
  const auto reps = static_cast<std::size_t>(config.replications);
  for (std::size_t d = 0; d < config.distributions.size(); ++d) {
    const auto& law = config.distributions[d];
    for (std::size_t s = 0; s < config.sample_sizes.size(); ++s) {
      const std::size_t n = config.sample_sizes[s];
      std::vector<detail::ReplicationOutcome> outcomes(reps);
      detail::parallel_for(reps, config.threads, [&](std::size_t r) {
        outcomes[r] = detail::run_replication(config, law, n, replication_seed(config.seed, d, s, r));
      });
      for (std::size_t f = 0; f < config.families.size(); ++f) {
        double sum_amse = 0.0, sum_sup = 0.0;
        int used = 0, failures = 0;
        for (const auto& o : outcomes) {
          if (!o.ratios[f]) {
            ++failures;
            continue;
          }
          sum_amse += o.ratios[f]->first;
          sum_sup += o.ratios[f]->second;
          ++used;
        }
        if (failures > config.max_failure_fraction * static_cast<double>(reps) || used == 0) {
          throw HarnessError(law.label() + ", n=" + std::to_string(n) + ", " +
                             std::string(to_string(config.families[f])) + ": " +
                             std::to_string(failures) + " of " + std::to_string(reps) +
                             " replications failed");
        }
        for (Metric m : {Metric::kAmse, Metric::kSup}) {
          const double sum = m == Metric::kAmse ? sum_amse : sum_sup;
          rows.push_back({law, n, config.families[f], m, 100.0 * sum / used, failures});
        }
      }
    }
  }
  return rows;
}

inline void write_benchmark_csv(std::ostream& out, const std::vector<EfficiencyRow>& rows) {
  out << "distribution,n,family,metric,ratio_percent,failures\n";
  const auto old_precision = out.precision(10);
  for (const auto& r : rows) {
    out << r.distribution.label() << ',' << r.n << ',' << to_string(r.family) << ','
        << to_string(r.metric) << ',' << r.ratio_percent << ',' << r.failures << '\n';
  }
  out.precision(old_precision);
}

// ---------------------------------------------------------------------------
// Window censoring
// ---------------------------------------------------------------------------

// Disjoint open observation windows.
class CensorWindows {
 public:
  explicit CensorWindows(std::vector<std::pair<double, double>> windows) : windows_(std::move(windows)) {
    if (windows_.empty()) throw InvalidArgument("at least one observation window is required");
    std::sort(windows_.begin(), windows_.end());
    for (std::size_t i = 0; i < windows_.size(); ++i) {
      if (!(windows_[i].first < windows_[i].second)) throw InvalidArgument("empty observation window");
      if (i > 0 && windows_[i].first < windows_[i - 1].second) {
        throw InvalidArgument("observation windows overlap");
      }
    }
  }

  // (.1,.15) U (.37,.43) U (.7,.8)
  static CensorWindows paper() { return CensorWindows({{0.1, 0.15}, {0.37, 0.43}, {0.7, 0.8}}); }

  bool contains(double x) const {
    return std::any_of(windows_.begin(), windows_.end(),
                       [x](const auto& w) { return x > w.first && x < w.second; });
  }

  const std::vector<std::pair<double, double>>& windows() const { return windows_; }

  // Closed complementary intervals of `support` on which nothing is observed.
  std::vector<std::pair<double, double>> gaps(const SupportInterval& support) const {
    std::vector<std::pair<double, double>> g;
    double left = support.alpha();
    for (const auto& w : windows_) {
      if (w.first > left) g.emplace_back(left, w.first);
      left = std::max(left, w.second);
    }
    if (left < support.beta()) g.emplace_back(left, support.beta());
    return g;
  }

 private:
  std::vector<std::pair<double, double>> windows_;
};

inline Sample apply_window_censoring(const Sample& sample, const CensorWindows& windows) {
  for (const auto& w : windows.windows()) {
    if (w.first < sample.support().alpha() || w.second > sample.support().beta()) {
      throw InvalidArgument("observation window extends beyond the declared support");
    }
  }
  std::vector<double> kept;
  for (double x : sample.values())
    if (windows.contains(x)) kept.push_back(x);
  if (kept.empty()) throw NoData("no observation falls inside the observation windows");
  return Sample(std::move(kept), sample.support());
}

struct MissingDataConfig {
  std::size_t n = 400;
  RngSeed seed;
  BetaParams law{2.0, 2.0};
  CensorWindows windows = CensorWindows::paper();
  FitConfig fit;
  std::size_t eval_grid_size = kDefaultEvalGrid;
  std::size_t cdf_grid = kDefaultCdfGrid;
  int iterations = kDefaultIterations;
  int fourier_terms = kDefaultFourierTerms;
  std::size_t curve_points = 201;
};

struct CdfCurvePoint {
  double x, true_cdf, edf, ifs_cdf;
};
struct DensityCurvePoint {
  double x, true_pdf, kernel, ifs_pdf;
};

struct MissingDataReport {
  std::size_t drawn = 0;
  std::size_t retained = 0;
  double ifs_amse = 0.0, edf_amse = 0.0;
  double ifs_sup = 0.0, edf_sup = 0.0;
  double amse_ratio_percent = 0.0;
  double sup_ratio_percent = 0.0;
  double collage_objective = 0.0;
  int fourier_terms_used = 0;
  std::vector<double> censored_values;
  std::vector<CdfCurvePoint> cdf_curve;
  std::vector<DensityCurvePoint> density_curve;
  std::optional<IfsModel> model;
  std::optional<PiecewiseCdf> cdf;
};

// Draws from the law, keeps only what falls in the windows and fits W1 on the
// censored sample with the known support [0, 1].
inline MissingDataReport run_missing_data_experiment(const MissingDataConfig& config) {
  if (config.n < 1) throw InvalidArgument("missing-data experiment needs n >= 1");
  const Sample full = beta_sample(config.law, config.n, config.seed);
  const Sample censored = apply_window_censoring(full, config.windows);

  MissingDataReport report;
  report.drawn = full.size();
  report.retained = censored.size();
  report.censored_values.assign(censored.values().begin(), censored.values().end());

  const auto fit = fit_ifs(censored, MapKind::W1, config.fit);
  const auto cdf = fixed_point_cdf(fit.model, config.iterations, config.cdf_grid).cdf;
  report.collage_objective = fit.report ? fit.report->objective : 0.0;

  const EmpiricalCdf edf_fn(censored);
  const auto& law = config.law;
  auto truth = [&law](double x) { return beta_cdf(law, x); };
  auto estimate = [&](double x) { return evaluate_cdf(fit.model, cdf, x); };
  report.ifs_amse = amse(estimate, truth, config.eval_grid_size);
  report.edf_amse = amse(edf_fn, truth, config.eval_grid_size);
  report.ifs_sup = sup_distance(estimate, truth, config.eval_grid_size);
  report.edf_sup = sup_distance(edf_fn, truth, config.eval_grid_size);
  report.amse_ratio_percent = 100.0 * report.ifs_amse / report.edf_amse;
  report.sup_ratio_percent = 100.0 * report.ifs_sup / report.edf_sup;

  const auto density = fit_density(fit.model, censored.size(), config.fourier_terms);
  report.fourier_terms_used = density.m;
  std::optional<KernelDensity> kernel;
  if (censored.size() >= 2) {
    try {
      kernel.emplace(censored);
    } catch (const DegenerateSample&) {
    }
  }
  const std::size_t points = std::max<std::size_t>(config.curve_points, 2);
  for (std::size_t j = 0; j < points; ++j) {
    const double x = static_cast<double>(j) / static_cast<double>(points - 1);
    report.cdf_curve.push_back({x, truth(x), edf_fn(x), estimate(x)});
    report.density_curve.push_back({x, beta_pdf(law, x), kernel ? (*kernel)(x) : 0.0,
                                    density_estimate(density, fit.model.support(), x)});
  }
  report.model = fit.model;
  report.cdf = cdf;
  return report;
}

inline void write_cdf_curve_csv(std::ostream& out, const std::vector<CdfCurvePoint>& curve) {
  out << "x,true_cdf,edf,ifs_cdf\n";
  const auto old_precision = out.precision(12);
  for (const auto& p : curve) out << p.x << ',' << p.true_cdf << ',' << p.edf << ',' << p.ifs_cdf << '\n';
  out.precision(old_precision);
}

inline void write_density_curve_csv(std::ostream& out, const std::vector<DensityCurvePoint>& curve) {
  out << "x,true_pdf,kernel,ifs_pdf\n";
  const auto old_precision = out.precision(12);
  for (const auto& p : curve) out << p.x << ',' << p.true_pdf << ',' << p.kernel << ',' << p.ifs_pdf << '\n';
  out.precision(old_precision);
}

}  // namespace ifs

#endif  // IFS_EXPERIMENTS_HPP
