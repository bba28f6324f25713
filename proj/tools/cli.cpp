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


#include "cli.hpp"

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "bench_config.hpp"
#include "ifs/ifs.hpp"
#include "json.hpp"

namespace ifs::cli {
namespace {

constexpr const char* kFamilyList = "{w1,w2,q1,q2}";

struct Globals {
  std::uint64_t seed = RngSeed{}.value;
  std::string support;
  std::size_t grid = kDefaultCdfGrid;
  int moments = kDefaultMomentOrder;
  int iterations = kDefaultIterations;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* grid_opt = nullptr;
  CLI::Option* moments_opt = nullptr;
  CLI::Option* iterations_opt = nullptr;
};

struct FitOptions {
  std::string input;
  std::string family;
  int i_star = 0;
  std::size_t quantiles = 0;
  std::string out;
};

struct EvalOptions {
  std::string model;
  std::optional<double> at;
  std::string grid_out;
  bool density = false;
  std::size_t points = 201;
  std::size_t sample_size = 0;
  int terms = kDefaultFourierTerms;
};

struct BenchmarkOptions {
  std::string config;
  std::string out = "benchmark.csv";
  int replications = 0;
  std::vector<std::string> families;
  unsigned threads = 0;
  CLI::Option* threads_opt = nullptr;
};

struct MissingOptions {
  std::size_t n = 400;
  std::string out_dir = "missing_demo";
};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return "";
  return std::string(s.substr(first, s.find_last_not_of(" \t\r\n") - first + 1));
}

std::optional<double> parse_double(const std::string& text) {
  double v = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) return std::nullopt;
  return v;
}

MapKind parse_family(const std::string& name) {
  const auto kind = parse_map_kind(name);
  if (!kind) throw UsageError("unknown family '" + name + "'; expected one of " + kFamilyList);
  return *kind;
}

std::optional<SupportInterval> parse_support(const std::string& text) {
  if (text.empty()) return std::nullopt;
  const auto comma = text.find(',');
  const auto lo = comma == std::string::npos ? std::nullopt : parse_double(trim(text.substr(0, comma)));
  const auto hi = comma == std::string::npos ? std::nullopt : parse_double(trim(text.substr(comma + 1)));
  if (!lo || !hi || !(*lo < *hi)) throw UsageError("--support expects 'alpha,beta' with alpha < beta");
  return SupportInterval(*lo, *hi);
}

std::string format(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

std::ofstream open_output(const std::string& path) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path);
  if (!out) throw DataError("cannot open " + path + " for writing");
  return out;
}

Sample make_sample(std::vector<double> values, const Globals& g, std::ostream& err) {
  if (auto support = parse_support(g.support)) {
    try {
      return Sample(std::move(values), *support);
    } catch (const InvalidArgument& e) {
      throw DataError(e.what());
    }
  }
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (*lo >= 0.0 && *hi <= 1.0) return Sample(std::move(values), SupportInterval::unit());
  err << "warning: no --support given and the data leave [0, 1]; using the sample range [" << *lo << ", "
      << *hi << "]. The estimator then approximates a distribution whose support is exactly that range.\n";
  return Sample::with_range_support(std::move(values));
}

void print_probabilities(std::ostream& err, std::span<const double> p) {
  err << "p = [";
  for (std::size_t i = 0; i < p.size(); ++i) err << (i ? ", " : "") << std::setprecision(6) << p[i];
  err << "]\n";
}

void print_report(std::ostream& err, const SolverReport& r) {
  err << "S(p*) = " << std::setprecision(6) << r.objective << '\n'
      << "solver: iterations=" << r.iterations << " converged=" << (r.converged ? "yes" : "no")
      << " lambda=" << r.lambda << " escalations=" << r.escalations
      << " |1-sum p|=" << r.penalty_residual << '\n';
}

int cmd_fit(const FitOptions& o, const Globals& g, std::ostream& out, std::ostream& err) {
  const MapKind kind = parse_family(o.family);
  const bool quantile = kind == MapKind::Q1 || kind == MapKind::Q2;
  if (quantile && o.i_star > 0) throw UsageError("--i-star applies to w1 and w2 only");
  if (!quantile && o.quantiles > 0) throw UsageError("--quantiles applies to q1 and q2 only");

  std::ifstream in(o.input);
  if (!in) throw DataError("cannot open input file " + o.input);
  const Sample sample = make_sample(read_sample_csv(in, o.input), g, err);

  FitConfig cfg;
  cfg.moment_order = g.moments;
  if (o.i_star > 0) (kind == MapKind::W1 ? cfg.w1_i_star : cfg.w2_i_star) = o.i_star;
  cfg.quantile_maps = o.quantiles;

  IfsFit fit = [&] {
    try {
      return fit_ifs(sample, kind, cfg);
    } catch (const NonConvergence& e) {
      print_report(err, e.report());
      throw;
    }
  }();
  err << "family " << to_string(kind) << " with " << fit.model.size() << " maps, n = " << sample.size() << '\n';
  if (fit.report) {
    print_report(err, *fit.report);
  } else {
    err << "quantile family: p fixed at 1/N (N = " << fit.model.family().intervals << ")\n";
  }
  print_probabilities(err, fit.model.probabilities().values());

  auto j = model_to_json(fit.model);
  j["sample_size"] = sample.size();
  auto file = open_output(o.out);
  file << j.dump(2) << '\n';
  if (!file) throw DataError("failed writing " + o.out);
  out << o.out << '\n';
  return kOk;
}

int cmd_eval(const EvalOptions& o, const Globals& g, std::ostream& out, std::ostream& err) {
  if (!o.at && o.grid_out.empty()) throw UsageError("eval needs --at x or --grid-out file");
  std::ifstream in(o.model);
  if (!in) throw SchemaError("cannot open model file " + o.model);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError("model file " + o.model + " is not valid JSON: " + e.what());
  }
  const IfsModel model = model_from_json(j);
  const auto cdf = fixed_point_cdf(model, g.iterations, g.grid).cdf;

  std::optional<FourierDensity> density;
  if (o.density) {
    std::size_t n = o.sample_size;
    if (n == 0 && j.contains("sample_size") && j["sample_size"].is_number_unsigned()) n = j["sample_size"].get<std::size_t>();
    if (n == 0) {
      n = 100;
      err << "warning: model records no sample size; term selection uses n = 100 (override with --n)\n";
    }
    density = fit_density(model, n, o.terms);
    err << "Fourier terms: " << density->m << (density->truncated ? " (truncated: no admissible m)" : "") << '\n';
    if (!density->char_fn_converged) err << "warning: characteristic-function iteration did not converge\n";
  }

  if (o.at) {
    out << format(evaluate_cdf(model, cdf, *o.at)) << '\n';
    if (density) out << format(density_estimate(*density, model.support(), *o.at)) << '\n';
  }
  if (!o.grid_out.empty()) {
    if (o.points < 2) throw UsageError("--points must be >= 2");
    auto file = open_output(o.grid_out);
    file << (density ? "x,cdf,density\n" : "x,cdf\n") << std::setprecision(17);
    const auto& s = model.support();
    for (std::size_t i = 0; i < o.points; ++i) {
      const double x = s.from_unit(static_cast<double>(i) / static_cast<double>(o.points - 1));
      file << x << ',' << evaluate_cdf(model, cdf, x);
      if (density) file << ',' << density_estimate(*density, s, x);
      file << '\n';
    }
    if (!file) throw DataError("failed writing " + o.grid_out);
  }
  return kOk;
}

void print_benchmark_summary(std::ostream& out, const BenchmarkConfig& cfg,
                             const std::vector<EfficiencyRow>& rows) {
  for (Metric m : {Metric::kAmse, Metric::kSup}) {
    out << to_string(m) << " ratio (%), IFS vs EDF, " << cfg.replications << " replications\n";
    out << std::left << std::setw(14) << "distribution" << std::right << std::setw(6) << "n";
    for (MapKind k : cfg.families) out << std::setw(10) << to_string(k);
    out << '\n';
    std::map<std::pair<std::string, std::size_t>, std::vector<double>> cells;
    std::vector<std::pair<std::string, std::size_t>> order;
    for (const auto& r : rows) {
      if (r.metric != m) continue;
      const auto key = std::pair{r.distribution.label(), r.n};
      if (!cells.count(key)) order.push_back(key);
      cells[key].push_back(r.ratio_percent);
    }
    for (const auto& key : order) {
      out << std::left << std::setw(14) << key.first << std::right << std::setw(6) << key.second;
      for (double v : cells[key]) out << std::setw(10) << std::fixed << std::setprecision(2) << v;
      out << std::defaultfloat << '\n';
    }
    out << '\n';
  }
}

int cmd_benchmark(const BenchmarkOptions& o, const Globals& g, std::ostream& out, std::ostream& err) {
  BenchmarkConfig cfg;
  try {
    cfg = o.config.empty() ? paper_benchmark_config() : load_bench_config(o.config);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  if (o.replications > 0) cfg.replications = o.replications;
  if (!o.families.empty()) {
    cfg.families.clear();
    for (const auto& f : o.families) cfg.families.push_back(parse_family(f));
  }
  if (o.config.empty() || g.seed_opt->count()) cfg.seed = RngSeed{g.seed};
  if (g.moments_opt->count()) cfg.fit.moment_order = g.moments;
  if (g.grid_opt->count()) cfg.cdf_grid = g.grid;
  if (g.iterations_opt->count()) cfg.iterations = g.iterations;
  if (o.threads_opt->count()) cfg.threads = o.threads;

  err << "running " << cfg.distributions.size() * cfg.sample_sizes.size() << " cells x "
      << cfg.replications << " replications\n";
  const auto rows = run_benchmark(cfg);
  auto file = open_output(o.out);
  write_benchmark_csv(file, rows);
  if (!file) throw DataError("failed writing " + o.out);
  print_benchmark_summary(out, cfg, rows);
  int failures = 0;
  for (const auto& r : rows) failures += r.metric == Metric::kAmse ? r.failures : 0;
  if (failures > 0) err << failures << " failed replications were excluded\n";
  return kOk;
}

int cmd_missing_demo(const MissingOptions& o, const Globals& g, std::ostream& out, std::ostream&) {
  if (o.n < 1) throw UsageError("--n must be >= 1");
  MissingDataConfig cfg;
  cfg.n = o.n;
  cfg.seed = RngSeed{g.seed};
  cfg.fit.moment_order = g.moments;
  cfg.cdf_grid = g.grid;
  cfg.iterations = g.iterations;
  const auto r = run_missing_data_experiment(cfg);

  const std::filesystem::path dir(o.out_dir);
  std::filesystem::create_directories(dir);
  {
    auto f = open_output((dir / "cdf_curve.csv").string());
    write_cdf_curve_csv(f, r.cdf_curve);
  }
  {
    auto f = open_output((dir / "density_curve.csv").string());
    write_density_curve_csv(f, r.density_curve);
  }
  std::ostringstream summary;
  summary << std::setprecision(6) << "observed " << r.retained << " of " << r.drawn
          << " draws inside the windows\n"
          << "AMSE: ifs " << r.ifs_amse << ", edf " << r.edf_amse << ", ratio " << r.amse_ratio_percent << "%\n"
          << "SUP:  ifs " << r.ifs_sup << ", edf " << r.edf_sup << ", ratio " << r.sup_ratio_percent << "%\n"
          << "collage distance " << r.collage_objective << ", Fourier terms " << r.fourier_terms_used << '\n';
  auto f = open_output((dir / "summary.txt").string());
  f << summary.str();
  out << summary.str();
  return kOk;
}

}  // namespace

std::vector<double> read_sample_csv(std::istream& in, const std::string& name) {
  std::vector<double> values;
  std::string line;
  int line_no = 0;
  bool seen_data_line = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    const std::string text = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (text.empty()) continue;
    const bool first = !seen_data_line;
    seen_data_line = true;
    std::string field = text;
    if (!field.empty() && field.back() == ',') field = trim(field.substr(0, field.size() - 1));
    if (field.find(',') != std::string::npos) {
      throw DataError(name + ":" + std::to_string(line_no) + ": expected a single column, got '" + text + "'");
    }
    if (auto v = parse_double(field)) {
      values.push_back(*v);
      continue;
    }
    const bool looks_like_header =
        std::any_of(field.begin(), field.end(), [](unsigned char c) { return std::isalpha(c); });
    if (first && looks_like_header) continue;
    throw DataError(name + ":" + std::to_string(line_no) + ": cannot parse '" + text + "' as a number");
  }
  if (values.empty()) throw DataError(name + ": no numeric values found");
  return values;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Distribution function estimation with iterated function systems", "ifsfit");
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  g.seed_opt = app.add_option("--seed", g.seed, "Master random seed")->capture_default_str();
  app.add_option("--support", g.support, "Declared support as alpha,beta");
  g.grid_opt = app.add_option("--grid", g.grid, "CDF grid cells")->check(CLI::Range(2, 1 << 24))->capture_default_str();
  g.moments_opt =
      app.add_option("--moments", g.moments, "Moment order M")->check(CLI::Range(1, 1000))->capture_default_str();
  g.iterations_opt = app.add_option("--iterations", g.iterations, "Iterations of T")
                         ->check(CLI::Range(1, 10000))
                         ->capture_default_str();

  FitOptions fo;
  auto* fit = app.add_subcommand("fit", "Fit an IFS model to a one-column sample file");
  fit->add_option("input", fo.input, "Sample file (one value per line)")->required();
  fit->add_option("--family", fo.family, std::string("Map family ") + kFamilyList)->required();
  fit->add_option("--i-star", fo.i_star, "Finest level of the w1/w2 family")->check(CLI::PositiveNumber);
  fit->add_option("--quantiles", fo.quantiles, "Number of quantile maps (default n/2)")->check(CLI::PositiveNumber);
  fit->add_option("--out", fo.out, "Model file to write")->required();

  EvalOptions eo;
  auto* eval = app.add_subcommand("eval", "Evaluate a fitted model");
  eval->add_option("model", eo.model, "Model file")->required();
  eval->add_option("--at", eo.at, "Print the estimated CDF at x");
  eval->add_option("--grid-out", eo.grid_out, "Write the CDF curve to this CSV file");
  eval->add_flag("--density", eo.density, "Also evaluate the Fourier density estimate");
  eval->add_option("--points", eo.points, "Points on the written curve")->capture_default_str();
  eval->add_option("--n", eo.sample_size, "Sample size for term selection (default: from the model file)");
  eval->add_option("--terms", eo.terms, "Largest Fourier order considered")->check(CLI::Range(2, 10000))->capture_default_str();

  BenchmarkOptions bo;
  auto* bench = app.add_subcommand("benchmark", "Monte Carlo efficiency of IFS estimators against the EDF");
  bench->add_option("--config", bo.config, "Benchmark configuration (flat TOML)");
  bench->add_option("--out", bo.out, "CSV file to write")->capture_default_str();
  bench->add_option("--replications", bo.replications, "Replications per cell")->check(CLI::PositiveNumber);
  bench->add_option("--families", bo.families, std::string("Families to run ") + kFamilyList)->delimiter(',');
  bo.threads_opt = bench->add_option("--threads", bo.threads, "Worker threads (0: all cores)");

  MissingOptions mo;
  auto* missing = app.add_subcommand("missing-demo", "Window-censored Beta(2,2) experiment");
  missing->add_option("--n", mo.n, "Draws before censoring")->capture_default_str();
  missing->add_option("--out-dir", mo.out_dir, "Directory for curves and summary")->capture_default_str();

  std::vector<const char*> argv{"ifsfit"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (*fit) return cmd_fit(fo, g, out, err);
    if (*eval) return cmd_eval(eo, g, out, err);
    if (*bench) return cmd_benchmark(bo, g, out, err);
    return cmd_missing_demo(mo, g, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const NonConvergence& e) {
    err << "solver failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const HarnessError& e) {
    err << "benchmark failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const SchemaError& e) {
    err << "schema error: " << e.what() << '\n';
    return kDataError;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kDataError;
  } catch (const NoData& e) {
    err << "no data: " << e.what() << '\n';
    return kDataError;
  } catch (const DegenerateSample& e) {
    err << "degenerate sample: " << e.what() << '\n';
    return kDataError;
  } catch (const InvalidArgument& e) {
    err << "invalid input: " << e.what() << '\n';
    return kDataError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "file error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalFailure;
  }
}

}  // namespace ifs::cli
