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

// Reference estimators and distribution oracles used to benchmark the IFS
// estimators: the empirical distribution function, order-statistic quantiles,
// a Gaussian kernel density, and the Beta family (CDF, density, sampler)
// driven by a portable seeded generator.

#ifndef IFS_BASELINES_HPP
#define IFS_BASELINES_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "ifs/errors.hpp"
#include "ifs/sample.hpp"

namespace ifs {

// ---------------------------------------------------------------------------
// Random numbers
// ---------------------------------------------------------------------------

struct RngSeed {
  std::uint64_t value = 3735928559ULL;
};

inline constexpr std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Seed of the stream with the given index. Streams are derived from the master
// seed only, so the order in which replications run never changes their draws.
inline constexpr RngSeed split_seed(RngSeed master, std::uint64_t index) {
  std::uint64_t state = master.value ^ (0xD1B54A32D192ED03ULL * (index + 1));
  splitmix64(state);
  return RngSeed{splitmix64(state)};
}

// xoshiro256** seeded through splitmix64. Bit-identical on every platform,
// unlike the std:: distributions.
class Rng {
 public:
  explicit Rng(RngSeed seed) {
    std::uint64_t sm = seed.value;
    for (auto& s : state_) s = splitmix64(sm);
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1].
  double uniform_positive() { return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53; }

  // Standard normal via the Marsaglia polar method.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::array<std::uint64_t, 4> state_{};
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// ---------------------------------------------------------------------------
// Empirical distribution function and quantiles
// ---------------------------------------------------------------------------

// EDF over a sorted copy of the data; O(log n) per evaluation.
class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(const Sample& sample) : sorted_(sample.sorted_values()) {}
  explicit EmpiricalCdf(std::vector<double> values) : sorted_(std::move(values)) {
    if (sorted_.empty()) throw InvalidArgument("EDF of an empty sample");
    std::sort(sorted_.begin(), sorted_.end());
  }

  // Fraction of observations <= x (right-continuous).
  double operator()(double x) const {
    auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
  }

  std::span<const double> sorted() const { return sorted_; }

 private:
  std::vector<double> sorted_;
};

inline double edf(const Sample& sample, double x) {
  auto values = sample.values();
  auto count = std::count_if(values.begin(), values.end(), [x](double v) { return v <= x; });
  return static_cast<double>(count) / static_cast<double>(values.size());
}

// Order-statistic linear interpolation on already sorted data: position
// h = 1 + u(n-1) between x_(floor h) and x_(floor h + 1).
inline double quantile_of_sorted(std::span<const double> sorted, double u) {
  if (sorted.empty()) throw InvalidArgument("quantile of an empty sample");
  if (!(u >= 0.0 && u <= 1.0)) throw InvalidArgument("quantile level must lie in [0, 1]");
  const std::size_t n = sorted.size();
  const double h = u * static_cast<double>(n - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= n) return sorted[n - 1];
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

inline double empirical_quantile(const Sample& sample, double u) {
  const auto sorted = sample.sorted_values();
  return quantile_of_sorted(sorted, u);
}

// ---------------------------------------------------------------------------
// Beta distribution
// ---------------------------------------------------------------------------

struct BetaParams {
  double shape_a = 1.0;
  double shape_b = 1.0;

  BetaParams() = default;
  BetaParams(double a, double b) : shape_a(a), shape_b(b) {
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
      throw InvalidArgument("Beta shape parameters must be finite and positive");
    }
  }

  double mean() const { return shape_a / (shape_a + shape_b); }
  double variance() const {
    const double s = shape_a + shape_b;
    return shape_a * shape_b / (s * s * (s + 1.0));
  }

  std::string label() const;

  friend bool operator==(const BetaParams&, const BetaParams&) = default;
};

namespace detail {

// Formats a shape parameter the way the result tables print it: "0.9" -> ".9".
inline std::string short_number(double v) {
  std::string s = std::to_string(v);
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  if (s.rfind("0.", 0) == 0) s.erase(0, 1);
  return s;
}

// Continued fraction for the incomplete beta function, modified Lentz method.
inline double incomplete_beta_fraction(double a, double b, double x) {
  constexpr int kMaxIter = 100000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw NumericalFailure("incomplete beta continued fraction did not converge");
}

inline double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

}  // namespace detail

inline std::string BetaParams::label() const {
  return "beta(" + detail::short_number(shape_a) + "," + detail::short_number(shape_b) + ")";
}

enum class DomainPolicy { kStrict, kClamp };

// Regularized incomplete beta I_x(a, b). The continued fraction converges fast
// for x < (a+1)/(a+b+2); above that the symmetry I_x(a,b) = 1 - I_{1-x}(b,a)
// is used. Under kClamp, x outside [0,1] is clamped and *clamped is set.
inline double beta_cdf(const BetaParams& params, double x,
                       DomainPolicy policy = DomainPolicy::kStrict, bool* clamped = nullptr) {
  if (clamped) *clamped = false;
  if (!(x >= 0.0 && x <= 1.0)) {
    if (policy == DomainPolicy::kStrict || std::isnan(x)) {
      throw InvalidArgument("beta_cdf argument outside [0, 1]");
    }
    if (clamped) *clamped = true;
    x = std::clamp(x, 0.0, 1.0);
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double a = params.shape_a;
  const double b = params.shape_b;
  const double log_front = a * std::log(x) + b * std::log1p(-x) - detail::log_beta(a, b);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return std::exp(log_front) * detail::incomplete_beta_fraction(a, b, x) / a;
  }
  return 1.0 - std::exp(log_front) * detail::incomplete_beta_fraction(b, a, 1.0 - x) / b;
}

inline double beta_pdf(const BetaParams& params, double x) {
  if (x < 0.0 || x > 1.0) return 0.0;
  const double a = params.shape_a;
  const double b = params.shape_b;
  if (x == 0.0) return a < 1.0 ? std::numeric_limits<double>::infinity() : (a == 1.0 ? b : 0.0);
  if (x == 1.0) return b < 1.0 ? std::numeric_limits<double>::infinity() : (b == 1.0 ? a : 0.0);
  return std::exp((a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - detail::log_beta(a, b));
}

// Logarithm of a Gamma(shape, 1) variate. Marsaglia-Tsang squeeze for
// shape >= 1; smaller shapes use the boost G(a) = G(a+1) U^{1/a}, kept in log
// space so that Beta(.1,.1)-type draws do not underflow to 0/0.
inline double log_gamma_variate(Rng& rng, double shape) {
  if (shape < 1.0) {
    return log_gamma_variate(rng, shape + 1.0) + std::log(rng.uniform_positive()) / shape;
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    const double z = rng.normal();
    double v = 1.0 + c * z;
    if (v <= 0.0) continue;
    v = v * v * v;
    const double u = rng.uniform_positive();
    if (std::log(u) < 0.5 * z * z + d - d * v + d * std::log(v)) return std::log(d * v);
  }
}

inline double beta_variate(Rng& rng, const BetaParams& params) {
  const double lx = log_gamma_variate(rng, params.shape_a);
  const double ly = log_gamma_variate(rng, params.shape_b);
  // X / (X + Y) from the log ratio; 1 - t/(1+t) keeps draws near 1 rounded
  // to the nearest double instead of collapsing onto 1.0 early.
  const double delta = ly - lx;
  if (delta < 0.0) {
    const double t = std::exp(delta);
    return 1.0 - t / (1.0 + t);
  }
  const double t = std::exp(-delta);
  return t / (1.0 + t);
}

inline Sample beta_sample(const BetaParams& params, std::size_t n, RngSeed seed) {
  if (n == 0) throw InvalidArgument("beta_sample requires n >= 1");
  Rng rng(seed);
  std::vector<double> values(n);
  for (auto& v : values) v = beta_variate(rng, params);
  return Sample(std::move(values), SupportInterval::unit());
}

// ---------------------------------------------------------------------------
// Kernel density
// ---------------------------------------------------------------------------

// Gaussian kernel density with Silverman's rule-of-thumb bandwidth
// 0.9 * min(sd, IQR/1.34) * n^(-1/5).
class KernelDensity {
 public:
  explicit KernelDensity(const Sample& sample) : data_(sample.sorted_values()) {
    const auto n = data_.size();
    if (n < 2) throw DegenerateSample("kernel density needs at least two observations");
    double mean = 0.0;
    for (double v : data_) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : data_) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    if (!(sd > 0.0)) throw DegenerateSample("kernel density of a zero-variance sample");
    const double iqr = quantile_of_sorted(data_, 0.75) - quantile_of_sorted(data_, 0.25);
    const double spread = iqr > 0.0 ? std::min(sd, iqr / 1.34) : sd;
    bandwidth_ = 0.9 * spread * std::pow(static_cast<double>(n), -0.2);
  }

  double bandwidth() const { return bandwidth_; }

  double operator()(double x) const {
    const double norm = 1.0 / (static_cast<double>(data_.size()) * bandwidth_ *
                               std::sqrt(2.0 * std::numbers::pi));
    double sum = 0.0;
    for (double v : data_) {
      const double z = (x - v) / bandwidth_;
      sum += std::exp(-0.5 * z * z);
    }
    return sum * norm;
  }

 private:
  std::vector<double> data_;
  double bandwidth_ = 0.0;
};

inline double kernel_density(const Sample& sample, double x) { return KernelDensity(sample)(x); }

}  // namespace ifs

#endif  // IFS_BASELINES_HPP
