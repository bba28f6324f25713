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

#ifndef IFS_IFS_OPERATOR_HPP
#define IFS_IFS_OPERATOR_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ifs/affine_maps.hpp"
#include "ifs/errors.hpp"
#include "ifs/inverse_problem.hpp"
#include "ifs/sample.hpp"

namespace ifs {

inline constexpr std::size_t kDefaultCdfGrid = 512;
inline constexpr int kDefaultIterations = 5;

// A map family on [0, 1] with probabilities; `support()` is the original
// interval the estimate is reported on.
class IfsModel {
 public:
  IfsModel(MapFamily family, ProbabilityVector p) : family_(std::move(family)), p_(std::move(p)) {
    if (family_.size() != p_.size()) {
      throw InvalidArgument("model has " + std::to_string(family_.size()) + " maps but " +
                            std::to_string(p_.size()) + " probabilities");
    }
    if (family_.size() == 0) throw InvalidArgument("model needs at least one map");
  }

  const MapFamily& family() const { return family_; }
  const ProbabilityVector& probabilities() const { return p_; }
  const SupportInterval& support() const { return family_.support; }
  std::size_t size() const { return family_.size(); }
  double contractivity() const { return family_.contractivity(); }

 private:
  MapFamily family_;
  ProbabilityVector p_;
};

// Distribution function on [0, 1] sampled at G+1 equispaced points and
// linearly interpolated; extended by 0 below 0 and by 1 above 1.
class PiecewiseCdf {
 public:
  explicit PiecewiseCdf(std::vector<double> values) : values_(std::move(values)) {
    if (values_.size() < 2) throw InvalidArgument("piecewise CDF needs at least two grid points");
    if (values_.front() != 0.0 || values_.back() != 1.0) {
      throw InvalidArgument("piecewise CDF must start at 0 and end at 1");
    }
    for (std::size_t j = 1; j < values_.size(); ++j) {
      if (!(values_[j] >= values_[j - 1]) || values_[j] > 1.0) {
        throw InvalidArgument("piecewise CDF must be non-decreasing within [0, 1]");
      }
    }
  }

  static PiecewiseCdf uniform(std::size_t grid = kDefaultCdfGrid) {
    std::vector<double> v(grid + 1);
    for (std::size_t j = 0; j <= grid; ++j) v[j] = static_cast<double>(j) / static_cast<double>(grid);
    v.back() = 1.0;
    return PiecewiseCdf(std::move(v));
  }

  std::size_t grid() const { return values_.size() - 1; }
  double abscissa(std::size_t j) const { return static_cast<double>(j) / static_cast<double>(grid()); }
  std::span<const double> values() const { return values_; }

  double operator()(double u) const {
    if (!(u > 0.0)) return 0.0;
    if (u >= 1.0) return 1.0;
    const double pos = u * static_cast<double>(grid());
    const auto j = std::min(static_cast<std::size_t>(pos), grid() - 1);
    const double frac = pos - static_cast<double>(j);
    return values_[j] + frac * (values_[j + 1] - values_[j]);
  }

  double sup_distance(const PiecewiseCdf& other) const {
    if (other.grid() != grid()) throw InvalidArgument("CDF grids differ");
    double d = 0.0;
    for (std::size_t j = 0; j < values_.size(); ++j) d = std::max(d, std::fabs(values_[j] - other.values_[j]));
    return d;
  }

 private:
  std::vector<double> values_;
};

// TF(x) = sum_i p_i F(w_i^{-1}(x)) on the grid of F. Constant maps contribute
// the unit step at a_i; a decreasing map contributes 1 - F(w_i^{-1}(x)).
inline PiecewiseCdf apply_T(const IfsModel& model, const PiecewiseCdf& cdf) {
  const std::size_t grid = cdf.grid();
  const auto& maps = model.family().maps;
  const auto p = model.probabilities().values();
  std::vector<double> out(grid + 1, 0.0);
  for (std::size_t j = 1; j < grid; ++j) {
    const double x = cdf.abscissa(j);
    double sum = 0.0;
    for (std::size_t i = 0; i < maps.size(); ++i) {
      if (p[i] == 0.0) continue;
      const double b = maps[i].b();
      double mass;
      if (b == 0.0) {
        mass = x >= maps[i].a() ? 1.0 : 0.0;
      } else if (b > 0.0) {
        mass = cdf(invert_map(maps[i], x));
      } else {
        mass = 1.0 - cdf(invert_map(maps[i], x));
      }
      sum += p[i] * mass;
    }
    out[j] = std::clamp(sum, 0.0, 1.0);
  }
  out[0] = 0.0;
  out[grid] = 1.0;
  for (std::size_t j = 1; j <= grid; ++j) out[j] = std::max(out[j], out[j - 1]);
  return PiecewiseCdf(std::move(out));
}

struct CdfIteration {
  PiecewiseCdf cdf;
  std::vector<double> successive_distances;  // sup |T^{k+1}F - T^k F|, k = 0..iterations-1
};

// Iterates T from the uniform CDF.
inline CdfIteration fixed_point_cdf(const IfsModel& model, int iterations = kDefaultIterations,
                                    std::size_t grid = kDefaultCdfGrid) {
  if (iterations < 1) throw InvalidArgument("fixed_point_cdf needs at least one iteration");
  if (grid < 2) throw InvalidArgument("CDF grid must have at least two cells");
  CdfIteration result{PiecewiseCdf::uniform(grid), {}};
  for (int k = 0; k < iterations; ++k) {
    auto next = apply_T(model, result.cdf);
    result.successive_distances.push_back(next.sup_distance(result.cdf));
    result.cdf = std::move(next);
  }
  return result;
}

// F-hat at x in the model's original support coordinates.
inline double evaluate_cdf(const IfsModel& model, const PiecewiseCdf& cdf, double x) {
  const auto& s = model.support();
  if (x <= s.alpha()) return 0.0;
  if (x >= s.beta()) return 1.0;
  return cdf(s.to_unit(x));
}

}  // namespace ifs

#endif  // IFS_IFS_OPERATOR_HPP
