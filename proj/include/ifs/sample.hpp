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

#ifndef IFS_SAMPLE_HPP
#define IFS_SAMPLE_HPP

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ifs/errors.hpp"

namespace ifs {

// Closed interval [alpha, beta] with alpha < beta.
class SupportInterval {
 public:
  SupportInterval() = default;
  SupportInterval(double alpha, double beta) : alpha_(alpha), beta_(beta) {
    if (!std::isfinite(alpha) || !std::isfinite(beta) || !(alpha < beta)) {
      throw InvalidArgument("support interval requires finite alpha < beta, got [" +
                            std::to_string(alpha) + ", " + std::to_string(beta) + "]");
    }
  }

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double width() const { return beta_ - alpha_; }

  bool contains(double x) const { return x >= alpha_ && x <= beta_; }

  // Affine rescaling onto the canonical support [0, 1] and back.
  double to_unit(double x) const { return (x - alpha_) / (beta_ - alpha_); }
  double from_unit(double u) const { return alpha_ + u * (beta_ - alpha_); }

  static SupportInterval unit() { return {0.0, 1.0}; }

  friend bool operator==(const SupportInterval&, const SupportInterval&) = default;

 private:
  double alpha_ = 0.0;
  double beta_ = 1.0;
};

// An i.i.d. sample together with the support the analyst declares for it.
class Sample {
 public:
  Sample(std::vector<double> values, SupportInterval support)
      : values_(std::move(values)), support_(support) {
    if (values_.empty()) throw InvalidArgument("sample must be nonempty");
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (!std::isfinite(values_[i]) || !support_.contains(values_[i])) {
        throw InvalidArgument("sample value " + std::to_string(values_[i]) + " at index " +
                              std::to_string(i) + " lies outside the declared support");
      }
    }
  }

  // Declares the support as the sample range. The resulting estimators target a
  // distribution whose support is exactly that range.
  static Sample with_range_support(std::vector<double> values) {
    if (values.empty()) throw InvalidArgument("sample must be nonempty");
    auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    if (!(*lo < *hi)) throw DegenerateSample("sample range is a single point");
    SupportInterval s(*lo, *hi);
    return Sample(std::move(values), s);
  }

  std::span<const double> values() const { return values_; }
  const SupportInterval& support() const { return support_; }
  std::size_t size() const { return values_.size(); }

  // The same observations mapped onto [0, 1].
  Sample canonical() const {
    if (support_ == SupportInterval::unit()) return *this;
    std::vector<double> u(values_.size());
    std::transform(values_.begin(), values_.end(), u.begin(), [this](double x) {
      return std::clamp(support_.to_unit(x), 0.0, 1.0);
    });
    return Sample(std::move(u), SupportInterval::unit());
  }

  std::vector<double> sorted_values() const {
    std::vector<double> v = values_;
    std::sort(v.begin(), v.end());
    return v;
  }

 private:
  std::vector<double> values_;
  SupportInterval support_;
};

}  // namespace ifs

#endif  // IFS_SAMPLE_HPP
