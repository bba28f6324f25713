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

// Moment sequences on [0, 1] and the linear map that pushes them through an
// affine IFS. For w_i(x) = a_i + b_i x the moments of M mu are
//
//   h_k = sum_i p_i E[(a_i + b_i X)^k] = sum_i A_{ki} p_i,
//   A_{ki} = sum_{j=0..k} C(k,j) b_i^j a_i^(k-j) g_j.

#ifndef IFS_MOMENTS_HPP
#define IFS_MOMENTS_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ifs/affine_maps.hpp"
#include "ifs/baselines.hpp"
#include "ifs/errors.hpp"
#include "ifs/matrix.hpp"
#include "ifs/sample.hpp"

namespace ifs {

inline constexpr int kDefaultMomentOrder = 50;

// Moments g_0..g_M with g_0 = 1.
class MomentVector {
 public:
  explicit MomentVector(std::vector<double> g) : g_(std::move(g)) {
    if (g_.size() < 2) throw InvalidArgument("moment vector needs at least g_0 and g_1");
    if (std::fabs(g_[0] - 1.0) > 1e-12) throw InvalidArgument("moment vector must have g_0 = 1");
  }

  int order() const { return static_cast<int>(g_.size()) - 1; }
  double operator[](std::size_t k) const { return g_[k]; }
  std::span<const double> values() const { return g_; }

  // True for the moments of a probability measure on [0, 1]: 1 >= g_1 >= ... >= g_M >= 0.
  bool is_valid_on_unit_interval(double tol = 0.0) const {
    for (std::size_t k = 1; k < g_.size(); ++k) {
      if (g_[k] < -tol || g_[k] > g_[k - 1] + tol) return false;
    }
    return true;
  }

 private:
  std::vector<double> g_;
};

inline MomentVector empirical_moments(const Sample& sample, int order) {
  if (order < 1) throw InvalidArgument("moment order must be >= 1");
  const Sample unit = sample.canonical();
  std::vector<double> m(order + 1, 0.0);
  for (double x : unit.values()) {
    double power = 1.0;
    for (int k = 0; k <= order; ++k) {
      m[k] += power;
      power *= x;
    }
  }
  const double n = static_cast<double>(unit.size());
  for (auto& v : m) v /= n;
  m[0] = 1.0;
  return MomentVector(std::move(m));
}

inline MomentVector uniform_moments(int order) {
  if (order < 1) throw InvalidArgument("moment order must be >= 1");
  std::vector<double> g(order + 1);
  for (int k = 0; k <= order; ++k) g[k] = 1.0 / (k + 1);
  return MomentVector(std::move(g));
}

// g_k = prod_{r<k} (a + r) / (a + b + r)
inline MomentVector beta_moments(const BetaParams& params, int order) {
  if (order < 1) throw InvalidArgument("moment order must be >= 1");
  std::vector<double> g(order + 1);
  g[0] = 1.0;
  for (int k = 1; k <= order; ++k) {
    g[k] = g[k - 1] * (params.shape_a + k - 1) / (params.shape_a + params.shape_b + k - 1);
  }
  return MomentVector(std::move(g));
}

// A_{ki} for rows k = 1..M (stored at row k-1) and one column per map.
class TransferMatrix {
 public:
  TransferMatrix(Matrix a) : a_(std::move(a)) {}

  int order() const { return static_cast<int>(a_.rows()); }
  std::size_t num_maps() const { return a_.cols(); }

  // k in 1..M, i in 0..N-1
  double operator()(int k, std::size_t i) const { return a_(k - 1, i); }
  const Matrix& matrix() const { return a_; }

 private:
  Matrix a_;
};

// Binomial coefficients use the floating-point recurrence
// C(k,j) = C(k,j-1) (k-j+1)/j; 64-bit integers overflow for k > 66.
inline TransferMatrix transfer_matrix(const MapFamily& family, const MomentVector& g) {
  const int order = g.order();
  const std::size_t n = family.size();
  Matrix a(order, n);
  std::vector<double> a_pow(order + 1), b_pow(order + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double ai = family.maps[i].a();
    const double bi = family.maps[i].b();
    a_pow[0] = b_pow[0] = 1.0;
    for (int k = 1; k <= order; ++k) {
      a_pow[k] = a_pow[k - 1] * ai;
      b_pow[k] = b_pow[k - 1] * bi;
    }
    for (int k = 1; k <= order; ++k) {
      double binom = 1.0;
      double sum = 0.0;
      for (int j = 0; j <= k; ++j) {
        if (j > 0) binom = binom * (k - j + 1) / j;
        sum += binom * b_pow[j] * a_pow[k - j] * g[j];
      }
      a(k - 1, i) = sum;
    }
  }
  return TransferMatrix(std::move(a));
}

// h_0 = 1, h_k = sum_i A_{ki} p_i.
inline MomentVector push_forward_moments(const TransferMatrix& a, std::span<const double> p) {
  if (p.size() != a.num_maps()) {
    throw InvalidArgument("probability vector has " + std::to_string(p.size()) +
                          " entries but the family has " + std::to_string(a.num_maps()) + " maps");
  }
  std::vector<double> h(a.order() + 1);
  h[0] = 1.0;
  for (int k = 1; k <= a.order(); ++k) h[k] = dot(a.matrix().row(k - 1), p);
  return MomentVector(std::move(h));
}

}  // namespace ifs

#endif  // IFS_MOMENTS_HPP
