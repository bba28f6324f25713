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

// Characteristic function of an affine IFS attractor and the truncated
// Fourier density estimator built from it.
//
// With phi(t) = E exp(-i t X), the invariant measure satisfies
//
//   phi(t) = sum_k p_k exp(-i t a_k) phi(b_k t),
//
// which is solved by sweeping the relation over a symmetric t-grid. Since
// |b_k| < 1 every argument b_k t stays inside the grid.

#ifndef IFS_SPECTRAL_HPP
#define IFS_SPECTRAL_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <ostream>
#include <span>
#include <vector>

#include "ifs/errors.hpp"
#include "ifs/ifs_operator.hpp"

namespace ifs {

using Complex = std::complex<double>;

inline constexpr std::size_t kDefaultCharFnGrid = 4097;
inline constexpr int kDefaultMaxSweeps = 60;
inline constexpr double kDefaultCharFnTol = 1e-10;
inline constexpr int kDefaultFourierTerms = 25;

// phi sampled at t_j = -t_max + j h, j = 0..n-1, h = 2 t_max / (n - 1). The
// grid has an odd number of nodes so that t = 0 is one of them.
class CharFnEstimate {
 public:
  CharFnEstimate(double t_max, std::vector<Complex> values)
      : t_max_(t_max), values_(std::move(values)) {
    if (values_.size() < 5 || values_.size() % 2 == 0) {
      throw InvalidArgument("characteristic-function grid needs an odd number (>= 5) of nodes");
    }
  }

  double t_max() const { return t_max_; }
  std::size_t size() const { return values_.size(); }
  double step() const { return 2.0 * t_max_ / static_cast<double>(values_.size() - 1); }
  double t(std::size_t j) const {
    const auto half = static_cast<double>((values_.size() - 1) / 2);
    return (static_cast<double>(j) - half) / half * t_max_;
  }
  std::span<const Complex> values() const { return values_; }

  // Cubic Lagrange interpolation on the four nearest nodes.
  Complex operator()(double t) const {
    if (std::fabs(t) > t_max_ * (1.0 + 1e-12)) {
      throw InvalidArgument("characteristic function evaluated outside its grid");
    }
    const std::size_t n = values_.size();
    const double pos = (t + t_max_) / step();
    auto base = static_cast<std::ptrdiff_t>(std::floor(pos)) - 1;
    base = std::clamp<std::ptrdiff_t>(base, 0, static_cast<std::ptrdiff_t>(n) - 4);
    const double u = pos - static_cast<double>(base);  // nodes sit at u = 0, 1, 2, 3
    const double w0 = -(u - 1.0) * (u - 2.0) * (u - 3.0) / 6.0;
    const double w1 = u * (u - 2.0) * (u - 3.0) / 2.0;
    const double w2 = -u * (u - 1.0) * (u - 3.0) / 2.0;
    const double w3 = u * (u - 1.0) * (u - 2.0) / 6.0;
    const auto* v = values_.data() + base;
    return w0 * v[0] + w1 * v[1] + w2 * v[2] + w3 * v[3];
  }

  int iterations_used = 0;
  bool converged = false;
  double last_change = 0.0;  // sup |phi_{s+1} - phi_s| of the final sweep

 private:
  double t_max_;
  std::vector<Complex> values_;
};

namespace detail {

// One application of the fixed-point relation at every nonnegative node,
// mirrored to negative t by Hermitian symmetry.
inline std::vector<Complex> char_fn_sweep(const IfsModel& model, const CharFnEstimate& phi) {
  const auto& maps = model.family().maps;
  const auto p = model.probabilities().values();
  const std::size_t n = phi.size();
  const std::size_t mid = (n - 1) / 2;
  std::vector<Complex> next(n);
  next[mid] = 1.0;
  for (std::size_t j = mid + 1; j < n; ++j) {
    const double t = phi.t(j);
    Complex sum = 0.0;
    for (std::size_t k = 0; k < maps.size(); ++k) {
      if (p[k] == 0.0) continue;
      const Complex rotation = std::polar(1.0, -t * maps[k].a());
      const double bt = maps[k].b() * t;
      sum += p[k] * rotation * (bt == 0.0 ? Complex(1.0) : phi(bt));
    }
    next[j] = sum;
    next[2 * mid - j] = std::conj(sum);
  }
  return next;
}

}  // namespace detail

inline CharFnEstimate char_fn_fixed_point(const IfsModel& model, double t_max,
                                          std::size_t grid_points = kDefaultCharFnGrid,
                                          int max_sweeps = kDefaultMaxSweeps,
                                          double tol = kDefaultCharFnTol) {
  if (!(t_max > 0.0)) throw InvalidArgument("t_max must be positive");
  if (grid_points % 2 == 0) ++grid_points;
  if (max_sweeps < 1) throw InvalidArgument("max_sweeps must be >= 1");
  CharFnEstimate phi(t_max, std::vector<Complex>(grid_points, Complex(1.0)));
  for (int s = 1; s <= max_sweeps; ++s) {
    auto next = detail::char_fn_sweep(model, phi);
    double change = 0.0;
    for (std::size_t j = 0; j < grid_points; ++j) change = std::max(change, std::abs(next[j] - phi.values()[j]));
    CharFnEstimate updated(t_max, std::move(next));
    updated.iterations_used = s;
    updated.last_change = change;
    updated.converged = change < tol;
    phi = std::move(updated);
    if (phi.converged) break;
  }
  return phi;
}

// sup over the grid of |phi(t) - sum_k p_k exp(-i t a_k) phi(b_k t)|.
inline double char_fn_residual(const IfsModel& model, const CharFnEstimate& phi) {
  const auto next = detail::char_fn_sweep(model, phi);
  double r = 0.0;
  for (std::size_t j = 0; j < next.size(); ++j) r = std::max(r, std::abs(next[j] - phi.values()[j]));
  return r;
}

struct TermSelection {
  int m = 0;
  bool truncated = false;  // no admissible m; fell back to m_max - 2
};

// Smallest m with |B_{m+1}|^2 and |B_{m+2}|^2 both below 2/(n+1).
// coefficients holds B_0..B_{m_max}.
inline TermSelection select_num_terms(std::span<const Complex> coefficients, std::size_t n) {
  if (coefficients.size() < 3) throw InvalidArgument("term selection needs B_0, B_1 and B_2");
  const int m_max = static_cast<int>(coefficients.size()) - 1;
  const double threshold = 2.0 / (static_cast<double>(n) + 1.0);
  for (int m = 0; m + 2 <= m_max; ++m) {
    if (std::norm(coefficients[m + 1]) < threshold && std::norm(coefficients[m + 2]) < threshold) {
      return {m, false};
    }
  }
  return {m_max - 2, true};
}

struct FourierDensity {
  std::vector<Complex> coefficients;  // B_k = phi(k), k = 0..m_max
  int m = 0;
  std::size_t sample_size = 0;
  bool truncated = false;
  bool char_fn_converged = true;

  int m_max() const { return static_cast<int>(coefficients.size()) - 1; }
};

// Period-2pi partial sum 1/(2pi) + 1/pi sum_{k=1..m} (Re B_k cos kx - Im B_k sin kx),
// for x on the canonical support. Negative values are kept unless clamp is set.
inline double density_estimate(const FourierDensity& fd, double x, bool clamp_negative = false) {
  double f = 1.0 / (2.0 * std::numbers::pi);
  for (int k = 1; k <= fd.m; ++k) {
    const Complex& b = fd.coefficients[k];
    f += (b.real() * std::cos(k * x) - b.imag() * std::sin(k * x)) / std::numbers::pi;
  }
  return clamp_negative ? std::max(f, 0.0) : f;
}

// Density in original coordinates: f_X(x) = f_U((x - alpha)/(beta - alpha)) / (beta - alpha).
inline double density_estimate(const FourierDensity& fd, const SupportInterval& support, double x,
                               bool clamp_negative = false) {
  if (x < support.alpha() || x > support.beta()) return 0.0;
  return density_estimate(fd, support.to_unit(x), clamp_negative) / support.width();
}

inline FourierDensity fit_density(const IfsModel& model, std::size_t n,
                                  int m_max = kDefaultFourierTerms,
                                  std::size_t grid_points = kDefaultCharFnGrid) {
  if (m_max < 2) throw InvalidArgument("m_max must be >= 2");
  const auto phi = char_fn_fixed_point(model, m_max + 2.0, grid_points);
  FourierDensity fd;
  fd.sample_size = n;
  fd.char_fn_converged = phi.converged;
  fd.coefficients.resize(m_max + 1);
  fd.coefficients[0] = 1.0;
  for (int k = 1; k <= m_max; ++k) fd.coefficients[k] = phi(static_cast<double>(k));
  const auto sel = select_num_terms(fd.coefficients, n);
  fd.m = sel.m;
  fd.truncated = sel.truncated;
  return fd;
}

inline void write_char_fn_csv(std::ostream& out, const CharFnEstimate& phi) {
  out << "t,re,im\n";
  out.precision(17);
  for (std::size_t j = 0; j < phi.size(); ++j) {
    out << phi.t(j) << ',' << phi.values()[j].real() << ',' << phi.values()[j].imag() << '\n';
  }
}

}  // namespace ifs

#endif  // IFS_SPECTRAL_HPP
