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

#ifndef IFS_AFFINE_MAPS_HPP
#define IFS_AFFINE_MAPS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ifs/baselines.hpp"
#include "ifs/errors.hpp"
#include "ifs/sample.hpp"

namespace ifs {

// Contraction w(x) = a + b x with |b| < 1.
class AffineMap {
 public:
  AffineMap(double a, double b) : a_(a), b_(b) {
    if (!std::isfinite(a) || !(std::fabs(b) < 1.0)) {
      throw InvalidArgument("affine map must be a contraction: |b| < 1, got b = " +
                            std::to_string(b));
    }
  }

  double a() const { return a_; }
  double b() const { return b_; }

  double operator()(double x) const { return a_ + b_ * x; }

  friend bool operator==(const AffineMap&, const AffineMap&) = default;

 private:
  double a_;
  double b_;
};

inline double invert_map(const AffineMap& map, double y) {
  if (map.b() == 0.0) throw NonInvertibleMap("constant map has no inverse");
  return (y - map.a()) / map.b();
}

enum class MapKind { W1, W2, Q1, Q2 };

inline std::string_view to_string(MapKind kind) {
  switch (kind) {
    case MapKind::W1: return "W1";
    case MapKind::W2: return "W2";
    case MapKind::Q1: return "Q1";
    case MapKind::Q2: return "Q2";
  }
  return "?";
}

// Case-insensitive; accepts "w1", "W2", ...
inline std::optional<MapKind> parse_map_kind(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "w1") return MapKind::W1;
  if (s == "w2") return MapKind::W2;
  if (s == "q1") return MapKind::Q1;
  if (s == "q2") return MapKind::Q2;
  return std::nullopt;
}

// An ordered family of maps on the canonical support [0, 1]. `support` is the
// original interval the family was built for. For quantile families each map
// may absorb several zero-length quantile intervals; merge_counts records how
// many, and `intervals` is the number requested before merging.
struct MapFamily {
  std::vector<AffineMap> maps;
  std::vector<std::size_t> merge_counts;
  std::size_t intervals = 0;
  SupportInterval support;
  MapKind kind = MapKind::W1;

  std::size_t size() const { return maps.size(); }

  double contractivity() const {
    double c = 0.0;
    for (const auto& m : maps) c = std::max(c, std::fabs(m.b()));
    return c;
  }
};

// Dyadic maps (x + j - 1) / 2^i for i = 1..i_star, j = 1..2^i, in level order.
// Family size 2^(i_star+1) - 2.
inline MapFamily build_wavelet_maps_w1(int i_star, SupportInterval support = SupportInterval::unit()) {
  if (i_star < 1) throw InvalidArgument("W1 requires i_star >= 1");
  if (i_star > 20) throw InvalidArgument("W1 i_star above 20 is not supported");
  MapFamily family;
  family.kind = MapKind::W1;
  family.support = support;
  for (int i = 1; i <= i_star; ++i) {
    const double scale = std::ldexp(1.0, -i);
    const int count = 1 << i;
    for (int j = 1; j <= count; ++j) family.maps.emplace_back((j - 1) * scale, scale);
  }
  family.merge_counts.assign(family.maps.size(), 1);
  family.intervals = family.maps.size();
  return family;
}

// Harmonic maps (x + j - 1) / i for i = 2..i_star, j = 2..i. Size i_star(i_star-1)/2.
inline MapFamily build_wavelet_maps_w2(int i_star, SupportInterval support = SupportInterval::unit()) {
  if (i_star < 2) throw InvalidArgument("W2 requires i_star >= 2");
  MapFamily family;
  family.kind = MapKind::W2;
  family.support = support;
  for (int i = 2; i <= i_star; ++i) {
    const double scale = 1.0 / i;
    for (int j = 2; j <= i; ++j) family.maps.emplace_back((j - 1) * scale, scale);
  }
  family.merge_counts.assign(family.maps.size(), 1);
  family.intervals = family.maps.size();
  return family;
}

// Maps w_i(x) = (q_{i+1} - q_i) x + q_i between consecutive empirical
// quantiles at levels (i-1)/num_maps of the rescaled sample. A zero-length
// interval is merged into the preceding map (or into the first proper map when
// it leads the grid), so the family may be shorter than num_maps.
inline MapFamily build_quantile_maps(const Sample& sample, std::size_t num_maps,
                                     MapKind kind = MapKind::Q1) {
  if (num_maps < 1) throw InvalidArgument("quantile family needs at least one map");
  if (kind != MapKind::Q1 && kind != MapKind::Q2) {
    throw InvalidArgument("quantile family kind must be Q1 or Q2");
  }
  const Sample unit = sample.canonical();
  const auto sorted = unit.sorted_values();
  if (sorted.front() == sorted.back()) throw DegenerateSample("all sample values are identical");

  std::vector<double> q(num_maps + 1);
  for (std::size_t i = 0; i <= num_maps; ++i) {
    q[i] = quantile_of_sorted(sorted, static_cast<double>(i) / static_cast<double>(num_maps));
  }
  q.front() = sorted.front();
  q.back() = sorted.back();

  MapFamily family;
  family.kind = kind;
  family.support = sample.support();
  family.intervals = num_maps;
  std::size_t pending = 0;
  for (std::size_t i = 0; i < num_maps; ++i) {
    const double width = q[i + 1] - q[i];
    if (width >= 1.0) {
      throw DegenerateSample("a quantile interval spans the whole support; the map would not contract");
    }
    if (width > 0.0) {
      family.maps.emplace_back(q[i], width);
      family.merge_counts.push_back(1 + pending);
      pending = 0;
    } else if (!family.maps.empty()) {
      ++family.merge_counts.back();
    } else {
      ++pending;
    }
  }
  return family;
}

}  // namespace ifs

#endif  // IFS_AFFINE_MAPS_HPP
