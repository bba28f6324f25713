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


// Benchmark configuration files. The accepted syntax is a flat subset of
// TOML: `key = value` lines, '#' comments, an optional [benchmark] table
// header, and values that are numbers, double-quoted strings or (nested)
// arrays of those. Example:
//
//   replications = 100
//   seed = 3735928559
//   sizes = [10, 20, 30, 50, 100, 250]
//   distributions = [[0.9, 0.1], [2, 2]]
//   families = ["w1", "w2", "q1", "q2"]
//
// Other keys: threads, moments, w1_i_star, w2_i_star, quantiles, grid,
// eval_grid, iterations. Keys left out keep the defaults of the published
// tables.

#ifndef IFS_TOOLS_BENCH_CONFIG_HPP
#define IFS_TOOLS_BENCH_CONFIG_HPP

#include <istream>
#include <stdexcept>
#include <string>

#include "ifs/experiments.hpp"

namespace ifs::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

BenchmarkConfig parse_bench_config(std::istream& in, const std::string& name = "<config>");
BenchmarkConfig load_bench_config(const std::string& path);

}  // namespace ifs::cli

#endif  // IFS_TOOLS_BENCH_CONFIG_HPP
