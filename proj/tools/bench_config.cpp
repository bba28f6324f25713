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


#include "bench_config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <variant>
#include <vector>

namespace ifs::cli {
namespace {

struct Value;
using Array = std::vector<Value>;

struct Value {
  std::variant<double, std::string, Array> data;
  std::string token;  // numbers only: the literal as written, underscores removed
};

class ValueParser {
 public:
  explicit ValueParser(std::string_view text) : text_(text) {}

  Value parse() {
    Value v = value();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing characters");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError(msg + " at column " + std::to_string(pos_ + 1));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  Value value() {
    skip_space();
    if (pos_ >= text_.size()) fail("missing value");
    const char c = text_[pos_];
    if (c == '[') return array();
    if (c == '"') return string();
    return number();
  }

  Value array() {
    ++pos_;
    Array items;
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == ']') {
      ++pos_;
      return {items, {}};
    }
    for (;;) {
      items.push_back(value());
      skip_space();
      if (pos_ >= text_.size()) fail("unterminated array");
      if (text_[pos_] == ',') {
        ++pos_;
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == ']') {  // trailing comma
          ++pos_;
          return {items, {}};
        }
        continue;
      }
      if (text_[pos_] == ']') {
        ++pos_;
        return {items, {}};
      }
      fail("expected ',' or ']'");
    }
  }

  Value string() {
    const auto end = text_.find('"', pos_ + 1);
    if (end == std::string_view::npos) fail("unterminated string");
    std::string s(text_.substr(pos_ + 1, end - pos_ - 1));
    pos_ = end + 1;
    return {s, {}};
  }

  Value number() {
    std::size_t end = pos_;
    while (end < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[end])) ||
                                  text_[end] == '.' || text_[end] == '-' || text_[end] == '+' ||
                                  text_[end] == '_')) {
      ++end;
    }
    std::string digits;
    for (std::size_t i = pos_; i < end; ++i)
      if (text_[i] != '_') digits += text_[i];
    if (!digits.empty() && digits.front() == '+') digits.erase(0, 1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size()) {
      fail("cannot read a number from '" + std::string(text_.substr(pos_, end - pos_)) + "'");
    }
    pos_ = end;
    return {v, digits};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  return s.substr(first, s.find_last_not_of(" \t\r\n") - first + 1);
}

int bracket_balance(const std::string& s) {
  int depth = 0;
  bool quoted = false;
  for (char c : s) {
    if (c == '"') quoted = !quoted;
    if (!quoted) depth += (c == '[') - (c == ']');
  }
  return depth;
}

double as_number(const Value& v, const std::string& key) {
  if (const auto* d = std::get_if<double>(&v.data)) return *d;
  throw ConfigError("'" + key + "' must be a number");
}

long long as_integer(const Value& v, const std::string& key, long long lo) {
  const double d = as_number(v, key);
  if (d != std::floor(d) || d < static_cast<double>(lo) || d > 9.2e18) {
    throw ConfigError("'" + key + "' must be an integer >= " + std::to_string(lo));
  }
  return static_cast<long long>(d);
}

const Array& as_array(const Value& v, const std::string& key) {
  if (const auto* a = std::get_if<Array>(&v.data)) return *a;
  throw ConfigError("'" + key + "' must be an array");
}

void apply(BenchmarkConfig& cfg, const std::string& key, const Value& v) {
  if (key == "replications") {
    cfg.replications = static_cast<int>(as_integer(v, key, 1));
  } else if (key == "seed") {
    as_number(v, key);
    std::uint64_t seed = 0;
    const auto [ptr, ec] = std::from_chars(v.token.data(), v.token.data() + v.token.size(), seed);
    if (ec != std::errc() || ptr != v.token.data() + v.token.size()) {
      throw ConfigError("'seed' must be a 64-bit unsigned integer");
    }
    cfg.seed = RngSeed{seed};
  } else if (key == "sizes") {
    cfg.sample_sizes.clear();
    for (const auto& item : as_array(v, key)) cfg.sample_sizes.push_back(as_integer(item, key, 2));
  } else if (key == "distributions") {
    cfg.distributions.clear();
    for (const auto& item : as_array(v, key)) {
      const auto& pair = as_array(item, key);
      if (pair.size() != 2) throw ConfigError("each distribution must be [a, b]");
      try {
        cfg.distributions.emplace_back(as_number(pair[0], key), as_number(pair[1], key));
      } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
      }
    }
  } else if (key == "families") {
    cfg.families.clear();
    for (const auto& item : as_array(v, key)) {
      const auto* name = std::get_if<std::string>(&item.data);
      const auto kind = name ? parse_map_kind(*name) : std::nullopt;
      if (!kind) throw ConfigError("unknown family in 'families'; expected one of {w1,w2,q1,q2}");
      cfg.families.push_back(*kind);
    }
  } else if (key == "threads") {
    cfg.threads = static_cast<unsigned>(as_integer(v, key, 0));
  } else if (key == "moments") {
    cfg.fit.moment_order = static_cast<int>(as_integer(v, key, 1));
  } else if (key == "w1_i_star") {
    cfg.fit.w1_i_star = static_cast<int>(as_integer(v, key, 1));
  } else if (key == "w2_i_star") {
    cfg.fit.w2_i_star = static_cast<int>(as_integer(v, key, 2));
  } else if (key == "quantiles") {
    cfg.fit.quantile_maps = static_cast<std::size_t>(as_integer(v, key, 0));
  } else if (key == "grid") {
    cfg.cdf_grid = static_cast<std::size_t>(as_integer(v, key, 2));
  } else if (key == "eval_grid") {
    cfg.eval_grid_size = static_cast<std::size_t>(as_integer(v, key, 1));
  } else if (key == "iterations") {
    cfg.iterations = static_cast<int>(as_integer(v, key, 1));
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
}

}  // namespace

BenchmarkConfig parse_bench_config(std::istream& in, const std::string& name) {
  BenchmarkConfig cfg = paper_benchmark_config();
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const int start_line = line_no;
    std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[' && line.find('=') == std::string::npos) {
      if (line != "[benchmark]") {
        throw ConfigError(name + ":" + std::to_string(line_no) + ": only a [benchmark] table is recognised");
      }
      continue;
    }
    while (bracket_balance(line) > 0 && std::getline(in, raw)) {
      ++line_no;
      line += ' ' + trim(strip_comment(raw));
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(name + ":" + std::to_string(start_line) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    try {
      apply(cfg, key, ValueParser(trim(line.substr(eq + 1))).parse());
    } catch (const ConfigError& e) {
      throw ConfigError(name + ":" + std::to_string(start_line) + ": " + e.what());
    }
  }
  try {
    cfg.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(name + ": " + e.what());
  }
  return cfg;
}

BenchmarkConfig load_bench_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  return parse_bench_config(in, path);
}

}  // namespace ifs::cli
