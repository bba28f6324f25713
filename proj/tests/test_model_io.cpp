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


#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "ifs/experiments.hpp"
#include "ifs/model_io.hpp"

namespace ifs {
namespace {

std::filesystem::path temp_file(const char* name) {
  return std::filesystem::temp_directory_path() / (std::string("ifs_model_io_") + name);
}

TEST(ModelIoTest, RoundTripIsExact) {
  const auto s = beta_sample({3, 5}, 40, RngSeed{31});
  const Sample shifted = [&] {
    std::vector<double> v(s.values().begin(), s.values().end());
    for (auto& x : v) x = 10.0 + 3.0 * x;
    return Sample(v, SupportInterval(10.0, 13.0));
  }();
  const auto model = fit_ifs(shifted, MapKind::W2).model;
  const auto path = temp_file("round_trip.json");
  save_model(model, path.string());
  const auto loaded = load_model(path.string());
  std::filesystem::remove(path);

  EXPECT_EQ(loaded.support(), model.support());
  EXPECT_EQ(loaded.family().kind, MapKind::W2);
  ASSERT_EQ(loaded.size(), model.size());
  for (std::size_t i = 0; i < model.size(); ++i) {
    EXPECT_EQ(loaded.family().maps[i].a(), model.family().maps[i].a());
    EXPECT_EQ(loaded.family().maps[i].b(), model.family().maps[i].b());
    EXPECT_EQ(loaded.probabilities()[i], model.probabilities()[i]);
  }
  const auto c1 = fixed_point_cdf(model).cdf;
  const auto c2 = fixed_point_cdf(loaded).cdf;
  for (double x = 10.0; x <= 13.0; x += 0.01) EXPECT_EQ(evaluate_cdf(model, c1, x), evaluate_cdf(loaded, c2, x));
}

TEST(ModelIoTest, SchemaErrors) {
  using nlohmann::json;
  EXPECT_THROW(model_from_json(json::array()), SchemaError);
  EXPECT_THROW(model_from_json(json{{"support", {0, 1}}, {"kind", "W1"}, {"maps", {{0, 0.5}}}}), SchemaError);
  EXPECT_THROW(model_from_json(json{{"support", {0, 1}}, {"kind", "W9"}, {"maps", {{0, 0.5}}}, {"p", {1.0}}}),
               SchemaError);
  EXPECT_THROW(model_from_json(json{{"support", {0, 1}}, {"kind", "W1"}, {"maps", {{0, 1.5}}}, {"p", {1.0}}}),
               SchemaError);
  EXPECT_THROW(model_from_json(json{{"support", {0, 1}}, {"kind", "W1"}, {"maps", {{0, 0.5}}}, {"p", {0.5}}}),
               SchemaError);
  EXPECT_NO_THROW(model_from_json(json{{"support", {0, 1}}, {"kind", "W1"}, {"maps", {{0, 0.5}}}, {"p", {1.0}}}));

  const auto path = temp_file("corrupt.json");
  std::ofstream(path) << "{\"support\": [0, 1], \"kind\":";
  EXPECT_THROW(load_model(path.string()), SchemaError);
  std::filesystem::remove(path);
  EXPECT_THROW(load_model("/nonexistent/model.json"), SchemaError);
}

}  // namespace
}  // namespace ifs
