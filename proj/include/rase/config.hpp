// Copyright 2026 The RASE Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rase/errors.hpp"
#include "rase/pipeline.hpp"

namespace rase {

namespace internal {

template <typename T>
T RequireField(const nlohmann::json& object, const std::string& field) {
  if (!object.contains(field)) throw ConfigError("config field '" + field + "': missing");
  try {
    return object.at(field).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError("config field '" + field + "': wrong type");
  }
}

template <typename T>
T FieldOr(const nlohmann::json& object, const std::string& field, T fallback) {
  if (!object.contains(field)) return fallback;
  try {
    return object.at(field).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError("config field '" + field + "': wrong type");
  }
}

}  // namespace internal

inline RunConfig ParseRunConfig(const nlohmann::json& json) {
  const int n = internal::RequireField<int>(json, "n");

  const auto range_json = internal::RequireField<nlohmann::json>(json, "range");
  const auto precision_json = internal::RequireField<nlohmann::json>(json, "precision");
  const auto budget_json = internal::RequireField<nlohmann::json>(json, "budget");

  auto build = [&]() -> RunConfig {
    DataRange range(internal::RequireField<double>(range_json, "min"),
                    internal::RequireField<double>(range_json, "max"));
    PrecisionRequirement precision(internal::RequireField<double>(precision_json, "beta"),
                                   internal::RequireField<double>(precision_json, "rho"));
    PrivacyBudget budget(internal::RequireField<double>(budget_json, "epsilon_s"),
                         internal::RequireField<double>(budget_json, "alpha"));

    std::vector<std::pair<int, int>> edges;
    int graph_n = n;
    if (json.contains("graph")) {
      const auto graph_json = json.at("graph");
      graph_n = internal::RequireField<int>(graph_json, "n");
      for (const auto& edge : internal::FieldOr<nlohmann::json>(graph_json, "edges",
                                                                nlohmann::json::array())) {
        if (!edge.is_array() || edge.size() != 2) {
          throw ConfigError("config field 'graph.edges': each edge must be a pair [i, j]");
        }
        edges.emplace_back(edge.at(0).get<int>(), edge.at(1).get<int>());
      }
    }
    ContributorGraph graph(graph_n, std::move(edges));

    RunConfig config{n,
                     range,
                     precision,
                     budget,
                     internal::RequireField<int>(json, "k"),
                     std::move(graph),
                     ParseEstimatorMethod(internal::FieldOr<std::string>(json, "estimator",
                                                                         "sample")),
                     internal::FieldOr<int>(json, "bootstrap_b", 200),
                     internal::RequireField<uint64_t>(json, "seed"),
                     std::nullopt};
    if (json.contains("window_w")) {
      config.window_w = internal::RequireField<int>(json, "window_w");
    }
    return config;
  };

  try {
    RunConfig config = build();
    ValidateRunConfig(config);
    return config;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& error) {
    throw ConfigError(std::string("config: ") + error.what());
  }
}

inline RunConfig LoadRunConfig(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  nlohmann::json json;
  try {
    in >> json;
  } catch (const nlohmann::json::exception& error) {
    throw ConfigError("config parse error in " + path + ": " + error.what());
  }
  return ParseRunConfig(json);
}

inline nlohmann::json RunConfigToJson(const RunConfig& config) {
  nlohmann::json json;
  json["n"] = config.n;
  json["range"] = {{"min", config.range.min_value}, {"max", config.range.max_value}};
  json["precision"] = {{"beta", config.precision.beta}, {"rho", config.precision.rho}};
  json["budget"] = {{"epsilon_s", config.budget.epsilon_s}, {"alpha", config.budget.alpha}};
  json["k"] = config.k;
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [a, b] : config.graph.edges) edges.push_back({a, b});
  json["graph"] = {{"n", config.graph.n}, {"edges", edges}};
  json["estimator"] = EstimatorMethodName(config.estimator);
  json["bootstrap_b"] = config.bootstrap_b;
  json["seed"] = config.seed;
  if (config.window_w) json["window_w"] = *config.window_w;
  return json;
}

}  // namespace rase
