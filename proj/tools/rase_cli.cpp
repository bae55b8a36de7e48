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

// Command-line front end: trace synthesis, pipeline runs, parameter sweeps
// and the standalone linkage attack.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rase/rase.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitDataError = 3;
constexpr int kExitInternalError = 4;

struct SweepRow {
  double param_value;
  double aae;
  double mse;
  double precision;
  double recall;
};

std::vector<double> ParseValueList(const std::string& csv) {
  std::vector<double> values;
  std::stringstream stream(csv);
  std::string field;
  while (std::getline(stream, field, ',')) {
    if (field.empty()) continue;
    size_t consumed = 0;
    double value = 0.0;
    try {
      value = std::stod(field, &consumed);
    } catch (const std::exception&) {
      throw rase::ConfigError("--values: cannot parse '" + field + "'");
    }
    if (consumed != field.size() || !std::isfinite(value)) {
      throw rase::ConfigError("--values: cannot parse '" + field + "'");
    }
    values.push_back(value);
  }
  if (values.empty()) throw rase::ConfigError("--values: no values given");
  return values;
}

int RequireIntValue(double value, const std::string& param) {
  const int as_int = static_cast<int>(value);
  if (static_cast<double>(as_int) != value) {
    throw rase::ConfigError("--values: parameter '" + param + "' takes integers, got " +
                            std::to_string(value));
  }
  return as_int;
}

rase::RunConfig PatchConfig(const rase::RunConfig& base, const std::string& param, double value) {
  rase::RunConfig config = base;
  if (param == "epsilon_s") {
    config.budget = rase::PrivacyBudget(value, base.budget.alpha);
  } else if (param == "alpha") {
    config.budget = rase::PrivacyBudget(base.budget.epsilon_s, value);
  } else if (param == "k") {
    config.k = RequireIntValue(value, param);
  } else if (param == "n") {
    config.n = RequireIntValue(value, param);
    // Sweeping the contributor count invalidates any fixed edge list; fall
    // back to the edgeless graph of the new size.
    config.graph = rase::ContributorGraph(config.n, {});
    if (config.k > config.n) config.k = config.n;
  } else {
    throw rase::ConfigError("--param: unknown sweep parameter '" + param +
                            "' (expected epsilon_s, alpha, k or n)");
  }
  rase::ValidateRunConfig(config);
  return config;
}

void ReportRejected(const std::vector<rase::RejectedTimestamp>& rejected) {
  for (const auto& reject : rejected) {
    std::cerr << "warning: timestamp " << reject.timestamp << " rejected: " << reject.reason
              << "\n";
  }
}

int RunSubcommand(const std::string& config_path, const std::string& input_path,
                  const std::string& output_path, std::optional<uint64_t> seed_override,
                  std::optional<int> window_override, const std::string& estimator_override,
                  std::optional<int> bootstrap_override) {
  rase::RunConfig config = rase::LoadRunConfig(config_path);
  if (seed_override) config.seed = *seed_override;
  if (window_override) config.window_w = *window_override;
  if (!estimator_override.empty()) {
    try {
      config.estimator = rase::ParseEstimatorMethod(estimator_override);
    } catch (const std::invalid_argument& error) {
      throw rase::ConfigError(std::string("--estimator: ") + error.what());
    }
  }
  if (bootstrap_override) config.bootstrap_b = *bootstrap_override;
  rase::ValidateRunConfig(config);

  const rase::Trace trace = rase::IngestTrace(input_path, config.n, config.range);
  ReportRejected(trace.rejected);
  const rase::PipelineRun run = rase::RunPipeline(trace.batches, config);
  rase::WriteJsonFile(output_path, rase::BuildRunReport(run, config, trace.rejected));
  std::cout << "wrote report for " << run.timesteps.size() << " timesteps to " << output_path
            << "\n";
  return kExitOk;
}

int SynthSubcommand(const std::string& output_path, int n, int t_count, uint64_t seed,
                    double range_min, double range_max) {
  const rase::DataRange range(range_min, range_max);
  rase::WriteTraceCsv(output_path, rase::SynthTrace(n, t_count, range, seed));
  std::cout << "wrote " << static_cast<long long>(n) * t_count << " rows to " << output_path
            << "\n";
  return kExitOk;
}

int SweepSubcommand(const std::string& config_path, const std::string& param,
                    const std::string& values_csv, const std::string& output_path,
                    const std::string& input_path, int trials, int t_count) {
  if (trials < 1) throw rase::ConfigError("--trials: must be at least 1");
  const rase::RunConfig base = rase::LoadRunConfig(config_path);
  const std::vector<double> values = ParseValueList(values_csv);
  if (!input_path.empty() && param == "n") {
    throw rase::ConfigError("--input: a fixed trace cannot be swept over 'n'; "
                            "let sweep synthesize its traces");
  }

  std::optional<rase::Trace> fixed_trace;
  if (!input_path.empty()) {
    fixed_trace = rase::IngestTrace(input_path, base.n, base.range);
    ReportRejected(fixed_trace->rejected);
  }

  std::vector<SweepRow> rows;
  for (const double value : values) {
    const rase::RunConfig point = PatchConfig(base, param, value);
    double aae_sum = 0.0, mse_sum = 0.0, precision_sum = 0.0, recall_sum = 0.0;
    int attack_trials = 0;
    for (int trial = 0; trial < trials; ++trial) {
      rase::RunConfig config = point;
      config.seed = point.seed + static_cast<uint64_t>(trial);
      std::map<int64_t, std::vector<rase::SensorReading>> batches;
      if (fixed_trace) {
        batches = fixed_trace->batches;
      } else {
        rase::Trace trace;
        const auto synth_rows = rase::SynthTrace(config.n, t_count, config.range, config.seed);
        for (const auto& row : synth_rows) {
          batches[row.timestamp].push_back({row.device_id, row.timestamp, row.value});
        }
      }
      const rase::PipelineRun run = rase::RunPipeline(batches, config);
      aae_sum += run.mean_aae;
      mse_sum += run.mean_mse;
      if (run.attack) {
        precision_sum += run.attack->precision;
        recall_sum += run.attack->recall;
        ++attack_trials;
      }
    }
    const double nan = std::nan("");
    rows.push_back({value, aae_sum / trials, mse_sum / trials,
                    attack_trials > 0 ? precision_sum / attack_trials : nan,
                    attack_trials > 0 ? recall_sum / attack_trials : nan});
  }

  std::ofstream out(output_path, std::ios::binary);
  if (!out) throw rase::DataError("cannot open output file for writing: " + output_path);
  out << "param_value,aae,mse,precision,recall\n";
  char buffer[192];
  for (const auto& row : rows) {
    std::snprintf(buffer, sizeof(buffer), "%.12g,%.12g,%.12g,%.12g,%.12g", row.param_value,
                  row.aae, row.mse, row.precision, row.recall);
    out << buffer << "\n";
  }
  if (!out) throw rase::DataError("failed while writing output file: " + output_path);
  std::cout << "wrote " << rows.size() << " sweep rows to " << output_path << "\n";
  return kExitOk;
}

int AttackSubcommand(const std::string& report_path, const std::string& input_path,
                     const std::string& output_path, bool greedy) {
  const nlohmann::json report = rase::LoadJsonFile(report_path);
  if (!report.contains("config") || !report.contains("timesteps")) {
    throw rase::DataError("report is missing 'config' or 'timesteps': " + report_path);
  }
  const rase::RunConfig config = rase::ParseRunConfig(report.at("config"));

  std::vector<rase::ShuffledBatch> batches;
  std::vector<std::vector<int>> truth;
  for (const auto& step : report.at("timesteps")) {
    rase::ShuffledBatch batch;
    batch.timestamp = step.at("t").get<int64_t>();
    batch.values = step.at("values").get<std::vector<double>>();
    batch.branch_used = step.at("branch_used").get<std::string>() == "mallows"
                            ? rase::ShuffleBranch::kMallows
                            : rase::ShuffleBranch::kUniformCycle;
    batches.push_back(std::move(batch));
    truth.push_back(step.at("assignment").get<std::vector<int>>());
  }

  const rase::Trace trace = rase::IngestTrace(input_path, config.n);
  std::vector<std::vector<double>> history(config.n);
  for (const auto& [t, readings] : trace.batches) {
    for (const auto& reading : readings) {
      history[reading.contributor_id - 1].push_back(reading.state);
    }
  }

  rase::AttackResult result;
  try {
    result = rase::LinkageAttack(history, batches, truth, greedy);
  } catch (const std::invalid_argument& error) {
    throw rase::DataError(std::string("attack: ") + error.what());
  }

  nlohmann::json out;
  out["precision"] = result.precision;
  out["recall"] = result.recall;
  out["true_positives"] = result.true_positives;
  out["false_positives"] = result.false_positives;
  out["false_negatives"] = result.false_negatives;
  out["greedy"] = greedy;
  if (output_path.empty()) {
    std::cout << out.dump(2) << "\n";
  } else {
    rase::WriteJsonFile(output_path, out);
    std::cout << "wrote attack metrics to " << output_path << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"randomize-shuffle-estimate private aggregation pipeline"};
  app.require_subcommand(1);

  // synth
  auto* synth = app.add_subcommand("synth", "generate a synthetic sensor trace");
  std::string synth_output;
  int synth_n = 64;
  int synth_t_count = 100;
  uint64_t synth_seed = 1;
  double synth_min = 3.9;
  double synth_max = 178.3;
  synth->add_option("--output", synth_output, "trace CSV to write")->required();
  synth->add_option("--n", synth_n, "number of devices");
  synth->add_option("--t-count", synth_t_count, "number of timestamps");
  synth->add_option("--seed", synth_seed, "random seed");
  synth->add_option("--range-min", synth_min, "smallest possible value");
  synth->add_option("--range-max", synth_max, "largest possible value");

  // run
  auto* run = app.add_subcommand("run", "run the pipeline over a trace");
  std::string run_config, run_input, run_output, run_estimator;
  std::optional<uint64_t> run_seed;
  std::optional<int> run_window, run_bootstrap;
  run->add_option("--config", run_config, "run configuration JSON")->required();
  run->add_option("--input", run_input, "input trace CSV")->required();
  run->add_option("--output", run_output, "report JSON to write")->required();
  run->add_option("--seed", run_seed, "override the configured seed");
  run->add_option("--window", run_window, "emit Win(t_q, w) for every eligible t_q");
  run->add_option("--estimator", run_estimator, "sample, mle or bootstrap");
  run->add_option("--bootstrap-b", run_bootstrap, "bootstrap resample count");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "re-run the pipeline across parameter values");
  std::string sweep_config, sweep_param, sweep_values, sweep_output, sweep_input;
  int sweep_trials = 10;
  int sweep_t_count = 50;
  sweep->add_option("--config", sweep_config, "base configuration JSON")->required();
  sweep->add_option("--param", sweep_param, "epsilon_s, alpha, k or n")->required();
  sweep->add_option("--values", sweep_values, "comma-separated parameter values")->required();
  sweep->add_option("--output", sweep_output, "sweep CSV to write")->required();
  sweep->add_option("--input", sweep_input, "fixed input trace (otherwise synthesized)");
  sweep->add_option("--trials", sweep_trials, "seeded trials to average per value");
  sweep->add_option("--t-count", sweep_t_count, "timestamps per synthesized trace");

  // attack
  auto* attack = app.add_subcommand("attack", "run the linkage attack on a stored report");
  std::string attack_report, attack_input, attack_output;
  bool attack_greedy = false;
  attack->add_option("--report", attack_report, "report JSON from a run")->required();
  attack->add_option("--input", attack_input, "raw trace CSV (attacker history)")->required();
  attack->add_option("--output", attack_output, "metrics JSON to write (default stdout)");
  attack->add_flag("--greedy", attack_greedy, "use the greedy matcher instead of optimal");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    const int code = app.exit(error);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (synth->parsed()) {
      return SynthSubcommand(synth_output, synth_n, synth_t_count, synth_seed, synth_min,
                             synth_max);
    }
    if (run->parsed()) {
      return RunSubcommand(run_config, run_input, run_output, run_seed, run_window, run_estimator,
                           run_bootstrap);
    }
    if (sweep->parsed()) {
      return SweepSubcommand(sweep_config, sweep_param, sweep_values, sweep_output, sweep_input,
                             sweep_trials, sweep_t_count);
    }
    if (attack->parsed()) {
      return AttackSubcommand(attack_report, attack_input, attack_output, attack_greedy);
    }
    std::cerr << "error: no subcommand\n";
    return kExitConfigError;
  } catch (const rase::ConfigError& error) {
    std::cerr << "configuration error: " << error.what() << "\n";
    return kExitConfigError;
  } catch (const rase::DataError& error) {
    std::cerr << "data error: " << error.what() << "\n";
    return kExitDataError;
  } catch (const std::invalid_argument& error) {
    std::cerr << "configuration error: " << error.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& error) {
    std::cerr << "internal error: " << error.what() << "\n";
    return kExitInternalError;
  }
}
