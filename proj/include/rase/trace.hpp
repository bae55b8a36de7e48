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

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rase/errors.hpp"
#include "rase/pipeline.hpp"
#include "rase/randomizer.hpp"
#include "rase/rng.hpp"

namespace rase {

inline constexpr const char* kTraceHeader = "timestamp,device_id,value";

struct TraceRow {
  int64_t timestamp;
  int device_id;
  double value;
};

struct RejectedTimestamp {
  int64_t timestamp;
  std::string reason;
};

struct Trace {
  std::map<int64_t, std::vector<SensorReading>> batches;
  std::vector<RejectedTimestamp> rejected;
};

// Synthetic load trace: each device gets a base level skewed toward the low
// end of the range (most appliances idle low), a slow daily swing, and small
// jitter, all clamped into the range. Deterministic per seed.
inline std::vector<TraceRow> SynthTrace(int n, int t_count, const DataRange& range,
                                        uint64_t seed) {
  if (n < 1) throw std::invalid_argument("SynthTrace: n must be at least 1");
  if (t_count < 1) throw std::invalid_argument("SynthTrace: t_count must be at least 1");
  RandomStream rng(DeriveSeed(seed, {0x5A11}));
  const double width = range.Width();
  std::vector<double> base(n), phase(n);
  for (int i = 0; i < n; ++i) {
    base[i] = range.min_value + width * std::pow(rng.NextUnitDouble(), 2.2);
    phase[i] = rng.NextUnitDouble() * 2.0 * M_PI;
  }
  std::vector<TraceRow> rows;
  rows.reserve(static_cast<size_t>(n) * t_count);
  for (int t = 1; t <= t_count; ++t) {
    for (int i = 0; i < n; ++i) {
      const double swing = 0.15 * (base[i] - range.min_value) *
                           std::sin(2.0 * M_PI * t / 24.0 + phase[i]);
      const double jitter = 0.02 * width * (2.0 * rng.NextUnitDouble() - 1.0);
      double value = base[i] + swing + jitter;
      value = std::min(std::max(value, range.min_value), range.max_value);
      rows.push_back({t, i + 1, value});
    }
  }
  return rows;
}

inline void WriteTraceCsv(const std::string& path, const std::vector<TraceRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open trace file for writing: " + path);
  out << kTraceHeader << "\n";
  char value_buffer[64];
  for (const auto& row : rows) {
    // %.17g round-trips doubles exactly, so synth -> ingest is lossless.
    std::snprintf(value_buffer, sizeof(value_buffer), "%.17g", row.value);
    out << row.timestamp << "," << row.device_id << "," << value_buffer << "\n";
  }
  if (!out) throw DataError("failed while writing trace file: " + path);
}

namespace internal {

inline int64_t ParseInt64Field(const std::string& field, const std::string& what, int line) {
  size_t consumed = 0;
  int64_t value = 0;
  try {
    value = std::stoll(field, &consumed);
  } catch (const std::exception&) {
    throw DataError("line " + std::to_string(line) + ": cannot parse " + what + " '" + field +
                    "'");
  }
  if (consumed != field.size()) {
    throw DataError("line " + std::to_string(line) + ": trailing characters in " + what + " '" +
                    field + "'");
  }
  return value;
}

inline double ParseDoubleField(const std::string& field, const std::string& what, int line) {
  size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(field, &consumed);
  } catch (const std::exception&) {
    throw DataError("line " + std::to_string(line) + ": cannot parse " + what + " '" + field +
                    "'");
  }
  if (consumed != field.size() || !std::isfinite(value)) {
    throw DataError("line " + std::to_string(line) + ": " + what + " '" + field +
                    "' is not a finite number");
  }
  return value;
}

}  // namespace internal

// Loads a CSV trace and groups rows by timestamp. Timestamps that do not carry
// exactly one reading per device 1..expected_n are rejected with a diagnostic
// rather than imputed. Values outside the configured range fail hard, citing
// the offending line.
inline Trace IngestTrace(const std::string& path, int expected_n,
                         const std::optional<DataRange>& range = std::nullopt) {
  if (expected_n < 1) throw std::invalid_argument("IngestTrace: expected_n must be positive");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open trace file: " + path);

  std::string line;
  if (!std::getline(in, line)) throw DataError("empty trace file: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTraceHeader) {
    throw DataError("line 1: expected header '" + std::string(kTraceHeader) + "', got '" + line +
                    "'");
  }

  std::map<int64_t, std::map<int, double>> by_time;
  int line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream fields(line);
    std::string timestamp_field, device_field, value_field, extra;
    if (!std::getline(fields, timestamp_field, ',') || !std::getline(fields, device_field, ',') ||
        !std::getline(fields, value_field, ',')) {
      throw DataError("line " + std::to_string(line_number) + ": expected 3 comma-separated " +
                      "fields, got '" + line + "'");
    }
    if (std::getline(fields, extra, ',')) {
      throw DataError("line " + std::to_string(line_number) + ": too many fields in '" + line +
                      "'");
    }
    const int64_t t = internal::ParseInt64Field(timestamp_field, "timestamp", line_number);
    const int64_t device = internal::ParseInt64Field(device_field, "device_id", line_number);
    const double value = internal::ParseDoubleField(value_field, "value", line_number);
    if (t < 1) {
      throw DataError("line " + std::to_string(line_number) + ": timestamp must be positive");
    }
    if (device < 1 || device > expected_n) {
      throw DataError("line " + std::to_string(line_number) + ": device_id " +
                      std::to_string(device) + " outside 1.." + std::to_string(expected_n));
    }
    if (range && (value < range->min_value || value > range->max_value)) {
      throw DataError("line " + std::to_string(line_number) + ": value " + value_field +
                      " outside configured range [" + std::to_string(range->min_value) + ", " +
                      std::to_string(range->max_value) + "]");
    }
    if (!by_time[t].insert({static_cast<int>(device), value}).second) {
      throw DataError("line " + std::to_string(line_number) + ": duplicate reading for device " +
                      std::to_string(device) + " at timestamp " + std::to_string(t));
    }
  }

  Trace trace;
  for (const auto& [t, readings] : by_time) {
    if (static_cast<int>(readings.size()) != expected_n) {
      trace.rejected.push_back({t, "has " + std::to_string(readings.size()) + " of " +
                                       std::to_string(expected_n) + " devices"});
      continue;
    }
    std::vector<SensorReading> batch;
    batch.reserve(expected_n);
    for (const auto& [device, value] : readings) batch.push_back({device, t, value});
    trace.batches.emplace(t, std::move(batch));
  }
  return trace;
}

}  // namespace rase
