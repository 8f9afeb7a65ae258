// Copyright 2026 The FROT Authors
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

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "frot/measures.hpp"
#include "frot/synth.hpp"

namespace frot::io {

inline constexpr int kSchemaVersion = 1;

// Shortest decimal form that parses back to the same double.
std::string format_double(double x);

// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content);
std::string read_file(const std::filesystem::path& path);

// Measure CSV: header names every coordinate column "g<k>_<name>"; columns of
// one group are contiguous and groups appear in increasing k. An optional
// "weight" column carries the weights.
GroupedMeasure parse_measure_csv(const std::string& text);
std::string measure_to_csv(const GroupedMeasure& m);
GroupedMeasure read_measure_csv(const std::filesystem::path& path);

// {"schema_version": 1, "points": [[...]], "group_widths": [...],
//  "weights": [...]}; group_widths and weights are optional.
GroupedMeasure parse_measure_json(const std::string& text);
std::string measure_to_json(const GroupedMeasure& m);

// .json selects the JSON reader, anything else the CSV reader.
GroupedMeasure read_measure(const std::filesystem::path& path);

// Dense matrix, one row per line, no header.
std::string matrix_to_csv(const Matrix& m);
Matrix parse_matrix_csv(const std::string& text);

// Labeled samples with a header row. label_column < 0 counts from the end
// (-1 = last column). Labels must take exactly two distinct values; the
// lexicographically smaller one maps to 0.
LabeledData parse_labeled_csv(const std::string& text, int label_column = -1);
LabeledData read_labeled_csv(const std::filesystem::path& path,
                             int label_column = -1);
// Label written as the last column named "label".
std::string labeled_to_csv(const LabeledData& data);

std::string_view library_version();

struct Manifest {
  std::string command;
  // JSON object text describing the effective configuration.
  std::string config_json = "{}";
  std::uint64_t seed = 0;
  double wall_seconds = 0.0;
  std::vector<std::string> outputs;
  std::vector<std::string> notes;
};

std::string manifest_to_json(const Manifest& m);
// Writes <dir>/manifest.json atomically.
void write_manifest(const std::filesystem::path& dir, const Manifest& m);

}  // namespace frot::io
