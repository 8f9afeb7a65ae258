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

#include "frot/io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace frot::io {

using nlohmann::json;

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out << content;
    if (!out) throw Error("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::vector<std::string> nonempty_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (trim(line).empty()) continue;
    lines.push_back(line);
  }
  return lines;
}

double parse_number(const std::string& s, std::size_t line) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) {
    std::ostringstream msg;
    msg << "line " << line << ": not a number: '" << s << "'";
    throw ValidationError(msg.str());
  }
  return v;
}

// "g<k>_..." -> k, or -1 when the name is not a group column.
long group_index(const std::string& name) {
  if (name.size() < 3 || name[0] != 'g') return -1;
  const auto us = name.find('_');
  if (us == std::string::npos || us == 1) return -1;
  long k = 0;
  const auto res = std::from_chars(name.data() + 1, name.data() + us, k);
  if (res.ec != std::errc() || res.ptr != name.data() + us) return -1;
  return k;
}

}  // namespace

GroupedMeasure parse_measure_csv(const std::string& text) {
  const auto lines = nonempty_lines(text);
  if (lines.empty()) throw ValidationError("measure CSV is empty");
  const auto header = split_fields(lines[0]);

  std::vector<std::size_t> coord_cols;
  std::vector<std::size_t> widths;
  long current = -1;
  std::set<long> seen;
  long weight_col = -1;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == "weight") {
      if (weight_col >= 0)
        throw ValidationError("measure CSV has two weight columns");
      weight_col = static_cast<long>(c);
      continue;
    }
    const long k = group_index(header[c]);
    if (k < 0)
      throw ValidationError("measure CSV column '" + header[c] +
                            "' lacks a g<k>_ group prefix");
    if (k != current) {
      if (seen.count(k))
        throw ValidationError("measure CSV group g" + std::to_string(k) +
                              " is not contiguous");
      if (k < current)
        throw ValidationError("measure CSV groups must appear in order");
      seen.insert(k);
      current = k;
      widths.push_back(0);
    }
    ++widths.back();
    coord_cols.push_back(c);
  }
  if (coord_cols.empty())
    throw ValidationError("measure CSV has no coordinate columns");

  const std::size_t n = lines.size() - 1;
  Matrix points(static_cast<Eigen::Index>(n),
                static_cast<Eigen::Index>(coord_cols.size()));
  Vector weights(static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < n; ++r) {
    const auto fields = split_fields(lines[r + 1]);
    if (fields.size() != header.size()) {
      std::ostringstream msg;
      msg << "line " << r + 2 << ": expected " << header.size()
          << " fields, got " << fields.size();
      throw ValidationError(msg.str());
    }
    for (std::size_t k = 0; k < coord_cols.size(); ++k)
      points(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) =
          parse_number(fields[coord_cols[k]], r + 2);
    if (weight_col >= 0)
      weights[static_cast<Eigen::Index>(r)] =
          parse_number(fields[static_cast<std::size_t>(weight_col)], r + 2);
  }
  if (weight_col >= 0) return build_grouped_measure(points, widths, weights);
  return build_grouped_measure(points, widths);
}

std::string measure_to_csv(const GroupedMeasure& m) {
  std::ostringstream out;
  for (std::size_t l = 0; l < m.num_groups(); ++l)
    for (std::size_t k = 0; k < m.groups()[l].width; ++k)
      out << 'g' << l << "_f" << k << ',';
  out << "weight\n";
  for (Eigen::Index i = 0; i < m.points().rows(); ++i) {
    for (Eigen::Index k = 0; k < m.points().cols(); ++k)
      out << format_double(m.points()(i, k)) << ',';
    out << format_double(m.weights()[i]) << '\n';
  }
  return out.str();
}

GroupedMeasure read_measure_csv(const std::filesystem::path& path) {
  return parse_measure_csv(read_file(path));
}

GroupedMeasure parse_measure_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("measure JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("points"))
    throw ValidationError("measure JSON needs a \"points\" array");
  try {
    const auto& pts = doc["points"];
    if (!pts.is_array() || pts.empty())
      throw ValidationError("measure JSON: points must be a non-empty array");
    const std::size_t d = pts[0].size();
    Matrix points(static_cast<Eigen::Index>(pts.size()),
                  static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (pts[i].size() != d)
        throw ValidationError("measure JSON: ragged points array");
      for (std::size_t k = 0; k < d; ++k)
        points(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
            pts[i][k].get<double>();
    }
    std::optional<std::vector<std::size_t>> widths;
    if (doc.contains("group_widths") && !doc["group_widths"].is_null())
      widths = doc["group_widths"].get<std::vector<std::size_t>>();
    std::optional<Vector> weights;
    if (doc.contains("weights") && !doc["weights"].is_null()) {
      const auto w = doc["weights"].get<std::vector<double>>();
      weights = Eigen::Map<const Vector>(w.data(),
                                         static_cast<Eigen::Index>(w.size()));
    }
    return build_grouped_measure(points, widths, weights);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("measure JSON: ") + e.what());
  }
}

std::string measure_to_json(const GroupedMeasure& m) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  json pts = json::array();
  for (Eigen::Index i = 0; i < m.points().rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.points().cols(); ++k)
      row.push_back(m.points()(i, k));
    pts.push_back(std::move(row));
  }
  doc["points"] = std::move(pts);
  doc["group_widths"] = m.group_widths();
  doc["weights"] = std::vector<double>(m.weights().data(),
                                       m.weights().data() + m.weights().size());
  return doc.dump(2) + "\n";
}

GroupedMeasure read_measure(const std::filesystem::path& path) {
  if (path.extension() == ".json") return parse_measure_json(read_file(path));
  return read_measure_csv(path);
}

std::string matrix_to_csv(const Matrix& m) {
  std::ostringstream out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
  return out.str();
}

Matrix parse_matrix_csv(const std::string& text) {
  const auto lines = nonempty_lines(text);
  if (lines.empty()) throw ValidationError("matrix CSV is empty");
  std::vector<std::vector<std::string>> rows;
  for (const auto& l : lines) rows.push_back(split_fields(l));
  Matrix m(static_cast<Eigen::Index>(rows.size()),
           static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size())
      throw ValidationError("matrix CSV is ragged");
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          parse_number(rows[i][j], i + 1);
  }
  return m;
}

LabeledData parse_labeled_csv(const std::string& text, int label_column) {
  const auto lines = nonempty_lines(text);
  if (lines.size() < 2)
    throw ValidationError("labeled CSV needs a header and at least one row");
  const auto header = split_fields(lines[0]);
  const long ncols = static_cast<long>(header.size());
  if (ncols < 2)
    throw ValidationError("labeled CSV needs a feature and a label column");
  const long label = label_column < 0 ? ncols + label_column : label_column;
  if (label < 0 || label >= ncols)
    throw ValidationError("labeled CSV: label column out of range");

  LabeledData out;
  for (long c = 0; c < ncols; ++c)
    if (c != label) out.columns.push_back(header[static_cast<std::size_t>(c)]);

  const std::size_t n = lines.size() - 1;
  out.features.resize(static_cast<Eigen::Index>(n), ncols - 1);
  std::vector<std::string> raw_labels;
  for (std::size_t r = 0; r < n; ++r) {
    const auto fields = split_fields(lines[r + 1]);
    if (static_cast<long>(fields.size()) != ncols) {
      std::ostringstream msg;
      msg << "labeled CSV line " << r + 2 << ": expected " << ncols
          << " fields, got " << fields.size();
      throw ValidationError(msg.str());
    }
    Eigen::Index k = 0;
    for (long c = 0; c < ncols; ++c) {
      if (c == label) {
        raw_labels.push_back(fields[static_cast<std::size_t>(c)]);
        continue;
      }
      out.features(static_cast<Eigen::Index>(r), k++) =
          parse_number(fields[static_cast<std::size_t>(c)], r + 2);
    }
  }
  const std::set<std::string> distinct(raw_labels.begin(), raw_labels.end());
  if (distinct.size() != 2)
    throw ValidationError("labeled CSV: label column must hold two classes");
  const std::string& first = *distinct.begin();
  for (const auto& l : raw_labels) out.labels.push_back(l == first ? 0 : 1);
  return out;
}

LabeledData read_labeled_csv(const std::filesystem::path& path,
                             int label_column) {
  return parse_labeled_csv(read_file(path), label_column);
}

std::string labeled_to_csv(const LabeledData& data) {
  std::ostringstream out;
  for (const auto& c : data.columns) out << c << ',';
  out << "label\n";
  for (Eigen::Index i = 0; i < data.features.rows(); ++i) {
    for (Eigen::Index k = 0; k < data.features.cols(); ++k)
      out << format_double(data.features(i, k)) << ',';
    out << data.labels[static_cast<std::size_t>(i)] << '\n';
  }
  return out.str();
}

std::string_view library_version() { return FROT_VERSION; }

std::string manifest_to_json(const Manifest& m) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = m.command;
  try {
    doc["config"] = json::parse(m.config_json);
  } catch (const json::exception&) {
    throw Error("manifest config is not valid JSON");
  }
  doc["seed"] = m.seed;
  doc["version"] = std::string(library_version());
  doc["wall_seconds"] = m.wall_seconds;
  doc["outputs"] = m.outputs;
  doc["notes"] = m.notes;
  return doc.dump(2) + "\n";
}

void write_manifest(const std::filesystem::path& dir, const Manifest& m) {
  write_file_atomic(dir / "manifest.json", manifest_to_json(m));
}

}  // namespace frot::io
