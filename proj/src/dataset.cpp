// Copyright 2026 The cdfx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cdfx/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "cdfx/error.hpp"
#include "cdfx/io.hpp"
#include "cdfx/rng.hpp"

namespace cdfx::dataset {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

// Splits one record; double-quoted fields may contain the delimiter and "" escapes.
std::vector<std::string> split_record(const std::string& line, char delim) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == delim) {
      out.push_back(trim(field));
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  out.push_back(trim(field));
  return out;
}

}  // namespace

Dataset::Dataset(std::vector<std::string> names, std::vector<double> values,
                 std::vector<int> labels)
    : names_(std::move(names)), values_(std::move(values)), labels_(std::move(labels)) {
  if (values_.size() != names_.size() * labels_.size())
    throw Error("dataset: value count " + std::to_string(values_.size()) + " != " +
                std::to_string(labels_.size()) + " samples x " + std::to_string(names_.size()) +
                " features");
  std::unordered_set<std::string> seen;
  for (const auto& n : names_)
    if (!seen.insert(n).second) throw Error("dataset: duplicate column name '" + n + "'");
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (!std::isfinite(values_[i]))
      throw Error("dataset: non-finite value at row " + std::to_string(i / names_.size()) +
                  ", column '" + names_[i % names_.size()] + "'");
  for (int y : labels_)
    if (y != 0 && y != 1) throw Error("dataset: labels must be 0 or 1");
  label_values_ = {"0", "1"};
}

std::vector<double> Dataset::column(std::size_t col, std::span<const std::size_t> rows) const {
  if (col >= n_features()) throw Error("dataset: column index out of range");
  std::vector<double> out;
  if (rows.empty()) {
    out.reserve(n_samples());
    for (std::size_t r = 0; r < n_samples(); ++r) out.push_back(at(r, col));
  } else {
    out.reserve(rows.size());
    for (std::size_t r : rows) {
      if (r >= n_samples()) throw Error("dataset: row index out of range");
      out.push_back(at(r, col));
    }
  }
  return out;
}

std::size_t Dataset::index_of(const std::string& name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw Error("dataset: no column named '" + name + "'");
  return static_cast<std::size_t>(it - names_.begin());
}

Dataset Dataset::select_columns(std::span<const std::size_t> cols) const {
  std::vector<std::string> names;
  std::vector<double> values;
  values.reserve(cols.size() * n_samples());
  for (std::size_t c : cols) {
    if (c >= n_features()) throw Error("dataset: column index out of range");
    names.push_back(names_[c]);
  }
  for (std::size_t r = 0; r < n_samples(); ++r)
    for (std::size_t c : cols) values.push_back(at(r, c));
  Dataset out(std::move(names), std::move(values), labels_);
  out.label_values_ = label_values_;
  return out;
}

Dataset load_csv(const std::filesystem::path& path, const std::string& label_column,
                 const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error("load_csv: cannot open '" + path.string() + "'");

  std::string line;
  if (!std::getline(in, line)) throw Error("load_csv: '" + path.string() + "' is empty");
  const auto header = split_record(line, options.delimiter);

  std::size_t label_idx = header.size();
  {
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (!seen.insert(header[i]).second)
        throw Error("load_csv: duplicate column name '" + header[i] + "'");
      if (header[i] == label_column) label_idx = i;
    }
  }
  if (label_idx == header.size())
    throw Error("load_csv: label column '" + label_column + "' not found");

  std::vector<std::string> names;
  for (std::size_t i = 0; i < header.size(); ++i)
    if (i != label_idx) names.push_back(header[i]);

  std::vector<double> values;
  std::vector<std::string> raw_labels;
  std::size_t row = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_record(line, options.delimiter);
    if (fields.size() != header.size())
      throw Error("load_csv: line " + std::to_string(line_no) + " has " +
                  std::to_string(fields.size()) + " fields, header has " +
                  std::to_string(header.size()));
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i == label_idx) {
        if (fields[i].empty())
          throw Error("load_csv: missing label at row " + std::to_string(row));
        raw_labels.push_back(fields[i]);
        continue;
      }
      const auto& f = fields[i];
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc() || ptr != f.data() + f.size() || f.empty())
        throw Error("load_csv: non-numeric value '" + f + "' at row " + std::to_string(row) +
                    ", column '" + header[i] + "'");
      if (!std::isfinite(v))
        throw Error("load_csv: non-finite value '" + f + "' at row " + std::to_string(row) +
                    ", column '" + header[i] + "'");
      values.push_back(v);
    }
    ++row;
  }

  std::set<std::string> distinct(raw_labels.begin(), raw_labels.end());
  if (distinct.size() != 2)
    throw Error("load_csv: label column '" + label_column + "' must hold exactly two distinct "
                "values, found " + std::to_string(distinct.size()));
  const std::vector<std::string> label_values(distinct.begin(), distinct.end());
  std::vector<int> labels;
  labels.reserve(raw_labels.size());
  for (const auto& l : raw_labels) labels.push_back(l == label_values[0] ? 0 : 1);

  Dataset ds(std::move(names), std::move(values), std::move(labels));
  ds.set_label_values(label_values);
  return ds;
}

void write_csv(const Dataset& ds, const std::filesystem::path& path,
               const std::string& label_column) {
  std::ostringstream out;
  for (const auto& n : ds.names()) out << n << ',';
  out << label_column << '\n';
  for (std::size_t r = 0; r < ds.n_samples(); ++r) {
    for (double v : ds.row(r)) out << io::format_double(v) << ',';
    out << ds.labels()[r] << '\n';
  }
  io::write_text(path, out.str());
}

ScalingSpec::ScalingSpec(std::vector<double> mins, std::vector<double> maxs)
    : mins_(std::move(mins)), maxs_(std::move(maxs)) {
  if (mins_.size() != maxs_.size()) throw Error("scaler: min/max length mismatch");
  for (std::size_t c = 0; c < mins_.size(); ++c)
    if (!(mins_[c] <= maxs_[c])) throw Error("scaler: min > max in column " + std::to_string(c));
}

std::vector<double> ScalingSpec::apply(std::span<const double> x) const {
  if (x.size() != size())
    throw Error("apply_scaler: vector has " + std::to_string(x.size()) + " entries, expected " +
                std::to_string(size()));
  std::vector<double> out(x.size());
  for (std::size_t c = 0; c < x.size(); ++c) {
    if (is_constant(c)) {
      out[c] = 0.0;
      continue;
    }
    const double v = 2.0 * (x[c] - mins_[c]) / (maxs_[c] - mins_[c]) - 1.0;
    out[c] = std::clamp(v, -1.0, 1.0);
  }
  return out;
}

std::vector<double> ScalingSpec::invert(std::span<const double> scaled) const {
  if (scaled.size() != size()) throw Error("scaler: length mismatch");
  std::vector<double> out(scaled.size());
  for (std::size_t c = 0; c < scaled.size(); ++c)
    out[c] = is_constant(c) ? mins_[c]
                            : mins_[c] + (scaled[c] + 1.0) * 0.5 * (maxs_[c] - mins_[c]);
  return out;
}

ScalingSpec fit_scaler(const Dataset& ds, std::span<const std::size_t> rows) {
  if (rows.empty()) throw Error("fit_scaler: empty row subset");
  const std::size_t nf = ds.n_features();
  std::vector<double> mins(nf, 0.0), maxs(nf, 0.0);
  bool first = true;
  for (std::size_t r : rows) {
    if (r >= ds.n_samples()) throw Error("fit_scaler: row index out of range");
    const auto x = ds.row(r);
    for (std::size_t c = 0; c < nf; ++c) {
      if (first) {
        mins[c] = maxs[c] = x[c];
      } else {
        mins[c] = std::min(mins[c], x[c]);
        maxs[c] = std::max(maxs[c], x[c]);
      }
    }
    first = false;
  }
  return ScalingSpec(std::move(mins), std::move(maxs));
}

std::vector<std::size_t> FoldPlan::train_set(std::size_t k) const {
  const auto& test = test_set(k);
  std::vector<std::size_t> out;
  out.reserve(n_samples - test.size());
  std::size_t t = 0;
  for (std::size_t i = 0; i < n_samples; ++i) {
    if (t < test.size() && test[t] == i) {
      ++t;
      continue;
    }
    out.push_back(i);
  }
  return out;
}

FoldPlan make_folds(const Dataset& ds, std::size_t n_splits, std::size_t n_repeats,
                    std::uint64_t seed) {
  if (n_splits < 2) throw Error("make_folds: n_splits must be >= 2");
  if (n_repeats < 1) throw Error("make_folds: n_repeats must be >= 1");
  std::vector<std::vector<std::size_t>> by_class(2);
  for (std::size_t i = 0; i < ds.n_samples(); ++i) by_class[ds.labels()[i]].push_back(i);
  for (int c = 0; c < 2; ++c)
    if (by_class[c].size() < n_splits)
      throw Error("make_folds: class " + std::to_string(c) + " has " +
                  std::to_string(by_class[c].size()) + " members, fewer than " +
                  std::to_string(n_splits) + " splits");

  FoldPlan plan;
  plan.n_splits = n_splits;
  plan.n_repeats = n_repeats;
  plan.seed = seed;
  plan.n_samples = ds.n_samples();
  Rng rng(seed);
  for (std::size_t rep = 0; rep < n_repeats; ++rep) {
    std::vector<std::vector<std::size_t>> splits(n_splits);
    // One running position across both classes keeps split sizes within
    // one of each other as well as per-class counts.
    std::size_t pos = 0;
    for (auto members : by_class) {
      for (std::size_t i = members.size(); i > 1; --i)
        std::swap(members[i - 1], members[rng.below(i)]);
      for (std::size_t idx : members) splits[pos++ % n_splits].push_back(idx);
    }
    for (auto& s : splits) std::sort(s.begin(), s.end());
    plan.test_sets.push_back(std::move(splits));
  }
  return plan;
}

nlohmann::json to_json(const FoldPlan& plan) {
  return nlohmann::json{{"n_splits", plan.n_splits},   {"n_repeats", plan.n_repeats},
                        {"seed", plan.seed},           {"n_samples", plan.n_samples},
                        {"test_sets", plan.test_sets}};
}

FoldPlan fold_plan_from_json(const nlohmann::json& j) {
  FoldPlan plan;
  plan.n_splits = j.at("n_splits").get<std::size_t>();
  plan.n_repeats = j.at("n_repeats").get<std::size_t>();
  plan.seed = j.at("seed").get<std::uint64_t>();
  plan.n_samples = j.at("n_samples").get<std::size_t>();
  plan.test_sets = j.at("test_sets").get<std::vector<std::vector<std::vector<std::size_t>>>>();
  return plan;
}

std::vector<std::size_t> all_rows(std::size_t n) {
  std::vector<std::size_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = i;
  return out;
}

}  // namespace cdfx::dataset
