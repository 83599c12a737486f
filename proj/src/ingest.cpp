// Copyright 2026 RaterLens Authors
// SPDX-License-Identifier: Apache-2.0
#include "raterlens/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "raterlens/common.hpp"
#include "raterlens/csv.hpp"
#include "raterlens/rng.hpp"

namespace raterlens {
namespace {

// Likert values arrive as text like "-2" or "-2.0"; accept exact integers
// only.
bool as_integer(double value, int& out) {
  const double rounded = std::nearbyint(value);
  if (std::abs(value - rounded) > 1e-9) return false;
  if (rounded < -1e9 || rounded > 1e9) return false;
  out = static_cast<int>(rounded);
  return true;
}

std::size_t column_index(const std::vector<std::string>& header,
                         const std::string& name, const std::string& path) {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) {
    throw ConfigError("missing-column", path + ": header has no column '" +
                                            name + "'");
  }
  return static_cast<std::size_t>(it - header.begin());
}

}  // namespace

ScaleTag parse_scale(std::string_view name) {
  if (name == "binary01") return ScaleTag::Binary01;
  if (name == "likert4") return ScaleTag::Likert4;
  if (name == "likert3") return ScaleTag::Likert3;
  throw ConfigError("invalid-scale",
                    "unknown scale '" + std::string(name) + "'");
}

std::string to_string(ScaleTag scale) {
  switch (scale) {
    case ScaleTag::Binary01:
      return "binary01";
    case ScaleTag::Likert4:
      return "likert4";
    case ScaleTag::Likert3:
      return "likert3";
  }
  return "binary01";
}

std::uint8_t binarize(double raw_value, ScaleTag scale) {
  int v = 0;
  if (!as_integer(raw_value, v)) {
    throw DomainError("out-of-domain", "non-integral scale value " +
                                           csv::format_double(raw_value));
  }
  switch (scale) {
    case ScaleTag::Binary01:
      if (v == 0 || v == 1) return static_cast<std::uint8_t>(v);
      break;
    case ScaleTag::Likert4:
      if (v == -2 || v == -1) return 1;
      if (v == 0 || v == 1) return 0;
      break;
    case ScaleTag::Likert3:
      if (v == -1) return 1;
      if (v == 0 || v == 1) return 0;
      break;
  }
  throw DomainError("out-of-domain", "value " + std::to_string(v) +
                                         " outside the " + to_string(scale) +
                                         " domain");
}

LoadResult load_annotations(const std::string& path,
                            const DatasetSchema& schema) {
  csv::Reader reader(path, schema.delimiter);
  std::vector<std::string> header;
  if (!reader.next(header)) {
    throw IoError("empty-file", path + ": no header row");
  }
  const std::size_t comment_at =
      column_index(header, schema.comment_column, path);
  const std::size_t rater_at = column_index(header, schema.rater_column, path);
  const std::size_t value_at = column_index(header, schema.value_column, path);
  const bool has_group = !schema.group_column.empty();
  const std::size_t group_at =
      has_group ? column_index(header, schema.group_column, path) : 0;

  LoadResult result;
  std::vector<std::string> row;
  std::size_t rows = 0;
  while (reader.next(row)) {
    ++rows;
    const std::size_t line = reader.line_number();
    const std::size_t need =
        std::max({comment_at, rater_at, value_at, has_group ? group_at : 0});
    if (row.size() <= need) {
      result.rejects.push_back(
          {line, "short-row",
           "expected at least " + std::to_string(need + 1) + " fields, got " +
               std::to_string(row.size())});
      continue;
    }
    UnifiedAnnotation a;
    a.dataset = schema.tag;
    a.comment_id = row[comment_at];
    a.rater_id = row[rater_at];
    a.group = has_group ? row[group_at] : std::string();
    if (a.comment_id.empty() || a.rater_id.empty()) {
      result.rejects.push_back({line, "missing-id", "empty comment or rater id"});
      continue;
    }
    try {
      a.raw_value = csv::parse_double(row[value_at]);
      a.binary_value = binarize(a.raw_value, schema.scale);
    } catch (const Error&) {
      result.rejects.push_back({line, "bad-value", row[value_at]});
      continue;
    }
    result.annotations.push_back(std::move(a));
  }
  if (rows == 0) {
    throw IoError("empty-file", path + ": no data rows");
  }
  return result;
}

std::set<std::string> intersect_common(
    std::span<const std::vector<UnifiedAnnotation>> datasets) {
  if (datasets.size() < 2) {
    throw ConfigError("invalid-params",
                      "intersection needs at least two datasets, got " +
                          std::to_string(datasets.size()));
  }
  std::set<std::string> common;
  for (const UnifiedAnnotation& a : datasets[0]) {
    common.insert(a.comment_id);
  }
  for (std::size_t d = 1; d < datasets.size(); ++d) {
    std::unordered_set<std::string> ids;
    ids.reserve(datasets[d].size());
    for (const UnifiedAnnotation& a : datasets[d]) {
      ids.insert(a.comment_id);
    }
    for (auto it = common.begin(); it != common.end();) {
      if (ids.count(*it) == 0) {
        it = common.erase(it);
      } else {
        ++it;
      }
    }
  }
  return common;
}

SampleResult sample_raters(std::span<const UnifiedAnnotation> annotations,
                           std::int64_t k, std::uint64_t seed) {
  if (k < 1) {
    throw ConfigError("invalid-params",
                      "rater sample size must be >= 1, got " +
                          std::to_string(k));
  }
  // Distinct raters per comment, sorted so the draw ignores row order.
  std::map<std::string, std::set<std::string>> raters;
  for (const UnifiedAnnotation& a : annotations) {
    raters[a.comment_id].insert(a.rater_id);
  }

  std::unordered_map<std::string, std::unordered_set<std::string>> keep;
  keep.reserve(raters.size());
  SampleResult result;
  for (const auto& [comment, rater_set] : raters) {
    const auto n = static_cast<std::int64_t>(rater_set.size());
    if (n <= k) {
      result.shortfall.push_back(comment);
      continue;  // absent from `keep` means keep everything
    }
    std::vector<std::string> ordered(rater_set.begin(), rater_set.end());
    rng::SplitMix64 gen(rng::key2(rng::stage_seed(seed, "ingest.sample"),
                                  rng::fnv1a(comment)));
    const auto picks = rng::sample_without_replacement(
        ordered.size(), static_cast<std::size_t>(k), gen);
    auto& chosen = keep[comment];
    for (const std::size_t p : picks) {
      chosen.insert(ordered[p]);
    }
  }

  result.annotations.reserve(annotations.size());
  for (const UnifiedAnnotation& a : annotations) {
    const auto it = keep.find(a.comment_id);
    if (it == keep.end() || it->second.count(a.rater_id) > 0) {
      result.annotations.push_back(a);
    }
  }
  return result;
}

}  // namespace raterlens
