// Copyright 2026 RaterLens Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace raterlens {

enum class ScaleTag { Binary01, Likert4, Likert3 };

ScaleTag parse_scale(std::string_view name);
std::string to_string(ScaleTag scale);

// Column layout of one public dataset file. Only the group column is
// optional (empty name = absent).
struct DatasetSchema {
  std::string tag;  // e.g. d2017, d2022, d2023
  std::string comment_column;
  std::string rater_column;
  std::string value_column;
  std::string group_column;
  ScaleTag scale = ScaleTag::Binary01;
  char delimiter = ',';
};

struct UnifiedAnnotation {
  std::string dataset;
  std::string comment_id;
  std::string rater_id;
  std::string group;
  double raw_value = 0.0;
  std::uint8_t binary_value = 0;
};

struct RejectRecord {
  std::size_t line = 0;  // physical line in the source file
  std::string reason;
  std::string detail;
};

struct LoadResult {
  std::vector<UnifiedAnnotation> annotations;
  std::vector<RejectRecord> rejects;
};

// binary01 is the identity; likert4 maps {-2,-1} to 1 and {0,1} to 0;
// likert3 maps -1 to 1 and {0,1} to 0. Anything else is out of domain.
std::uint8_t binarize(double raw_value, ScaleTag scale);

// Streams the file, binarizing per schema. Unparseable or out-of-domain
// rows land in the rejects list instead of being dropped silently.
LoadResult load_annotations(const std::string& path,
                            const DatasetSchema& schema);

// Exact intersection of comment-id sets; needs at least two datasets.
std::set<std::string> intersect_common(
    std::span<const std::vector<UnifiedAnnotation>> datasets);

struct SampleResult {
  std::vector<UnifiedAnnotation> annotations;
  // Comments that had <= k raters and therefore kept everything.
  std::vector<std::string> shortfall;
};

// Per comment, keep the ratings of k distinct raters drawn without
// replacement, seeded per comment id so the draw is independent of row
// order. Output preserves input order and never invents rows.
SampleResult sample_raters(std::span<const UnifiedAnnotation> annotations,
                           std::int64_t k, std::uint64_t seed);

}  // namespace raterlens
