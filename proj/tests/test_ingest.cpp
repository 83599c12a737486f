// Copyright 2026 RaterLens Authors
// SPDX-License-Identifier: Apache-2.0
#include "raterlens/ingest.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "raterlens/common.hpp"
#include "raterlens/rng.hpp"

using namespace raterlens;

namespace {

std::filesystem::path write_temp(const std::string& name,
                                 const std::string& content) {
  const auto path =
      std::filesystem::temp_directory_path() / ("raterlens_ingest_" + name);
  std::ofstream out(path, std::ios::binary);
  out << content;
  return path;
}

DatasetSchema likert4_schema() {
  DatasetSchema schema;
  schema.tag = "d2017";
  schema.comment_column = "comment_id";
  schema.rater_column = "worker_id";
  schema.value_column = "toxic_score";
  schema.scale = ScaleTag::Likert4;
  return schema;
}

}  // namespace

TEST_CASE("binarize follows the declared scale mappings") {
  CHECK(binarize(-2.0, ScaleTag::Likert4) == 1);
  CHECK(binarize(-1.0, ScaleTag::Likert4) == 1);
  CHECK(binarize(0.0, ScaleTag::Likert4) == 0);
  CHECK(binarize(1.0, ScaleTag::Likert4) == 0);

  CHECK(binarize(-1.0, ScaleTag::Likert3) == 1);
  CHECK(binarize(0.0, ScaleTag::Likert3) == 0);
  CHECK(binarize(1.0, ScaleTag::Likert3) == 0);

  CHECK(binarize(1.0, ScaleTag::Binary01) == 1);
  CHECK(binarize(0.0, ScaleTag::Binary01) == 0);

  CHECK_THROWS_AS(binarize(2.0, ScaleTag::Likert4), DomainError);
  CHECK_THROWS_AS(binarize(0.5, ScaleTag::Binary01), DomainError);
  CHECK_THROWS_AS(binarize(-2.0, ScaleTag::Likert3), DomainError);
}

TEST_CASE("scale tag parsing") {
  CHECK(parse_scale("binary01") == ScaleTag::Binary01);
  CHECK(parse_scale("likert4") == ScaleTag::Likert4);
  CHECK(parse_scale("likert3") == ScaleTag::Likert3);
  CHECK_THROWS_AS(parse_scale("likert9"), ConfigError);
}

TEST_CASE("a clean file loads every row") {
  std::string content = "comment_id,worker_id,toxic_score\n";
  for (int i = 0; i < 10; ++i) {
    content += "c" + std::to_string(i % 3) + ",w" + std::to_string(i) + "," +
               std::to_string((i % 4) - 2) + "\n";
  }
  const auto path = write_temp("clean.csv", content);
  const LoadResult result = load_annotations(path.string(), likert4_schema());
  CHECK(result.annotations.size() == 10);
  CHECK(result.rejects.empty());
  CHECK(result.annotations[0].dataset == "d2017");
  CHECK(result.annotations[0].comment_id == "c0");
  CHECK(result.annotations[0].raw_value == -2.0);
  CHECK(result.annotations[0].binary_value == 1);
  std::filesystem::remove(path);
}

TEST_CASE("a missing declared column is a schema error naming it") {
  const auto path = write_temp("nocol.csv", "comment_id,toxic_score\nc1,0\n");
  try {
    load_annotations(path.string(), likert4_schema());
    FAIL("expected missing-column");
  } catch (const ConfigError& e) {
    CHECK(e.code() == "missing-column");
    CHECK(std::string(e.what()).find("worker_id") != std::string::npos);
  }
  std::filesystem::remove(path);
}

TEST_CASE("bad rows are rejected, not dropped silently") {
  std::string content = "comment_id,worker_id,toxic_score\n";
  for (int i = 0; i < 9; ++i) {
    content += "c" + std::to_string(i) + ",w" + std::to_string(i) + ",0\n";
  }
  content += "c9,w9,x\n";           // unparseable value
  content += "c10,w10,7\n";         // out of scale domain
  content += "c11,w11\n";           // short row
  const auto path = write_temp("rejects.csv", content);
  const LoadResult result = load_annotations(path.string(), likert4_schema());
  CHECK(result.annotations.size() == 9);
  REQUIRE(result.rejects.size() == 3);
  CHECK(result.rejects[0].line == 11);
  std::filesystem::remove(path);
}

TEST_CASE("empty and header-only files are IO errors") {
  const auto empty = write_temp("empty.csv", "");
  CHECK_THROWS_AS(load_annotations(empty.string(), likert4_schema()), IoError);
  const auto header_only =
      write_temp("header.csv", "comment_id,worker_id,toxic_score\n");
  CHECK_THROWS_AS(load_annotations(header_only.string(), likert4_schema()),
                  IoError);
  std::filesystem::remove(empty);
  std::filesystem::remove(header_only);
}

TEST_CASE("group column and custom delimiter are honored") {
  DatasetSchema schema;
  schema.tag = "d2022";
  schema.comment_column = "id";
  schema.rater_column = "rater";
  schema.value_column = "v";
  schema.group_column = "pool";
  schema.scale = ScaleTag::Binary01;
  schema.delimiter = '\t';
  const auto path =
      write_temp("tabs.tsv", "id\trater\tv\tpool\nc1\tw1\t1\tControl\n");
  const LoadResult result = load_annotations(path.string(), schema);
  REQUIRE(result.annotations.size() == 1);
  CHECK(result.annotations[0].group == "Control");
  std::filesystem::remove(path);
}

namespace {

std::vector<UnifiedAnnotation> notes(const std::string& dataset,
                                     std::initializer_list<const char*> ids) {
  std::vector<UnifiedAnnotation> out;
  int rater = 0;
  for (const char* id : ids) {
    UnifiedAnnotation a;
    a.dataset = dataset;
    a.comment_id = id;
    a.rater_id = "w" + std::to_string(rater++);
    a.binary_value = 0;
    out.push_back(a);
  }
  return out;
}

}  // namespace

TEST_CASE("intersection of comment id sets") {
  const std::vector<std::vector<UnifiedAnnotation>> pools{
      notes("a", {"c1", "c2", "c3"}), notes("b", {"c2", "c3", "c4"})};
  CHECK(intersect_common(pools) == std::set<std::string>{"c2", "c3"});

  SUBCASE("self-intersection is the identity") {
    const std::vector<std::vector<UnifiedAnnotation>> same{
        notes("a", {"c1", "c2"}), notes("a", {"c1", "c2"})};
    CHECK(intersect_common(same) == std::set<std::string>{"c1", "c2"});
  }
  SUBCASE("disjoint datasets intersect to nothing") {
    const std::vector<std::vector<UnifiedAnnotation>> disjoint{
        notes("a", {"c1"}), notes("b", {"c2"})};
    CHECK(intersect_common(disjoint).empty());
  }
  SUBCASE("commutative and associative") {
    const auto x = notes("a", {"c1", "c2", "c5"});
    const auto y = notes("b", {"c2", "c5", "c7"});
    const auto z = notes("c", {"c5", "c2", "c9"});
    const std::vector<std::vector<UnifiedAnnotation>> xyz{x, y, z};
    const std::vector<std::vector<UnifiedAnnotation>> zyx{z, y, x};
    CHECK(intersect_common(xyz) == intersect_common(zyx));
    CHECK(intersect_common(xyz) == std::set<std::string>{"c2", "c5"});
  }
  SUBCASE("fewer than two datasets is invalid") {
    const std::vector<std::vector<UnifiedAnnotation>> one{notes("a", {"c1"})};
    CHECK_THROWS_AS(intersect_common(one), ConfigError);
  }
}

TEST_CASE("rater subsampling keeps k distinct raters per comment") {
  std::vector<UnifiedAnnotation> annotations;
  for (int r = 0; r < 10; ++r) {
    UnifiedAnnotation a;
    a.dataset = "d";
    a.comment_id = "rich";
    a.rater_id = "w" + std::to_string(r);
    annotations.push_back(a);
  }
  for (int r = 0; r < 3; ++r) {
    UnifiedAnnotation a;
    a.dataset = "d";
    a.comment_id = "sparse";
    a.rater_id = "w" + std::to_string(r);
    annotations.push_back(a);
  }

  const SampleResult result = sample_raters(annotations, 5, 17);
  std::set<std::string> rich_raters, sparse_raters;
  for (const auto& a : result.annotations) {
    (a.comment_id == "rich" ? rich_raters : sparse_raters).insert(a.rater_id);
  }
  CHECK(rich_raters.size() == 5);
  CHECK(sparse_raters.size() == 3);
  CHECK(result.shortfall == std::vector<std::string>{"sparse"});

  SUBCASE("same seed retains the same raters") {
    const SampleResult again = sample_raters(annotations, 5, 17);
    REQUIRE(again.annotations.size() == result.annotations.size());
    for (std::size_t i = 0; i < result.annotations.size(); ++i) {
      CHECK(again.annotations[i].rater_id == result.annotations[i].rater_id);
    }
  }
  SUBCASE("a different seed eventually differs") {
    bool any_difference = false;
    for (std::uint64_t seed = 18; seed < 28 && !any_difference; ++seed) {
      const SampleResult other = sample_raters(annotations, 5, seed);
      std::set<std::string> raters;
      for (const auto& a : other.annotations) {
        if (a.comment_id == "rich") raters.insert(a.rater_id);
      }
      any_difference = raters != rich_raters;
    }
    CHECK(any_difference);
  }
  SUBCASE("output is a subset of the input, order preserved") {
    std::size_t cursor = 0;
    for (const auto& kept : result.annotations) {
      bool found = false;
      while (cursor < annotations.size()) {
        if (annotations[cursor].comment_id == kept.comment_id &&
            annotations[cursor].rater_id == kept.rater_id) {
          found = true;
          ++cursor;
          break;
        }
        ++cursor;
      }
      CHECK(found);
    }
  }
}

TEST_CASE("sampling is independent of row order") {
  std::vector<UnifiedAnnotation> annotations;
  for (int r = 0; r < 8; ++r) {
    UnifiedAnnotation a;
    a.dataset = "d";
    a.comment_id = "c";
    a.rater_id = "w" + std::to_string(r);
    annotations.push_back(a);
  }
  auto reversed = annotations;
  std::reverse(reversed.begin(), reversed.end());

  const auto keep = [](const SampleResult& s) {
    std::set<std::string> raters;
    for (const auto& a : s.annotations) raters.insert(a.rater_id);
    return raters;
  };
  CHECK(keep(sample_raters(annotations, 3, 5)) ==
        keep(sample_raters(reversed, 3, 5)));
}

TEST_CASE("k below 1 is invalid") {
  const std::vector<UnifiedAnnotation> annotations = notes("d", {"c1"});
  CHECK_THROWS_AS(sample_raters(annotations, 0, 1), ConfigError);
}
