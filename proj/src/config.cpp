// Copyright 2026 RaterLens Authors
// SPDX-License-Identifier: Apache-2.0
#include "raterlens/config.hpp"

#include <algorithm>

#include "raterlens/common.hpp"

namespace raterlens {
namespace {

// Accepts either `key = [..]` or the scalar `alt` spelling.
std::vector<std::int64_t> int_list(const toml::Table& t,
                                   std::string_view section,
                                   std::string_view array_key,
                                   std::string_view scalar_key,
                                   std::vector<std::int64_t> fallback) {
  if (const toml::Value* v = t.find(section, array_key)) {
    if (v->type == toml::Value::Type::Array) {
      return t.get_int_array(section, array_key);
    }
    return {v->as_int()};
  }
  if (t.has(section, scalar_key)) {
    return {t.get_int(section, scalar_key, 0)};
  }
  return fallback;
}

std::vector<double> double_list(const toml::Table& t, std::string_view section,
                                std::string_view array_key,
                                std::string_view scalar_key,
                                std::vector<double> fallback) {
  if (const toml::Value* v = t.find(section, array_key)) {
    if (v->type == toml::Value::Type::Array) {
      return t.get_double_array(section, array_key);
    }
    return {v->as_double()};
  }
  if (t.has(section, scalar_key)) {
    return {t.get_double(section, scalar_key, 0.0)};
  }
  return fallback;
}

template <std::size_t N>
void fill_ratio(const toml::Table& t, std::string_view key,
                std::array<double, N>& out) {
  const auto values = t.get_double_array("sim", key);
  if (values.empty()) return;
  if (values.size() != N) {
    throw ConfigError("invalid-config",
                      "[sim] " + std::string(key) + " needs exactly " +
                          std::to_string(N) + " entries, got " +
                          std::to_string(values.size()));
  }
  std::copy(values.begin(), values.end(), out.begin());
}

char parse_delimiter(const std::string& text, const std::string& section) {
  if (text.size() != 1) {
    throw ConfigError("invalid-config", "[" + section +
                                            "] delimiter must be a single "
                                            "character");
  }
  return text[0];
}

}  // namespace

RunConfig config_from_table(const toml::Table& t) {
  RunConfig c;

  c.seed = static_cast<std::uint64_t>(t.get_int("", "seed", 0));
  c.out_dir = t.get_string("", "out", "");

  c.sim.n_annotators = t.get_int("sim", "n_annotators", c.sim.n_annotators);
  c.sim.n_items = t.get_int("sim", "n_items", c.sim.n_items);
  c.sim.replication = t.get_int("sim", "replication", c.sim.replication);
  fill_ratio(t, "annotator_ratio", c.sim.annotator_ratio);
  fill_ratio(t, "item_ratio", c.sim.item_ratio);
  fill_ratio(t, "truth_ratio", c.sim.truth_ratio);

  {
    const auto dims = int_list(t, "wals", "dims", "dim", {3});
    c.wals_dims.assign(dims.begin(), dims.end());
    c.wals_regs = double_list(t, "wals", "regs", "reg", {0.1});
    const auto iters = int_list(t, "wals", "iterations", "iterations", {5});
    c.wals_iterations.assign(iters.begin(), iters.end());
    c.wals_dev_fraction =
        t.get_double("wals", "dev_fraction", c.wals_dev_fraction);
    c.wals_unobserved_weight =
        t.get_double("wals", "unobserved_weight", c.wals_unobserved_weight);
    if (c.wals_dims.empty() || c.wals_regs.empty() ||
        c.wals_iterations.empty()) {
      throw ConfigError("invalid-config", "[wals] grids must be non-empty");
    }
  }

  c.preprocess = parse_preprocess_mode(
      t.get_string("projection", "preprocess", "whiten"));
  {
    const std::string method =
        t.get_string("projection", "method", "neighbor");
    if (method == "pca") {
      c.projection.method = ProjectionMethod::Pca;
    } else if (method == "neighbor") {
      c.projection.method = ProjectionMethod::Neighbor;
    } else {
      throw ConfigError("invalid-config",
                        "[projection] method must be pca or neighbor, got '" +
                            method + "'");
    }
    c.projection.n_neighbors = static_cast<int>(
        t.get_int("projection", "n_neighbors", c.projection.n_neighbors));
    c.projection.epochs =
        static_cast<int>(t.get_int("projection", "epochs", c.projection.epochs));
  }

  c.cluster.min_cluster_size =
      t.get_int("cluster", "min_cluster_size", c.cluster.min_cluster_size);
  c.cluster.min_samples =
      t.get_int("cluster", "min_samples", c.cluster.min_samples);
  c.cluster.space = parse_cluster_space(
      t.get_string("cluster", "space", to_string(c.cluster.space)));

  {
    SweepConfig& s = c.sweep;
    if (t.has("sweep", "replications")) {
      s.replication_sizes = t.get_int_array("sweep", "replications");
    }
    if (t.has("sweep", "proxies")) {
      s.proxies.clear();
      for (const std::string& name : t.get_string_array("sweep", "proxies")) {
        s.proxies.push_back(parse_proxy(name));
      }
    }
    if (t.has("sweep", "seeds")) {
      s.seeds.clear();
      for (const std::int64_t v : t.get_int_array("sweep", "seeds")) {
        s.seeds.push_back(static_cast<std::uint64_t>(v));
      }
    }
    // The sweep's factorization has its own keys (and low-replication
    // defaults) rather than inheriting the first cell of the fit grid.
    s.wals.dim =
        static_cast<int>(t.get_int("sweep", "wals_dim", s.wals.dim));
    s.wals.reg = t.get_double("sweep", "wals_reg", s.wals.reg);
    s.wals.iterations = static_cast<int>(
        t.get_int("sweep", "wals_iterations", s.wals.iterations));
    s.wals.unobserved_weight = t.get_double("sweep", "wals_unobserved_weight",
                                            s.wals.unobserved_weight);
    s.preprocess = c.preprocess;
    s.projection = c.projection;
    s.cluster = c.cluster;
  }

  c.ingest_common_only = t.get_bool("ingest", "common_only", false);
  for (const std::string& section : t.sections_with_prefix("ingest.")) {
    IngestEntry e;
    e.schema.tag = section.substr(std::string_view("ingest.").size());
    e.path = t.get_string(section, "path", "");
    if (e.path.empty()) {
      throw ConfigError("invalid-config",
                        "[" + section + "] needs a path key");
    }
    e.schema.comment_column = t.get_string(section, "comment_column", "");
    e.schema.rater_column = t.get_string(section, "rater_column", "");
    e.schema.value_column = t.get_string(section, "value_column", "");
    e.schema.group_column = t.get_string(section, "group_column", "");
    const auto require = [&](const std::string& value, const char* name) {
      if (value.empty()) {
        throw ConfigError("invalid-config",
                          "[" + section + "] needs a " + name + " key");
      }
    };
    require(e.schema.comment_column, "comment_column");
    require(e.schema.rater_column, "rater_column");
    require(e.schema.value_column, "value_column");
    e.schema.scale = parse_scale(t.get_string(section, "scale", "binary01"));
    e.schema.delimiter =
        parse_delimiter(t.get_string(section, "delimiter", ","), section);
    e.sample_k = t.get_int(section, "sample_raters", 0);
    c.ingests.push_back(std::move(e));
  }

  c.agreement.ratings = t.get_string("agreement", "ratings", "");
  c.agreement.ratings_x = t.get_string("agreement", "ratings_x", "");
  c.agreement.ratings_y = t.get_string("agreement", "ratings_y", "");
  c.agreement.soft = t.get_string("agreement", "soft", "");
  c.agreement.fewshot = t.get_string("agreement", "fewshot", "");

  return c;
}

RunConfig load_run_config(const std::string& path) {
  if (path.empty()) return RunConfig{};
  return config_from_table(toml::parse_file(path));
}

}  // namespace raterlens
