// Copyright 2026 RaterLens Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "raterlens/simgen.hpp"

namespace raterlens {

enum class ClusterSpace { Embedding, Projection };

ClusterSpace parse_cluster_space(std::string_view name);
std::string to_string(ClusterSpace space);

struct ClusterParams {
  std::int64_t min_cluster_size = 15;
  // Non-positive means "use min_cluster_size".
  std::int64_t min_samples = -1;
  ClusterSpace space = ClusterSpace::Embedding;
};

struct ClusterResult {
  // One entry per point; -1 marks noise, otherwise an id in
  // [0, stabilities.size()). Ids are ordered by first member index.
  std::vector<std::int32_t> labels;
  std::vector<double> stabilities;
  // Set when there were fewer points than min_cluster_size and the whole
  // input was returned as noise.
  bool all_noise = false;

  std::int32_t n_clusters() const {
    return static_cast<std::int32_t>(stabilities.size());
  }
};

// HDBSCAN-style hierarchical density clustering: core distances at
// min_samples, mutual-reachability MST, single-linkage hierarchy condensed
// by min_cluster_size, excess-of-mass cluster selection. Fully deterministic
// for a fixed input ordering.
ClusterResult fit_density_clusters(const Eigen::MatrixXd& points,
                                   const ClusterParams& params);

struct MstEdge {
  std::int32_t a = 0;  // a < b
  std::int32_t b = 0;
  double weight = 0.0;
};

// The exact spanning tree the clustering consumes: Prim over the complete
// mutual-reachability graph at the given min_samples (clamped to n - 1),
// frontier ties to the smaller index. n - 1 edges for n >= 2, else empty.
std::vector<MstEdge> mutual_reachability_mst(const Eigen::MatrixXd& points,
                                             std::int64_t min_samples);

struct ProxyLabels {
  // Parallel to the item ids handed in.
  std::vector<std::uint8_t> labels;
  std::vector<double> scores;
};

// Binary proxy truth per item: members inherit their cluster's pooled mean
// annotation thresholded at 0.5 (>= 0.5 -> 1); noise items use their own
// mean with exact ties going to 0. Scores are those means.
ProxyLabels derive_binary_labels(const ClusterResult& clusters,
                                 std::span<const std::int64_t> item_ids,
                                 std::span<const AnnotationRecord> records);

}  // namespace raterlens
