// Copyright 2026 RaterLens Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace raterlens {

enum class RowKind { Item, Annotator };

// Tagged embedding rows; items and annotators share one space.
struct EmbeddingSet {
  std::vector<RowKind> kinds;
  std::vector<std::int64_t> ids;
  Eigen::MatrixXd values;  // n x d
};

enum class PreprocessMode { None, Standardize, Whiten };

PreprocessMode parse_preprocess_mode(const std::string& name);

// none: identity. standardize: zero mean, unit variance per column (zero
// variance columns stay 0). whiten: identity output covariance via the
// symmetric inverse square root of the sample covariance, eigenvalue floor
// 1e-10.
EmbeddingSet preprocess(const EmbeddingSet& embeddings, PreprocessMode mode);

enum class ProjectionMethod { Pca, Neighbor };

struct ProjectionParams {
  ProjectionMethod method = ProjectionMethod::Neighbor;
  int n_neighbors = 15;
  int epochs = 200;
  std::uint64_t seed = 0;
};

// pca: top-2 principal components (sign fixed so the largest-magnitude
// loading is positive). neighbor: k-nearest-neighbor graph with
// distance-decayed edge weights, laid out by synchronous attraction along
// edges and repulsion against sampled non-edges from a PCA start.
// Deterministic for fixed seed and params.
Eigen::MatrixX2d project_2d(const EmbeddingSet& embeddings,
                            const ProjectionParams& params);

}  // namespace raterlens
