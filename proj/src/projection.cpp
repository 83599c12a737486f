// Copyright 2026 RaterLens Authors
// SPDX-License-Identifier: Apache-2.0
#include "raterlens/projection.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "raterlens/common.hpp"
#include "raterlens/rng.hpp"

namespace raterlens {

PreprocessMode parse_preprocess_mode(const std::string& name) {
  if (name == "none") return PreprocessMode::None;
  if (name == "standardize") return PreprocessMode::Standardize;
  if (name == "whiten") return PreprocessMode::Whiten;
  throw ConfigError("invalid-config", "unknown preprocess mode: " + name);
}

EmbeddingSet preprocess(const EmbeddingSet& embeddings, PreprocessMode mode) {
  if (mode == PreprocessMode::None) return embeddings;
  const Eigen::Index n = embeddings.values.rows();
  if (n < 2)
    throw ConfigError("invalid-config",
                      "standardize/whiten need at least 2 rows");

  EmbeddingSet out = embeddings;
  Eigen::MatrixXd& x = out.values;
  const Eigen::RowVectorXd mean = x.colwise().mean();
  x.rowwise() -= mean;

  if (mode == PreprocessMode::Standardize) {
    const double denom = static_cast<double>(n - 1);
    for (Eigen::Index c = 0; c < x.cols(); ++c) {
      const double var = x.col(c).squaredNorm() / denom;
      if (var > 1e-30) x.col(c) /= std::sqrt(var);
      // zero-variance columns are already all 0 after centering
    }
    return out;
  }

  // Whiten: X <- X * C^{-1/2} with C the sample covariance.
  const Eigen::MatrixXd cov =
      (x.transpose() * x) / static_cast<double>(n - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  const Eigen::VectorXd scale =
      eig.eigenvalues().cwiseMax(1e-10).cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd inv_sqrt = eig.eigenvectors() * scale.asDiagonal() *
                                   eig.eigenvectors().transpose();
  x = x * inv_sqrt;
  return out;
}

namespace {

// Per-axis cap on any single attraction/repulsion contribution.
constexpr double kClip = 4.0;

// Top-k principal directions with a fixed sign convention.
Eigen::MatrixXd principal_components(const Eigen::MatrixXd& centered, int k) {
  const Eigen::MatrixXd cov = (centered.transpose() * centered) /
                              std::max<double>(1.0, double(centered.rows() - 1));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  const Eigen::Index d = cov.rows();
  Eigen::MatrixXd comps(d, k);
  for (int c = 0; c < k; ++c) {
    Eigen::VectorXd v = eig.eigenvectors().col(d - 1 - c);  // descending
    Eigen::Index at = 0;
    v.cwiseAbs().maxCoeff(&at);
    if (v(at) < 0.0) v = -v;
    comps.col(c) = v;
  }
  return comps;
}

Eigen::MatrixX2d pca_2d(const Eigen::MatrixXd& values) {
  Eigen::MatrixXd centered = values;
  centered.rowwise() -= values.colwise().mean().eval();
  return centered * principal_components(centered, 2);
}

struct Edge {
  std::int32_t a;
  std::int32_t b;
  double weight;
};

// Directed kNN -> fuzzy union, UMAP style: per-point scale from the local
// neighbor distances, then w = max of the two directed memberships'
// probabilistic sum.
std::vector<Edge> knn_edges(const Eigen::MatrixXd& x, int k) {
  const Eigen::Index n = x.rows();
  std::vector<std::vector<std::pair<double, std::int32_t>>> nn(
      static_cast<std::size_t>(n));

#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < n; ++i) {
    std::vector<std::pair<double, std::int32_t>> dists;
    dists.reserve(static_cast<std::size_t>(n - 1));
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      dists.emplace_back((x.row(i) - x.row(j)).norm(),
                         static_cast<std::int32_t>(j));
    }
    std::partial_sort(dists.begin(), dists.begin() + k, dists.end());
    dists.resize(static_cast<std::size_t>(k));
    nn[static_cast<std::size_t>(i)] = std::move(dists);
  }

  // Directed membership strengths.
  std::vector<std::vector<double>> strength(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    auto& neigh = nn[static_cast<std::size_t>(i)];
    const double rho = neigh.front().first;
    double sigma = 0.0;
    for (const auto& [d, j] : neigh) sigma += std::max(0.0, d - rho);
    sigma = std::max(sigma / static_cast<double>(k), 1e-12);
    auto& s = strength[static_cast<std::size_t>(i)];
    s.reserve(neigh.size());
    for (const auto& [d, j] : neigh)
      s.push_back(std::exp(-std::max(0.0, d - rho) / sigma));
  }

  // Symmetrize: w = s_ij + s_ji - s_ij * s_ji over the union of directions.
  std::vector<std::vector<std::pair<std::int32_t, double>>> directed(
      static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& neigh = nn[static_cast<std::size_t>(i)];
    for (std::size_t t = 0; t < neigh.size(); ++t)
      directed[static_cast<std::size_t>(i)].emplace_back(
          neigh[t].second, strength[static_cast<std::size_t>(i)][t]);
  }
  std::vector<Edge> edges;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (const auto& [j, sij] : directed[static_cast<std::size_t>(i)]) {
      if (j < i) continue;  // visit each unordered pair once, from min index
      double sji = 0.0;
      for (const auto& [back, s] : directed[static_cast<std::size_t>(j)])
        if (back == static_cast<std::int32_t>(i)) {
          sji = s;
          break;
        }
      edges.push_back({static_cast<std::int32_t>(i), j,
                       sij + sji - sij * sji});
    }
    // pairs only stored from the lower index; grab (j < i) edges where i
    // is not in j's list
    for (const auto& [j, sji] : directed[static_cast<std::size_t>(i)]) {
      if (j >= i) continue;
      bool seen = false;
      for (const auto& [fwd, s] : directed[static_cast<std::size_t>(j)])
        if (fwd == static_cast<std::int32_t>(i)) {
          seen = true;
          break;
        }
      if (!seen) edges.push_back({j, static_cast<std::int32_t>(i), sji});
    }
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.a != b.a ? a.a < b.a : a.b < b.b;
  });
  return edges;
}

Eigen::MatrixX2d neighbor_layout(const Eigen::MatrixXd& values,
                                 const ProjectionParams& params) {
  const Eigen::Index n = values.rows();
  const auto edges = knn_edges(values, params.n_neighbors);

  // PCA start, rescaled to a 10-unit radius.
  Eigen::MatrixX2d pos = pca_2d(values);
  const double radius = pos.cwiseAbs().maxCoeff();
  if (radius > 0.0) pos *= 10.0 / radius;

  constexpr int kNegativeSamples = 5;
  constexpr double kRepulsionGamma = 1.0;
  const std::uint64_t layout_seed = rng::stage_seed(params.seed, "layout");
  Eigen::MatrixX2d disp(n, 2);

  const auto clip = [](const Eigen::RowVector2d& v) -> Eigen::RowVector2d {
    return v.cwiseMax(-kClip).cwiseMin(kClip);
  };

  for (int epoch = 0; epoch < params.epochs; ++epoch) {
    const double alpha =
        1.0 - static_cast<double>(epoch) / static_cast<double>(params.epochs);
    disp.setZero();

    for (std::size_t e = 0; e < edges.size(); ++e) {
      const Edge& edge = edges[e];
      const Eigen::RowVector2d delta = pos.row(edge.a) - pos.row(edge.b);
      const double d2 = delta.squaredNorm();
      // Cauchy kernel attraction: gradient coefficient 2 / (1 + d^2).
      const Eigen::RowVector2d pull =
          clip((edge.weight * 2.0 / (1.0 + d2)) * delta);
      disp.row(edge.a) -= pull;
      disp.row(edge.b) += pull;

      // Repulsion of each endpoint against sampled points. Counter-based
      // draws keyed by (epoch, edge, sample) are traversal-order free.
      for (int endpoint = 0; endpoint < 2; ++endpoint) {
        const std::int32_t head = endpoint == 0 ? edge.a : edge.b;
        for (int s = 0; s < kNegativeSamples; ++s) {
          const std::uint64_t key = rng::absorb(
              rng::key3(layout_seed, static_cast<std::uint64_t>(epoch),
                        static_cast<std::uint64_t>(e)),
              static_cast<std::uint64_t>(2 * s + endpoint));
          const auto j = static_cast<Eigen::Index>(
              rng::mix64(key) % static_cast<std::uint64_t>(n));
          if (j == head) continue;
          const Eigen::RowVector2d dr = pos.row(head) - pos.row(j);
          const double r2 = dr.squaredNorm();
          const double coeff =
              2.0 * kRepulsionGamma / ((0.001 + r2) * (1.0 + r2));
          disp.row(head) += clip(coeff * dr);
        }
      }
    }
    pos += alpha * disp;
  }
  return pos;
}

}  // namespace

Eigen::MatrixX2d project_2d(const EmbeddingSet& embeddings,
                            const ProjectionParams& params) {
  const Eigen::Index n = embeddings.values.rows();
  if (embeddings.values.cols() < 2)
    throw ConfigError("invalid-params", "projection needs dimension >= 2");
  if (params.method == ProjectionMethod::Pca) return pca_2d(embeddings.values);
  if (params.n_neighbors < 2 || n <= params.n_neighbors)
    throw ConfigError("invalid-params",
                      "neighbor projection needs 2 <= n_neighbors < n");
  return neighbor_layout(embeddings.values, params);
}

}  // namespace raterlens
