// Copyright 2026 RaterLens Authors
// SPDX-License-Identifier: Apache-2.0
#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "raterlens/rng.hpp"

namespace raterlens::testing {

std::optional<double> alpha_oracle(const RatingTable& table) {
  // n = total ratings in pairable units; disagreement observed per unit is
  // averaged over that unit's unordered pairs, weighted by m_u.
  double n = 0.0;
  std::map<int, double> margin;
  double d_o_num = 0.0;
  for (const auto& [unit, ratings] : table.units) {
    const std::size_t m = ratings.size();
    if (m < 2) continue;
    n += static_cast<double>(m);
    for (const auto& r : ratings) margin[r.category] += 1.0;
    double disagree = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        if (i != j && ratings[i].category != ratings[j].category) {
          disagree += 1.0;
        }
      }
    }
    d_o_num += disagree / static_cast<double>(m - 1);
  }
  if (n < 2.0) return std::nullopt;
  const double d_o = d_o_num / n;
  double same = 0.0;
  for (const auto& [cat, count] : margin) same += count * count;
  const double d_e = (n * n - same) / (n * (n - 1.0));
  if (d_e == 0.0) return std::nullopt;
  return 1.0 - d_o / d_e;
}

double mst_weight_oracle(const Eigen::MatrixXd& points,
                         std::int64_t min_samples) {
  const auto n = static_cast<int>(points.rows());
  if (n < 2) return 0.0;
  const int k = static_cast<int>(std::min<std::int64_t>(min_samples, n - 1));

  std::vector<double> core(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::vector<double> d;
    for (int j = 0; j < n; ++j) {
      if (j != i) d.push_back((points.row(i) - points.row(j)).norm());
    }
    std::sort(d.begin(), d.end());
    core[static_cast<std::size_t>(i)] = d[static_cast<std::size_t>(k - 1)];
  }

  struct E {
    double w;
    int a, b;
  };
  std::vector<E> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double mr = std::max(
          {core[static_cast<std::size_t>(i)], core[static_cast<std::size_t>(j)],
           (points.row(i) - points.row(j)).norm()});
      edges.push_back({mr, i, j});
    }
  }
  std::sort(edges.begin(), edges.end(),
            [](const E& x, const E& y) { return x.w < y.w; });

  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      v = parent[static_cast<std::size_t>(v)];
    }
    return v;
  };
  double total = 0.0;
  int used = 0;
  for (const E& e : edges) {
    const int ra = find(e.a);
    const int rb = find(e.b);
    if (ra == rb) continue;
    parent[static_cast<std::size_t>(ra)] = rb;
    total += e.w;
    if (++used == n - 1) break;
  }
  return total;
}

std::optional<double> pair_auc_oracle(std::span<const double> scores,
                                      std::span<const std::uint8_t> truth) {
  double wins = 0.0;
  double pairs = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (truth[i] != 1) continue;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (truth[j] != 0) continue;
      pairs += 1.0;
      if (scores[i] > scores[j]) {
        wins += 1.0;
      } else if (scores[i] == scores[j]) {
        wins += 0.5;
      }
    }
  }
  if (pairs == 0.0) return std::nullopt;
  return wins / pairs;
}

double adjusted_rand_index(std::span<const std::int32_t> a,
                           std::span<const std::int32_t> b) {
  const auto choose2 = [](double m) { return m * (m - 1.0) / 2.0; };
  std::map<std::pair<std::int32_t, std::int32_t>, double> joint;
  std::map<std::int32_t, double> ma, mb;
  for (std::size_t i = 0; i < a.size(); ++i) {
    joint[{a[i], b[i]}] += 1.0;
    ma[a[i]] += 1.0;
    mb[b[i]] += 1.0;
  }
  double sum_joint = 0.0, sum_a = 0.0, sum_b = 0.0;
  for (const auto& [key, c] : joint) sum_joint += choose2(c);
  for (const auto& [key, c] : ma) sum_a += choose2(c);
  for (const auto& [key, c] : mb) sum_b += choose2(c);
  const double all = choose2(static_cast<double>(a.size()));
  const double expected = sum_a * sum_b / all;
  const double maximum = 0.5 * (sum_a + sum_b);
  if (maximum == expected) return 1.0;  // both labelings trivial
  return (sum_joint - expected) / (maximum - expected);
}

Blobs two_blobs(int n_per, int dim, double separation, std::uint64_t seed) {
  rng::SplitMix64 gen(seed);
  Blobs out;
  out.points.resize(2 * n_per, dim);
  out.labels.resize(static_cast<std::size_t>(2 * n_per));
  for (int i = 0; i < 2 * n_per; ++i) {
    const std::int32_t label = i % 2;
    out.labels[static_cast<std::size_t>(i)] = label;
    const double center = (label == 0 ? -0.5 : 0.5) * separation;
    for (int f = 0; f < dim; ++f) {
      out.points(i, f) = gen.normal() + (f == 0 ? center : 0.0);
    }
  }
  return out;
}

}  // namespace raterlens::testing
