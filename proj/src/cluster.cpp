// Copyright 2026 RaterLens Authors
// SPDX-License-Identifier: Apache-2.0
#include "raterlens/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <tuple>
#include <unordered_map>

#include "raterlens/common.hpp"

namespace raterlens {
namespace {

// Floor for merge distances when converting to lambda = 1/distance, so that
// duplicate points don't produce infinities in the stability sums.
constexpr double kMinMergeDistance = 1e-12;

std::int64_t effective_min_samples(const ClusterParams& params) {
  return params.min_samples > 0 ? params.min_samples : params.min_cluster_size;
}

void validate(const ClusterParams& params) {
  if (params.min_cluster_size < 2) {
    throw ConfigError("invalid-params", "min_cluster_size must be >= 2, got " +
                                            std::to_string(params.min_cluster_size));
  }
  if (effective_min_samples(params) < 2) {
    throw ConfigError("invalid-params", "min_samples must be >= 2, got " +
                                            std::to_string(params.min_samples));
  }
}

// Pairwise distances plus the distance to the k-th nearest other point.
std::pair<Eigen::MatrixXd, std::vector<double>> geometry(
    const Eigen::MatrixXd& points, std::int32_t k) {
  const auto n = static_cast<std::int32_t>(points.rows());
  Eigen::MatrixXd dist(n, n);
  std::vector<double> core(static_cast<std::size_t>(n), 0.0);
#pragma omp parallel for schedule(static)
  for (std::int32_t i = 0; i < n; ++i) {
    for (std::int32_t j = 0; j < n; ++j) {
      dist(i, j) = (points.row(i) - points.row(j)).norm();
    }
    std::vector<double> row(static_cast<std::size_t>(n) - 1);
    std::size_t out = 0;
    for (std::int32_t j = 0; j < n; ++j) {
      if (j != i) row[out++] = dist(i, j);
    }
    std::nth_element(row.begin(), row.begin() + (k - 1), row.end());
    core[static_cast<std::size_t>(i)] = row[static_cast<std::size_t>(k - 1)];
  }
  return {std::move(dist), std::move(core)};
}

// Prim over the implicit complete mutual-reachability graph. Ties on the
// frontier go to the smaller vertex index.
std::vector<MstEdge> prim_mst(const Eigen::MatrixXd& dist,
                              const std::vector<double>& core) {
  const auto n = static_cast<std::int32_t>(dist.rows());
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> best(n, kInf);
  std::vector<std::int32_t> parent(n, -1);
  std::vector<char> done(n, 0);
  best[0] = 0.0;

  std::vector<MstEdge> edges;
  edges.reserve(static_cast<std::size_t>(n) - 1);
  for (std::int32_t round = 0; round < n; ++round) {
    std::int32_t v = -1;
    for (std::int32_t i = 0; i < n; ++i) {
      if (!done[i] && (v < 0 || best[i] < best[v])) v = i;
    }
    done[v] = 1;
    if (parent[v] >= 0) {
      edges.push_back({std::min(v, parent[v]), std::max(v, parent[v]), best[v]});
    }
    for (std::int32_t u = 0; u < n; ++u) {
      if (done[u]) continue;
      const double w = std::max({core[v], core[u], dist(v, u)});
      if (w < best[u]) {
        best[u] = w;
        parent[u] = v;
      }
    }
  }
  return edges;
}

struct DendroNode {
  std::int32_t left = 0;
  std::int32_t right = 0;
  double distance = 0.0;
  std::int64_t size = 0;
};

class UnionFind {
 public:
  explicit UnionFind(std::int32_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::int32_t find(std::int32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  std::int32_t unite(std::int32_t a, std::int32_t b) {
    parent_[b] = a;
    return a;
  }

 private:
  std::vector<std::int32_t> parent_;
};

// Agglomerate MST edges in weight order into a binary merge tree. Node ids:
// [0, n) are points, n + t is the t-th merge.
std::vector<DendroNode> single_linkage(std::vector<MstEdge> edges,
                                       std::int32_t n) {
  std::sort(edges.begin(), edges.end(), [](const MstEdge& x, const MstEdge& y) {
    return std::tie(x.weight, x.a, x.b) < std::tie(y.weight, y.a, y.b);
  });
  UnionFind uf(n);
  std::vector<std::int32_t> component_node(n);
  std::iota(component_node.begin(), component_node.end(), 0);
  std::vector<DendroNode> merges;
  merges.reserve(edges.size());
  const auto node_size = [&](std::int32_t id) -> std::int64_t {
    return id < n ? 1 : merges[static_cast<std::size_t>(id - n)].size;
  };
  for (const MstEdge& e : edges) {
    const std::int32_t ra = uf.find(e.a);
    const std::int32_t rb = uf.find(e.b);
    const std::int32_t na = component_node[ra];
    const std::int32_t nb = component_node[rb];
    const auto id = static_cast<std::int32_t>(n + merges.size());
    merges.push_back({na, nb, e.weight, node_size(na) + node_size(nb)});
    component_node[uf.unite(ra, rb)] = id;
  }
  return merges;
}

struct CondensedTree {
  // Per condensed cluster, index 0 is the root.
  std::vector<std::int32_t> parent;      // -1 for the root
  std::vector<double> birth_lambda;
  std::vector<std::int64_t> birth_size;
  std::vector<std::vector<std::int32_t>> children;
  // Per point: the cluster it fell out of, and at which lambda.
  std::vector<std::int32_t> point_cluster;
  std::vector<double> point_lambda;
};

// Walks the merge tree top-down. Splits where both sides reach
// min_cluster_size spawn child clusters; smaller sides fall out as points at
// the split lambda.
CondensedTree condense(const std::vector<DendroNode>& merges, std::int32_t n,
                       std::int64_t min_cluster_size) {
  CondensedTree tree;
  tree.parent.push_back(-1);
  tree.birth_lambda.push_back(0.0);
  tree.birth_size.push_back(n);
  tree.children.emplace_back();
  tree.point_cluster.assign(n, 0);
  tree.point_lambda.assign(n, 0.0);

  const auto node_size = [&](std::int32_t id) -> std::int64_t {
    return id < n ? 1 : merges[static_cast<std::size_t>(id - n)].size;
  };
  const auto leaves_under = [&](std::int32_t id, auto&& visit) {
    std::vector<std::int32_t> stack{id};
    while (!stack.empty()) {
      const std::int32_t cur = stack.back();
      stack.pop_back();
      if (cur < n) {
        visit(cur);
      } else {
        const DendroNode& m = merges[static_cast<std::size_t>(cur - n)];
        stack.push_back(m.left);
        stack.push_back(m.right);
      }
    }
  };

  struct Frame {
    std::int32_t node = 0;     // merge-tree node id (always >= n here)
    std::int32_t cluster = 0;  // condensed cluster the node belongs to
  };
  std::vector<Frame> stack;
  if (!merges.empty()) {
    stack.push_back({static_cast<std::int32_t>(n + merges.size() - 1), 0});
  }
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    const DendroNode& m = merges[static_cast<std::size_t>(f.node - n)];
    const double lambda = 1.0 / std::max(m.distance, kMinMergeDistance);
    const std::int64_t left_size = node_size(m.left);
    const std::int64_t right_size = node_size(m.right);
    const bool left_big = left_size >= min_cluster_size;
    const bool right_big = right_size >= min_cluster_size;

    const auto drop_points = [&](std::int32_t side) {
      leaves_under(side, [&](std::int32_t p) {
        tree.point_cluster[p] = f.cluster;
        tree.point_lambda[p] = lambda;
      });
    };
    const auto spawn = [&](std::int32_t side, std::int64_t size) {
      const auto id = static_cast<std::int32_t>(tree.parent.size());
      tree.parent.push_back(f.cluster);
      tree.birth_lambda.push_back(lambda);
      tree.birth_size.push_back(size);
      tree.children.emplace_back();
      tree.children[static_cast<std::size_t>(f.cluster)].push_back(id);
      if (side >= n) stack.push_back({side, id});
      return id;
    };

    if (left_big && right_big) {
      spawn(m.left, left_size);
      spawn(m.right, right_size);
    } else if (left_big) {
      drop_points(m.right);
      stack.push_back({m.left, f.cluster});
    } else if (right_big) {
      drop_points(m.left);
      stack.push_back({m.right, f.cluster});
    } else {
      drop_points(m.left);
      drop_points(m.right);
    }
  }
  return tree;
}

}  // namespace

ClusterSpace parse_cluster_space(std::string_view name) {
  if (name == "embedding") return ClusterSpace::Embedding;
  if (name == "projection") return ClusterSpace::Projection;
  throw ConfigError("invalid-params",
                    "unknown cluster space '" + std::string(name) + "'");
}

std::string to_string(ClusterSpace space) {
  return space == ClusterSpace::Embedding ? "embedding" : "projection";
}

ClusterResult fit_density_clusters(const Eigen::MatrixXd& points,
                                   const ClusterParams& params) {
  validate(params);
  const auto n = static_cast<std::int32_t>(points.rows());
  ClusterResult result;
  if (n < params.min_cluster_size) {
    result.labels.assign(static_cast<std::size_t>(n), -1);
    result.all_noise = true;
    return result;
  }
  // The k-th nearest *other* point needs k <= n - 1.
  const auto k = static_cast<std::int32_t>(
      std::min<std::int64_t>(effective_min_samples(params), n - 1));
  const auto [dist, core] = geometry(points, k);
  const auto edges = prim_mst(dist, core);
  const auto merges = single_linkage(edges, n);
  const auto tree = condense(merges, n, params.min_cluster_size);
  const auto n_cond = static_cast<std::int32_t>(tree.parent.size());

  // Stability: points contribute until they fall out; a true split hands the
  // remaining mass to the children at their birth lambda.
  std::vector<double> stability(static_cast<std::size_t>(n_cond), 0.0);
  for (std::int32_t p = 0; p < n; ++p) {
    const std::int32_t c = tree.point_cluster[static_cast<std::size_t>(p)];
    stability[static_cast<std::size_t>(c)] +=
        tree.point_lambda[static_cast<std::size_t>(p)] -
        tree.birth_lambda[static_cast<std::size_t>(c)];
  }
  for (std::int32_t c = 1; c < n_cond; ++c) {
    const std::int32_t par = tree.parent[static_cast<std::size_t>(c)];
    stability[static_cast<std::size_t>(par)] +=
        static_cast<double>(tree.birth_size[static_cast<std::size_t>(c)]) *
        (tree.birth_lambda[static_cast<std::size_t>(c)] -
         tree.birth_lambda[static_cast<std::size_t>(par)]);
  }

  // Excess-of-mass selection, bottom-up (children always have larger ids).
  // The root is eligible, so a split-free hierarchy yields one cluster.
  std::vector<double> score(static_cast<std::size_t>(n_cond), 0.0);
  std::vector<char> chosen(static_cast<std::size_t>(n_cond), 0);
  for (std::int32_t c = n_cond - 1; c >= 0; --c) {
    const auto& kids = tree.children[static_cast<std::size_t>(c)];
    if (kids.empty()) {
      score[static_cast<std::size_t>(c)] = stability[static_cast<std::size_t>(c)];
      chosen[static_cast<std::size_t>(c)] = 1;
      continue;
    }
    double child_sum = 0.0;
    for (const std::int32_t kid : kids) {
      child_sum += score[static_cast<std::size_t>(kid)];
    }
    if (stability[static_cast<std::size_t>(c)] >= child_sum) {
      score[static_cast<std::size_t>(c)] = stability[static_cast<std::size_t>(c)];
      chosen[static_cast<std::size_t>(c)] = 1;
    } else {
      score[static_cast<std::size_t>(c)] = child_sum;
    }
  }
  // Keep only the topmost chosen cluster on each root-to-leaf path.
  std::vector<char> selected(static_cast<std::size_t>(n_cond), 0);
  {
    std::vector<std::int32_t> walk{0};
    while (!walk.empty()) {
      const std::int32_t c = walk.back();
      walk.pop_back();
      if (chosen[static_cast<std::size_t>(c)]) {
        selected[static_cast<std::size_t>(c)] = 1;
        continue;
      }
      for (const std::int32_t kid : tree.children[static_cast<std::size_t>(c)]) {
        walk.push_back(kid);
      }
    }
  }

  // Point label = nearest selected ancestor of its fall-out cluster.
  std::vector<std::int32_t> owner(static_cast<std::size_t>(n), -1);
  for (std::int32_t p = 0; p < n; ++p) {
    std::int32_t c = tree.point_cluster[static_cast<std::size_t>(p)];
    while (c >= 0 && !selected[static_cast<std::size_t>(c)]) {
      c = tree.parent[static_cast<std::size_t>(c)];
    }
    owner[static_cast<std::size_t>(p)] = c;
  }
  // Public ids in order of first member index.
  std::unordered_map<std::int32_t, std::int32_t> id_of;
  result.labels.assign(static_cast<std::size_t>(n), -1);
  for (std::int32_t p = 0; p < n; ++p) {
    const std::int32_t c = owner[static_cast<std::size_t>(p)];
    if (c < 0) continue;
    auto [it, inserted] = id_of.emplace(c, static_cast<std::int32_t>(id_of.size()));
    if (inserted) {
      result.stabilities.push_back(stability[static_cast<std::size_t>(c)]);
    }
    result.labels[static_cast<std::size_t>(p)] = it->second;
  }
  return result;
}

ProxyLabels derive_binary_labels(const ClusterResult& clusters,
                                 std::span<const std::int64_t> item_ids,
                                 std::span<const AnnotationRecord> records) {
  if (clusters.labels.size() != item_ids.size()) {
    throw ConfigError("input-mismatch",
                      "cluster result covers " +
                          std::to_string(clusters.labels.size()) +
                          " points but " + std::to_string(item_ids.size()) +
                          " item ids were given");
  }
  struct Tally {
    double sum = 0.0;
    std::int64_t count = 0;
  };
  std::unordered_map<std::int64_t, Tally> per_item;
  per_item.reserve(item_ids.size());
  for (const AnnotationRecord& r : records) {
    Tally& t = per_item[r.item_id];
    t.sum += r.value;
    t.count += 1;
  }

  const std::size_t n = item_ids.size();
  const auto n_clusters = static_cast<std::size_t>(clusters.n_clusters());
  std::vector<Tally> pooled(n_clusters);
  for (std::size_t i = 0; i < n; ++i) {
    const auto it = per_item.find(item_ids[i]);
    if (it == per_item.end() || it->second.count == 0) {
      throw DomainError("item-without-records",
                        "item " + std::to_string(item_ids[i]) +
                            " has no annotation records");
    }
    const std::int32_t label = clusters.labels[i];
    if (label >= 0) {
      pooled[static_cast<std::size_t>(label)].sum += it->second.sum;
      pooled[static_cast<std::size_t>(label)].count += it->second.count;
    }
  }

  ProxyLabels out;
  out.labels.resize(n);
  out.scores.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::int32_t label = clusters.labels[i];
    if (label >= 0) {
      const Tally& t = pooled[static_cast<std::size_t>(label)];
      const double mean = t.sum / static_cast<double>(t.count);
      out.labels[i] = mean >= 0.5 ? 1 : 0;
      out.scores[i] = mean;
    } else {
      const Tally& t = per_item.at(item_ids[i]);
      const double mean = t.sum / static_cast<double>(t.count);
      out.labels[i] = mean > 0.5 ? 1 : 0;
      out.scores[i] = mean;
    }
  }
  return out;
}

std::vector<MstEdge> mutual_reachability_mst(const Eigen::MatrixXd& points,
                                             std::int64_t min_samples) {
  const auto n = static_cast<std::int32_t>(points.rows());
  if (n < 2) return {};
  if (min_samples < 1) {
    throw ConfigError("invalid-params", "min_samples must be >= 1, got " +
                                            std::to_string(min_samples));
  }
  const auto k =
      static_cast<std::int32_t>(std::min<std::int64_t>(min_samples, n - 1));
  const auto [dist, core] = geometry(points, k);
  return prim_mst(dist, core);
}

}  // namespace raterlens
