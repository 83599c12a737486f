// Copyright 2026 RaterLens Authors
// SPDX-License-Identifier: Apache-2.0
#include "raterlens/evalsweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <tuple>

#include "raterlens/common.hpp"
#include "raterlens/rng.hpp"

namespace raterlens {
namespace {

void check_sizes(std::span<const double> scores,
                 std::span<const std::uint8_t> truth) {
  if (scores.size() != truth.size()) {
    throw DomainError("input-mismatch",
                      "scores and truth differ in length: " +
                          std::to_string(scores.size()) + " vs " +
                          std::to_string(truth.size()));
  }
}

void validate(const SimConfig& sim, const SweepConfig& sweep) {
  if (sweep.replication_sizes.empty()) {
    throw ConfigError("invalid-sweep", "replication_sizes must be non-empty");
  }
  for (std::size_t i = 0; i < sweep.replication_sizes.size(); ++i) {
    const std::int64_t r = sweep.replication_sizes[i];
    if (r < 1) {
      throw ConfigError("invalid-sweep", "replication size must be >= 1, got " +
                                             std::to_string(r));
    }
    if (r > sim.n_annotators) {
      throw ConfigError("invalid-sweep",
                        "replication size " + std::to_string(r) +
                            " exceeds the annotator count " +
                            std::to_string(sim.n_annotators));
    }
    if (i > 0 && r >= sweep.replication_sizes[i - 1]) {
      throw ConfigError("invalid-sweep",
                        "replication sizes must be strictly decreasing");
    }
  }
  if (sweep.proxies.empty()) {
    throw ConfigError("invalid-sweep", "at least one proxy is required");
  }
  for (std::size_t i = 0; i < sweep.proxies.size(); ++i) {
    for (std::size_t j = i + 1; j < sweep.proxies.size(); ++j) {
      if (sweep.proxies[i] == sweep.proxies[j]) {
        throw ConfigError("invalid-sweep", "duplicate proxy '" +
                                               to_string(sweep.proxies[i]) +
                                               "'");
      }
    }
  }
  if (sweep.seeds.empty()) {
    throw ConfigError("invalid-sweep", "at least one seed is required");
  }
}

// Item factors of a WALS fit on the sampled records, preprocessed and
// optionally flattened to 2d, then density-clustered; scores are the proxy
// means from derive_binary_labels.
std::vector<double> cluster_proxy_scores(
    const SimConfig& sim, const SweepConfig& sweep,
    std::span<const AnnotationRecord> sampled, std::uint64_t seed) {
  SparseRatingMatrix matrix;
  matrix.n_items = sim.n_items;
  matrix.n_annotators = sim.n_annotators;
  matrix.entries.reserve(sampled.size());
  for (const AnnotationRecord& r : sampled) {
    matrix.entries.push_back({static_cast<std::int32_t>(r.item_id),
                              static_cast<std::int32_t>(r.annotator_id),
                              static_cast<double>(r.value), 1.0});
  }
  const WalsFit fit =
      fit_wals(matrix, sweep.wals.dim, sweep.wals.reg, sweep.wals.iterations,
               sweep.wals.unobserved_weight, rng::stage_seed(seed, "sweep.wals"));

  EmbeddingSet set;
  set.kinds.assign(static_cast<std::size_t>(sim.n_items), RowKind::Item);
  set.ids.resize(static_cast<std::size_t>(sim.n_items));
  std::iota(set.ids.begin(), set.ids.end(), 0);
  set.values = fit.model.item_factors;
  set = preprocess(set, sweep.preprocess);

  Eigen::MatrixXd points;
  if (sweep.cluster.space == ClusterSpace::Projection) {
    ProjectionParams pp = sweep.projection;
    pp.seed = rng::stage_seed(seed, "sweep.projection");
    points = project_2d(set, pp);
  } else {
    points = std::move(set.values);
  }
  const ClusterResult clusters = fit_density_clusters(points, sweep.cluster);
  return derive_binary_labels(clusters, set.ids, sampled).scores;
}

}  // namespace

ProxyKind parse_proxy(std::string_view name) {
  if (name == "majority") return ProxyKind::Majority;
  if (name == "cluster") return ProxyKind::Cluster;
  throw ConfigError("invalid-sweep",
                    "unknown proxy '" + std::string(name) + "'");
}

std::string to_string(ProxyKind proxy) {
  return proxy == ProxyKind::Majority ? "majority" : "cluster";
}

std::map<std::int64_t, double> majority_scores(
    std::span<const AnnotationRecord> records) {
  if (records.empty()) {
    throw DomainError("empty-records", "no annotation records to score");
  }
  struct Tally {
    std::int64_t ones = 0;
    std::int64_t total = 0;
  };
  std::map<std::int64_t, Tally> tallies;
  for (const AnnotationRecord& r : records) {
    Tally& t = tallies[r.item_id];
    t.ones += r.value;
    t.total += 1;
  }
  std::map<std::int64_t, double> scores;
  for (const auto& [item, t] : tallies) {
    scores.emplace(item,
                   static_cast<double>(t.ones) / static_cast<double>(t.total));
  }
  return scores;
}

double roc_auc(std::span<const double> scores,
               std::span<const std::uint8_t> truth) {
  check_sizes(scores, truth);
  const std::size_t n = scores.size();
  std::int64_t n_pos = 0;
  for (const std::uint8_t t : truth) n_pos += t;
  const std::int64_t n_neg = static_cast<std::int64_t>(n) - n_pos;
  if (n_pos == 0 || n_neg == 0) {
    throw DomainError("undefined-auc",
                      "AUC needs both classes; positives=" +
                          std::to_string(n_pos) +
                          " negatives=" + std::to_string(n_neg));
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] < scores[b];
  });

  // Midranks: tied scores share the average of their 1-based rank range.
  double pos_rank_sum = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    const double midrank = 0.5 * static_cast<double>(i + 1 + j);  // (i+1 + j)/2
    for (std::size_t k = i; k < j; ++k) {
      if (truth[order[k]]) pos_rank_sum += midrank;
    }
    i = j;
  }
  const double auc =
      (pos_rank_sum -
       0.5 * static_cast<double>(n_pos) * static_cast<double>(n_pos + 1)) /
      (static_cast<double>(n_pos) * static_cast<double>(n_neg));
  return auc;
}

CurveData pr_curve(std::span<const double> scores,
                   std::span<const std::uint8_t> truth) {
  check_sizes(scores, truth);
  const std::size_t n = scores.size();
  std::int64_t n_pos = 0;
  for (const std::uint8_t t : truth) n_pos += t;
  if (n_pos == 0) {
    throw DomainError("undefined-ap",
                      "average precision needs at least one positive");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] > scores[b];
  });

  CurveData curve;
  curve.kind = CurveKind::Pr;
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  double prev_recall = 0.0;
  double area = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    for (std::size_t k = i; k < j; ++k) {
      if (truth[order[k]]) {
        ++tp;
      } else {
        ++fp;
      }
    }
    const double recall = static_cast<double>(tp) / static_cast<double>(n_pos);
    const double precision =
        static_cast<double>(tp) / static_cast<double>(tp + fp);
    area += (recall - prev_recall) * precision;
    curve.points.push_back({recall, precision});
    prev_recall = recall;
    i = j;
  }
  curve.area = area;
  return curve;
}

SweepReport run_replication_sweep(const SimConfig& sim,
                                  const SweepConfig& sweep) {
  validate(sim, sweep);

  SweepReport report;
  for (const std::uint64_t seed : sweep.seeds) {
    SimConfig seeded = sim;
    seeded.seed = seed;
    const Population pop = build_population(seeded);
    const std::vector<AnnotationRecord> full =
        generate_annotations(pop.annotators, pop.items, seed);
    std::vector<std::uint8_t> truth(static_cast<std::size_t>(sim.n_items));
    for (std::size_t i = 0; i < truth.size(); ++i) {
      truth[i] = static_cast<std::uint8_t>(pop.items[i].true_label);
    }

    for (const std::int64_t replication : sweep.replication_sizes) {
      const std::vector<AnnotationRecord> sampled =
          downsample_replication(full, replication, seed);
      for (const ProxyKind proxy : sweep.proxies) {
        SweepCell cell;
        cell.seed = seed;
        cell.replication = replication;
        cell.proxy = proxy;
        try {
          std::vector<double> scores;
          if (proxy == ProxyKind::Majority) {
            const auto by_item = majority_scores(sampled);
            if (by_item.size() != truth.size()) {
              throw DomainError("item-without-records",
                                "sampled records cover " +
                                    std::to_string(by_item.size()) + " of " +
                                    std::to_string(truth.size()) + " items");
            }
            scores.resize(truth.size());
            for (const auto& [item, score] : by_item) {
              scores[static_cast<std::size_t>(item)] = score;
            }
          } else {
            scores = cluster_proxy_scores(sim, sweep, sampled, seed);
          }
          cell.auc = roc_auc(scores, truth);
          cell.pr = pr_curve(scores, truth);
          cell.average_precision = cell.pr.area;
        } catch (const Error& e) {
          cell.failed = true;
          cell.error = e.code();
          cell.auc = std::numeric_limits<double>::quiet_NaN();
          cell.average_precision = std::numeric_limits<double>::quiet_NaN();
          cell.pr = CurveData{};
        }
        report.cells.push_back(std::move(cell));
      }
    }
  }

  std::sort(report.cells.begin(), report.cells.end(),
            [](const SweepCell& a, const SweepCell& b) {
              return std::tuple(a.seed, -a.replication, to_string(a.proxy)) <
                     std::tuple(b.seed, -b.replication, to_string(b.proxy));
            });
  return report;
}

}  // namespace raterlens
