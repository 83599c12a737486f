// Copyright 2026 RaterLens Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "raterlens/cluster.hpp"
#include "raterlens/projection.hpp"
#include "raterlens/simgen.hpp"
#include "raterlens/wals.hpp"

namespace raterlens {

enum class ProxyKind { Majority, Cluster };

ProxyKind parse_proxy(std::string_view name);
std::string to_string(ProxyKind proxy);

enum class CurveKind { Roc, Pr };

struct CurveData {
  CurveKind kind = CurveKind::Pr;
  std::vector<std::array<double, 2>> points;  // (x, y), x non-decreasing
  double area = 0.0;
};

// Fraction of each item's records equal to 1, keyed by item id.
std::map<std::int64_t, double> majority_scores(
    std::span<const AnnotationRecord> records);

// Rank-statistic AUC with half credit for ties; needs both classes.
double roc_auc(std::span<const double> scores,
               std::span<const std::uint8_t> truth);

// One (recall, precision) point per distinct threshold, descending scores;
// area is average precision. Needs at least one positive.
CurveData pr_curve(std::span<const double> scores,
                   std::span<const std::uint8_t> truth);

struct SweepConfig {
  std::vector<std::int64_t> replication_sizes{200, 100, 50, 20, 15, 10, 5};
  std::vector<ProxyKind> proxies{ProxyKind::Majority, ProxyKind::Cluster};
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  // Sweep factorizations see far sparser matrices than a full-replication fit,
  // so the defaults differ from WalsParams: a small weight on unobserved cells
  // plus extra iterations and a stronger ridge keep the item embeddings from
  // degenerating into a single density blob at low replication.
  WalsParams wals{3, 0.3, 20, 0.1};
  PreprocessMode preprocess = PreprocessMode::Whiten;
  ProjectionParams projection;
  ClusterParams cluster;
};

struct SweepCell {
  std::uint64_t seed = 0;
  std::int64_t replication = 0;
  ProxyKind proxy = ProxyKind::Majority;
  double auc = 0.0;
  double average_precision = 0.0;
  bool failed = false;
  std::string error;  // error code when failed
  CurveData pr;       // empty when failed
};

struct SweepReport {
  // Sorted by (seed, replication descending, proxy name).
  std::vector<SweepCell> cells;
};

// Per seed: one full generation, then per replication size a nested
// downsample scored by every configured proxy against the simulated truth.
// A failing cell is recorded and the sweep continues.
SweepReport run_replication_sweep(const SimConfig& sim,
                                  const SweepConfig& sweep);

}  // namespace raterlens
