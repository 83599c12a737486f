// Copyright 2026 RaterLens Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace raterlens {

enum class SkillClass { Expert, Average, Bad, Random };
enum class Difficulty { Easy, Normal, Hard };

std::string to_string(SkillClass c);
std::string to_string(Difficulty d);

// P(annotation matches ground truth) before the item multiplier is applied.
// Random has no accuracy; its output ignores ground truth entirely.
double skill_accuracy(SkillClass c);
double difficulty_multiplier(Difficulty d);

struct AnnotatorProfile {
  std::int64_t id = 0;
  SkillClass skill = SkillClass::Average;
  double base_accuracy = 0.0;
};

struct ItemProfile {
  std::int64_t id = 0;
  Difficulty difficulty = Difficulty::Normal;
  double multiplier = 1.0;
  int true_label = 0;  // 1 = toxic
};

struct SimConfig {
  std::int64_t n_annotators = 500;
  std::int64_t n_items = 5000;
  // expert : random : bad : average
  std::array<double, 4> annotator_ratio{1, 1, 1, 5};
  // easy : normal : hard
  std::array<double, 3> item_ratio{1, 2, 1};
  // toxic : not toxic
  std::array<double, 2> truth_ratio{1, 1};
  std::int64_t replication = 500;
  std::uint64_t seed = 0;
};

struct AnnotationRecord {
  std::int64_t item_id = 0;
  std::int64_t annotator_id = 0;
  std::uint8_t value = 0;

  friend bool operator==(const AnnotationRecord&,
                         const AnnotationRecord&) = default;
};

struct Population {
  std::vector<AnnotatorProfile> annotators;
  std::vector<ItemProfile> items;
};

// Largest-remainder apportionment of `total` across `parts`: floor each
// share, hand out remainders by descending fractional part, ties broken in
// declaration order. All-zero parts is an invalid config.
std::vector<std::int64_t> apportion(std::int64_t total,
                                    std::span<const double> parts);

void validate(const SimConfig& config);

// Class counts follow the configured ratios via `apportion`; assignment of
// classes to ids is a seeded shuffle. Deterministic for a fixed seed.
Population build_population(const SimConfig& config);

struct AnnotationProbability {
  double probability = 0.0;
  // True: `probability` is P(emitted value == true_label). False (Random
  // annotators): `probability` is P(emitted value == 1), truth ignored.
  bool matches_truth = true;
};

AnnotationProbability annotation_probability(const AnnotatorProfile& annotator,
                                             const ItemProfile& item);

// Exactly one record per (annotator, item) pair, one Bernoulli trial each,
// drawn from a counter-based stream keyed by (seed, annotator_id, item_id).
// Output is item-major and identical for any thread count.
std::vector<AnnotationRecord> generate_annotations(
    std::span<const AnnotatorProfile> annotators,
    std::span<const ItemProfile> items, std::uint64_t seed);

// Keep exactly `replication` records per item, from distinct annotators,
// sampled uniformly without replacement (seeded per item). Selections are
// nested: a smaller replication from the same seed is a subset of a larger
// one. Output sorted by (item, annotator).
std::vector<AnnotationRecord> downsample_replication(
    std::span<const AnnotationRecord> records, std::int64_t replication,
    std::uint64_t seed);

}  // namespace raterlens
