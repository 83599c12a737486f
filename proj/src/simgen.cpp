// Copyright 2026 RaterLens Authors
// SPDX-License-Identifier: Apache-2.0
#include "raterlens/simgen.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "raterlens/common.hpp"
#include "raterlens/rng.hpp"

namespace raterlens {

std::string to_string(SkillClass c) {
  switch (c) {
    case SkillClass::Expert: return "Expert";
    case SkillClass::Average: return "Average";
    case SkillClass::Bad: return "Bad";
    case SkillClass::Random: return "Random";
  }
  return "?";
}

std::string to_string(Difficulty d) {
  switch (d) {
    case Difficulty::Easy: return "Easy";
    case Difficulty::Normal: return "Normal";
    case Difficulty::Hard: return "Hard";
  }
  return "?";
}

double skill_accuracy(SkillClass c) {
  switch (c) {
    case SkillClass::Expert: return 0.90;
    case SkillClass::Average: return 0.75;
    case SkillClass::Bad: return 0.25;
    case SkillClass::Random: return 0.0;  // unused; Random ignores truth
  }
  return 0.0;
}

double difficulty_multiplier(Difficulty d) {
  switch (d) {
    case Difficulty::Easy: return 1.2;
    case Difficulty::Normal: return 1.0;
    case Difficulty::Hard: return 0.7;
  }
  return 1.0;
}

std::vector<std::int64_t> apportion(std::int64_t total,
                                    std::span<const double> parts) {
  double sum = 0.0;
  for (double p : parts) {
    if (p < 0.0 || !std::isfinite(p))
      throw ConfigError("invalid-config", "ratio parts must be nonnegative");
    sum += p;
  }
  if (sum <= 0.0)
    throw ConfigError("invalid-config", "ratio parts are all zero");

  const std::size_t k = parts.size();
  std::vector<std::int64_t> counts(k, 0);
  std::vector<double> fractional(k, 0.0);
  std::int64_t assigned = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const double share = static_cast<double>(total) * parts[i] / sum;
    counts[i] = static_cast<std::int64_t>(std::floor(share));
    fractional[i] = share - static_cast<double>(counts[i]);
    assigned += counts[i];
  }
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Descending fractional part; equal fractions fall back to declaration
  // order (stable sort keeps it).
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return fractional[a] > fractional[b];
  });
  for (std::size_t i = 0; assigned < total; ++i) {
    ++counts[order[i % k]];
    ++assigned;
  }
  return counts;
}

void validate(const SimConfig& config) {
  if (config.n_annotators <= 0 || config.n_items <= 0)
    throw ConfigError("invalid-config", "population counts must be positive");
  if (config.replication <= 0 || config.replication > config.n_annotators)
    throw ConfigError("invalid-config",
                      "replication must be in [1, n_annotators]");
  apportion(1, config.annotator_ratio);  // ratio sanity only
  apportion(1, config.item_ratio);
  apportion(1, config.truth_ratio);
}

namespace {

// Declaration order fixes remainder tie-breaks: expert > random > bad >
// average, easy > normal > hard, toxic > not toxic.
constexpr SkillClass kSkillOrder[4] = {SkillClass::Expert, SkillClass::Random,
                                       SkillClass::Bad, SkillClass::Average};
constexpr Difficulty kDifficultyOrder[3] = {Difficulty::Easy, Difficulty::Normal,
                                            Difficulty::Hard};

template <typename Label, std::size_t N>
std::vector<Label> shuffled_labels(std::int64_t total,
                                   std::span<const double> ratio,
                                   const Label (&order)[N],
                                   std::uint64_t seed) {
  const auto counts = apportion(total, ratio);
  std::vector<Label> labels;
  labels.reserve(static_cast<std::size_t>(total));
  for (std::size_t i = 0; i < N; ++i)
    labels.insert(labels.end(), static_cast<std::size_t>(counts[i]), order[i]);
  rng::SplitMix64 gen(seed);
  rng::shuffle(std::span<Label>(labels), gen);
  return labels;
}

}  // namespace

Population build_population(const SimConfig& config) {
  validate(config);
  Population pop;

  const auto skills = shuffled_labels(
      config.n_annotators, config.annotator_ratio, kSkillOrder,
      rng::stage_seed(config.seed, "population.annotators"));
  pop.annotators.reserve(static_cast<std::size_t>(config.n_annotators));
  for (std::int64_t id = 0; id < config.n_annotators; ++id) {
    const SkillClass skill = skills[static_cast<std::size_t>(id)];
    pop.annotators.push_back({id, skill, skill_accuracy(skill)});
  }

  const auto difficulties = shuffled_labels(
      config.n_items, config.item_ratio, kDifficultyOrder,
      rng::stage_seed(config.seed, "population.items.difficulty"));
  constexpr int kTruthOrder[2] = {1, 0};  // toxic first
  const auto truths = shuffled_labels(
      config.n_items, config.truth_ratio, kTruthOrder,
      rng::stage_seed(config.seed, "population.items.truth"));
  pop.items.reserve(static_cast<std::size_t>(config.n_items));
  for (std::int64_t id = 0; id < config.n_items; ++id) {
    const Difficulty d = difficulties[static_cast<std::size_t>(id)];
    pop.items.push_back(
        {id, d, difficulty_multiplier(d), truths[static_cast<std::size_t>(id)]});
  }
  return pop;
}

AnnotationProbability annotation_probability(const AnnotatorProfile& annotator,
                                             const ItemProfile& item) {
  if (annotator.skill == SkillClass::Random) {
    // Uniformly at random, no difficulty modulation.
    return {0.5, false};
  }
  const double p = annotator.base_accuracy * item.multiplier;
  return {std::clamp(p, 0.0, 1.0), true};
}

std::vector<AnnotationRecord> generate_annotations(
    std::span<const AnnotatorProfile> annotators,
    std::span<const ItemProfile> items, std::uint64_t seed) {
  if (annotators.empty() || items.empty())
    throw ConfigError("invalid-config", "populations must be non-empty");

  const std::size_t n_items = items.size();
  const std::size_t n_annotators = annotators.size();
  std::vector<AnnotationRecord> records(n_items * n_annotators);

#pragma omp parallel for schedule(static)
  for (std::int64_t ii = 0; ii < static_cast<std::int64_t>(n_items); ++ii) {
    const ItemProfile& item = items[static_cast<std::size_t>(ii)];
    AnnotationRecord* row = records.data() + static_cast<std::size_t>(ii) * n_annotators;
    for (std::size_t ai = 0; ai < n_annotators; ++ai) {
      const AnnotatorProfile& annotator = annotators[ai];
      const auto ap = annotation_probability(annotator, item);
      const double u = rng::uniform01(
          rng::key3(seed, static_cast<std::uint64_t>(annotator.id),
                    static_cast<std::uint64_t>(item.id)));
      std::uint8_t value = 0;
      if (ap.matches_truth) {
        const bool match = u < ap.probability;
        value = static_cast<std::uint8_t>(match ? item.true_label
                                                : 1 - item.true_label);
      } else {
        value = static_cast<std::uint8_t>(u < ap.probability ? 1 : 0);
      }
      row[ai] = {item.id, annotator.id, value};
    }
  }
  return records;
}

std::vector<AnnotationRecord> downsample_replication(
    std::span<const AnnotationRecord> records, std::int64_t replication,
    std::uint64_t seed) {
  if (replication <= 0)
    throw ConfigError("invalid-config", "replication must be positive");

  std::map<std::int64_t, std::vector<AnnotationRecord>> by_item;
  for (const auto& r : records) by_item[r.item_id].push_back(r);

  std::vector<AnnotationRecord> kept;
  kept.reserve(by_item.size() * static_cast<std::size_t>(replication));
  for (auto& [item_id, group] : by_item) {
    if (static_cast<std::int64_t>(group.size()) < replication)
      throw DomainError("insufficient-replication",
                        "item " + std::to_string(item_id) + " has only " +
                            std::to_string(group.size()) +
                            " annotators, need " +
                            std::to_string(replication));
    // Canonical base order before sampling.
    std::sort(group.begin(), group.end(),
              [](const AnnotationRecord& a, const AnnotationRecord& b) {
                return a.annotator_id < b.annotator_id;
              });
    rng::SplitMix64 gen(rng::key3(seed, rng::fnv1a("downsample"),
                                  static_cast<std::uint64_t>(item_id)));
    const auto pick = rng::sample_without_replacement(
        group.size(), static_cast<std::size_t>(replication), gen);
    for (std::size_t idx : pick) kept.push_back(group[idx]);
  }
  std::sort(kept.begin(), kept.end(),
            [](const AnnotationRecord& a, const AnnotationRecord& b) {
              return a.item_id != b.item_id ? a.item_id < b.item_id
                                            : a.annotator_id < b.annotator_id;
            });
  return kept;
}

}  // namespace raterlens
