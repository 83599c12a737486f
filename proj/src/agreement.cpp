// Copyright 2026 RaterLens Authors
// SPDX-License-Identifier: Apache-2.0
#include "raterlens/agreement.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "raterlens/common.hpp"

namespace raterlens {

void RatingTable::add(const std::string& unit, const std::string& rater,
                      int category) {
  auto& ratings = units[unit];
  for (const auto& r : ratings)
    if (r.rater == rater)
      throw DomainError("duplicate-rating",
                        "rater '" + rater + "' rated unit '" + unit +
                            "' more than once");
  ratings.push_back({rater, category});
}

std::size_t RatingTable::n_ratings() const {
  std::size_t n = 0;
  for (const auto& [unit, ratings] : units) n += ratings.size();
  return n;
}

AgreementScore krippendorff_alpha(const RatingTable& table) {
  // Pooled category totals n_c over units with >= 2 ratings, plus the
  // observed-disagreement numerator: each unit with m ratings contributes
  // cnt_c * cnt_k / (m - 1) to coincidence cell o_ck.
  std::map<int, double> totals;
  double observed_cross = 0.0;  // sum over c != k of o_ck
  std::int64_t n_units = 0;
  for (const auto& [unit, ratings] : table.units) {
    const std::size_t m = ratings.size();
    if (m < 2) continue;
    ++n_units;
    std::map<int, std::size_t> counts;
    for (const auto& r : ratings) ++counts[r.category];
    double same_pairs = 0.0;
    for (const auto& [cat, cnt] : counts) {
      totals[cat] += static_cast<double>(cnt);
      same_pairs += static_cast<double>(cnt) * static_cast<double>(cnt - 1);
    }
    const double all_pairs = static_cast<double>(m) * static_cast<double>(m - 1);
    observed_cross += (all_pairs - same_pairs) / static_cast<double>(m - 1);
  }
  if (n_units == 0)
    throw DomainError("undefined-alpha",
                      "no unit has two or more ratings; alpha is undefined");

  double n = 0.0;
  for (const auto& [cat, cnt] : totals) n += cnt;
  double expected_cross = 0.0;  // sum over c != k of n_c * n_k
  for (const auto& [c, nc] : totals)
    for (const auto& [k, nk] : totals)
      if (c != k) expected_cross += nc * nk;

  const double d_e = expected_cross / (n * (n - 1.0));
  if (d_e == 0.0)
    throw DomainError("undefined-alpha-single-category",
                      "only one category observed; alpha is undefined");
  const double d_o = observed_cross / n;
  return {1.0 - d_o / d_e, n_units, "krippendorff_alpha"};
}

AgreementScore cohen_kappa(std::span<const std::pair<int, int>> pairs) {
  if (pairs.empty())
    throw DomainError("undefined-kappa", "no rating pairs");
  const double n = static_cast<double>(pairs.size());
  std::map<int, double> m1, m2;
  double agree = 0.0;
  for (const auto& [a, b] : pairs) {
    m1[a] += 1.0;
    m2[b] += 1.0;
    if (a == b) agree += 1.0;
  }
  const double p_o = agree / n;
  double p_e = 0.0;
  for (const auto& [cat, c1] : m1) {
    auto it = m2.find(cat);
    if (it != m2.end()) p_e += (c1 / n) * (it->second / n);
  }
  if (p_e >= 1.0)
    throw DomainError("undefined-kappa",
                      "chance agreement is 1; kappa is undefined");
  return {(p_o - p_e) / (1.0 - p_e), static_cast<std::int64_t>(pairs.size()),
          "cohen_kappa"};
}

std::map<std::string, int> majority_vote(const RatingTable& table) {
  std::map<std::string, int> labels;
  for (const auto& [unit, ratings] : table.units) {
    if (ratings.empty())
      throw DomainError("empty-unit", "unit '" + unit + "' has no ratings");
    std::size_t ones = 0;
    for (const auto& r : ratings) ones += r.category == 1 ? 1 : 0;
    labels[unit] = 2 * ones > ratings.size() ? 1 : 0;
  }
  return labels;
}

AgreementScore xrr(const RatingTable& pool_x, const RatingTable& pool_y) {
  double cross_agree = 0.0;
  double cross_pairs = 0.0;
  std::map<int, double> pooled_x, pooled_y;
  double total_x = 0.0, total_y = 0.0;
  std::int64_t shared_units = 0;

  for (const auto& [unit, ratings_x] : pool_x.units) {
    auto it = pool_y.units.find(unit);
    if (it == pool_y.units.end()) continue;
    const auto& ratings_y = it->second;
    if (ratings_x.empty() || ratings_y.empty()) continue;
    ++shared_units;
    std::map<int, double> cx, cy;
    for (const auto& r : ratings_x) cx[r.category] += 1.0;
    for (const auto& r : ratings_y) cy[r.category] += 1.0;
    for (const auto& [cat, nx] : cx) {
      pooled_x[cat] += nx;
      total_x += nx;
      auto jt = cy.find(cat);
      if (jt != cy.end()) cross_agree += nx * jt->second;
    }
    for (const auto& [cat, ny] : cy) {
      pooled_y[cat] += ny;
      total_y += ny;
    }
    cross_pairs += static_cast<double>(ratings_x.size()) *
                   static_cast<double>(ratings_y.size());
  }
  if (shared_units == 0)
    throw DomainError("no-shared-units",
                      "the two pools rate no unit in common");

  const double a_o = cross_agree / cross_pairs;
  double a_e = 0.0;
  for (const auto& [cat, nx] : pooled_x) {
    auto it = pooled_y.find(cat);
    if (it != pooled_y.end()) a_e += (nx / total_x) * (it->second / total_y);
  }
  if (a_e >= 1.0)
    throw DomainError("undefined-xrr",
                      "chance cross-agreement is 1; xRR is undefined");
  return {(a_o - a_e) / (1.0 - a_e), shared_units, "xrr"};
}

double normalize_xrr_value(double xrr_value, double alpha_x, double alpha_y) {
  if (alpha_x <= 0.0 || alpha_y <= 0.0)
    throw DomainError("undefined-normalized-xrr",
                      "within-pool alpha must be positive to normalize");
  return xrr_value / std::sqrt(alpha_x * alpha_y);
}

AgreementScore normalized_xrr(const RatingTable& pool_x,
                              const RatingTable& pool_y) {
  const AgreementScore cross = xrr(pool_x, pool_y);
  const AgreementScore alpha_x = krippendorff_alpha(pool_x);
  const AgreementScore alpha_y = krippendorff_alpha(pool_y);
  return {normalize_xrr_value(cross.value, alpha_x.value, alpha_y.value),
          cross.n_units, "normalized_xrr"};
}

namespace {

// Two-rater table (human vs model) for one annotator's comments.
RatingTable two_rater_table(std::span<const PredictionPair> pairs,
                            const std::string& annotator) {
  RatingTable t;
  for (const auto& p : pairs) {
    if (p.annotator_id != annotator) continue;
    t.add(p.comment_id, "human", p.human_label);
    t.add(p.comment_id, "model", p.model_label);
  }
  return t;
}

std::set<std::string> annotator_ids(std::span<const PredictionPair> pairs) {
  std::set<std::string> ids;
  for (const auto& p : pairs) ids.insert(p.annotator_id);
  return ids;
}

}  // namespace

DeltaIrrReport delta_irr(std::span<const PredictionPair> soft,
                         std::span<const PredictionPair> fewshot) {
  const auto ids_soft = annotator_ids(soft);
  const auto ids_few = annotator_ids(fewshot);
  if (ids_soft != ids_few) {
    std::string offending;
    for (const auto& id : ids_soft)
      if (!ids_few.count(id)) { offending = id; break; }
    if (offending.empty())
      for (const auto& id : ids_few)
        if (!ids_soft.count(id)) { offending = id; break; }
    throw DomainError("input-mismatch",
                      "annotator '" + offending +
                          "' is present in only one prediction file");
  }

  DeltaIrrReport report;
  double sum = 0.0;
  for (const auto& id : ids_soft) {
    double irr_soft = 0.0, irr_few = 0.0;
    std::int64_t n_units = 0;
    try {
      const AgreementScore s = krippendorff_alpha(two_rater_table(soft, id));
      irr_soft = s.value;
      n_units = s.n_units;
    } catch (const DomainError& e) {
      report.excluded.emplace_back(id, std::string("soft: ") + e.code());
      continue;
    }
    try {
      irr_few = krippendorff_alpha(two_rater_table(fewshot, id)).value;
    } catch (const DomainError& e) {
      report.excluded.emplace_back(id, std::string("fewshot: ") + e.code());
      continue;
    }
    report.per_annotator.push_back(
        {id, irr_soft, irr_few, irr_soft - irr_few, n_units});
    sum += irr_soft - irr_few;
  }
  report.n_annotators = static_cast<std::int64_t>(report.per_annotator.size());
  report.mean_delta =
      report.n_annotators > 0 ? sum / static_cast<double>(report.n_annotators)
                              : 0.0;
  return report;
}

std::string to_string(Band band) {
  switch (band) {
    case Band::Poor: return "Poor";
    case Band::Slight: return "Slight";
    case Band::Fair: return "Fair";
    case Band::Moderate: return "Moderate";
    case Band::Substantial: return "Substantial";
    case Band::AlmostPerfect: return "Almost Perfect";
  }
  return "?";
}

BandLabel interpret_band(double score) {
  if (score < 0.0) return {Band::Poor, false};
  if (score <= 0.20) return {Band::Slight, false};
  if (score <= 0.40) return {Band::Fair, false};
  if (score <= 0.60) return {Band::Moderate, false};
  if (score <= 0.80) return {Band::Substantial, false};
  if (score <= 1.00) return {Band::AlmostPerfect, false};
  return {Band::AlmostPerfect, true};
}

}  // namespace raterlens
