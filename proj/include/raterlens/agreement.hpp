// Copyright 2026 RaterLens Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace raterlens {

// One unit's rating by one rater. Categories are nominal; binary {0,1} for
// toxicity.
struct Rating {
  std::string rater;
  int category = 0;
};

// unit id -> ratings. std::map keeps iteration deterministic. A rater may
// appear at most once per unit (enforced on insertion helpers).
struct RatingTable {
  std::map<std::string, std::vector<Rating>> units;

  // Throws if (unit, rater) repeats.
  void add(const std::string& unit, const std::string& rater, int category);
  std::size_t n_ratings() const;
};

struct AgreementScore {
  double value = 0.0;
  std::int64_t n_units = 0;
  std::string method;
};

// Nominal-data Krippendorff alpha via the coincidence matrix. Units with a
// single rating are excluded. Throws DomainError "undefined-alpha" when no
// unit has two ratings and "undefined-alpha-single-category" when expected
// disagreement is zero.
AgreementScore krippendorff_alpha(const RatingTable& table);

// kappa = (p_o - p_e) / (1 - p_e) over paired categories. Throws
// "undefined-kappa" when p_e = 1.
AgreementScore cohen_kappa(std::span<const std::pair<int, int>> pairs);

// 1 iff strictly more than half the ratings are 1; exact ties -> 0.
std::map<std::string, int> majority_vote(const RatingTable& table);

// Cross-replication reliability between two rater pools over their shared
// units: (A_o - A_e) / (1 - A_e) with A_o the cross-pool agreement rate and
// A_e the chance agreement from pooled category proportions.
AgreementScore xrr(const RatingTable& pool_x, const RatingTable& pool_y);

// The normalization rule on raw scores: xrr / sqrt(alpha_x * alpha_y).
// Both alphas must be positive. May exceed 1; that is reported as-is.
double normalize_xrr_value(double xrr_value, double alpha_x, double alpha_y);

// normalize_xrr_value applied to the pools' xrr and within-pool alphas.
AgreementScore normalized_xrr(const RatingTable& pool_x,
                              const RatingTable& pool_y);

struct PredictionPair {
  std::string annotator_id;
  std::string comment_id;
  int human_label = 0;
  int model_label = 0;
};

struct AnnotatorDelta {
  std::string annotator_id;
  double irr_soft = 0.0;
  double irr_fewshot = 0.0;
  double delta = 0.0;
  std::int64_t n_units = 0;  // comments rated by this annotator
};

struct DeltaIrrReport {
  std::vector<AnnotatorDelta> per_annotator;
  // Annotators with an undefined alpha in either system, with the reason.
  std::vector<std::pair<std::string, std::string>> excluded;
  double mean_delta = 0.0;
  std::int64_t n_annotators = 0;
};

// Per annotator: alpha of the two-rater (human, model) table per system,
// then delta = IRR_soft - IRR_fewshot. Both inputs must cover the same
// annotator ids.
DeltaIrrReport delta_irr(std::span<const PredictionPair> soft,
                         std::span<const PredictionPair> fewshot);

enum class Band { Poor, Slight, Fair, Moderate, Substantial, AlmostPerfect };

struct BandLabel {
  Band band = Band::Poor;
  bool over_unity = false;
};

std::string to_string(Band band);

// Landis-Koch interpretation bands for categorical agreement scores.
BandLabel interpret_band(double score);

}  // namespace raterlens
