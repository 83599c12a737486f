// Copyright 2026 RaterLens Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace raterlens {

struct RatingEntry {
  std::int32_t item = 0;
  std::int32_t annotator = 0;
  double value = 0.0;   // binary {0,1}
  double weight = 1.0;  // per-entry confidence, >= 0
};

struct SparseRatingMatrix {
  std::int64_t n_items = 0;
  std::int64_t n_annotators = 0;
  std::vector<RatingEntry> entries;

  // Rows/columns with no observed entry ("cold"); they shrink to zero
  // factors under the ridge term.
  std::vector<std::int32_t> cold_items() const;
  std::vector<std::int32_t> cold_annotators() const;
};

// Index ranges, duplicate pairs, binary values, nonnegative weights.
void validate(const SparseRatingMatrix& matrix);

// Stratified split: positive and negative entries partitioned separately so
// the dev class ratio matches the full matrix within one entry per class.
// Seeded and deterministic.
std::pair<SparseRatingMatrix, SparseRatingMatrix> split_train_dev(
    const SparseRatingMatrix& matrix, double dev_fraction, std::uint64_t seed);

// One fit's hyperparameters, bundled for configs and pipelines.
struct WalsParams {
  int dim = 3;
  double reg = 0.1;
  int iterations = 5;
  double unobserved_weight = 0.0;
};

struct FactorModel {
  Eigen::MatrixXd item_factors;       // n_items x dim
  Eigen::MatrixXd annotator_factors;  // n_annotators x dim
  int dim = 0;
  double reg = 0.0;
  int iterations = 0;
  double unobserved_weight = 0.0;
};

struct WalsFit {
  FactorModel model;
  // Objective value at init (index 0) and after every half-step; exact
  // alternating minimization makes this non-increasing.
  std::vector<double> objective_trace;
};

// Minimizes
//   J = sum_observed w (v - x_i . y_u)^2
//     + w0 * sum_unobserved (x_i . y_u)^2
//     + reg * (sum ||x_i||^2 + sum ||y_u||^2)
// by alternating exact ridge solves over item rows then annotator rows.
// Factors start from a seeded Gaussian with standard deviation 1/sqrt(dim).
// Deterministic for a fixed seed and any thread count.
WalsFit fit_wals(const SparseRatingMatrix& train, int dim, double reg,
                 int iterations, double unobserved_weight, std::uint64_t seed);

// Raw inner-product reconstruction, unclipped.
double predict(const FactorModel& model, std::int64_t item,
               std::int64_t annotator);

struct FitReport {
  // RMSE over observed entries with value 1 / value 0, predictions clipped
  // to [0,1] first. NaN when a split has no entries of that class.
  double pos_train = 0.0;
  double neg_train = 0.0;
  double pos_dev = 0.0;
  double neg_dev = 0.0;
  std::vector<double> objective_trace;
};

FitReport error_report(const WalsFit& fit, const SparseRatingMatrix& train,
                       const SparseRatingMatrix& dev);

struct GridCell {
  int dim = 0;
  double reg = 0.0;
  int iterations = 0;
  double pos_dev = 0.0;
  double neg_dev = 0.0;
  bool failed = false;
  std::string error;

  double mean_dev() const { return 0.5 * (pos_dev + neg_dev); }
};

struct GridResult {
  GridCell best;
  std::vector<GridCell> table;
};

// Fits every (dim, reg, iterations) combination with the same seed. Best is
// the lowest mean of pos_dev and neg_dev; ties break to smaller dim, then
// smaller reg, then fewer iterations. Failed fits are recorded, never fatal.
GridResult grid_search(const SparseRatingMatrix& train,
                       const SparseRatingMatrix& dev, std::span<const int> dims,
                       std::span<const double> regs,
                       std::span<const int> iterations, std::uint64_t seed,
                       double unobserved_weight = 0.0);

}  // namespace raterlens
