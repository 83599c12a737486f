// Copyright 2026 RaterLens Authors
// SPDX-License-Identifier: Apache-2.0
#include "raterlens/wals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_set>

#include "raterlens/common.hpp"
#include "raterlens/rng.hpp"

namespace raterlens {

namespace {

// CSR-style adjacency over one axis of the sparse matrix.
struct Adjacency {
  std::vector<std::size_t> offsets;  // n + 1
  std::vector<std::int32_t> other;   // column index on the opposite axis
  std::vector<double> value;
  std::vector<double> weight;
};

Adjacency build_adjacency(const SparseRatingMatrix& m, bool by_item) {
  const std::size_t n = static_cast<std::size_t>(by_item ? m.n_items
                                                         : m.n_annotators);
  Adjacency adj;
  adj.offsets.assign(n + 1, 0);
  for (const auto& e : m.entries)
    ++adj.offsets[static_cast<std::size_t>(by_item ? e.item : e.annotator) + 1];
  for (std::size_t i = 0; i < n; ++i) adj.offsets[i + 1] += adj.offsets[i];
  adj.other.resize(m.entries.size());
  adj.value.resize(m.entries.size());
  adj.weight.resize(m.entries.size());
  std::vector<std::size_t> cursor(adj.offsets.begin(), adj.offsets.end() - 1);
  for (const auto& e : m.entries) {
    const std::size_t row = static_cast<std::size_t>(by_item ? e.item : e.annotator);
    const std::size_t at = cursor[row]++;
    adj.other[at] = by_item ? e.annotator : e.item;
    adj.value[at] = e.value;
    adj.weight[at] = e.weight;
  }
  return adj;
}

// Solve one side's rows given the other side's factors. With w0 > 0 the
// unobserved cells enter through the Gram matrix of the opposite factors
// (target 0), so the solve stays O(nnz d^2 + n d^3).
void solve_side(Eigen::MatrixXd& out, const Eigen::MatrixXd& other,
                const Adjacency& adj, double reg, double w0) {
  const int d = static_cast<int>(other.cols());
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(d, d);
  if (w0 > 0.0) {
    // Fixed row order keeps the accumulation bit-identical across runs.
    for (Eigen::Index r = 0; r < other.rows(); ++r)
      gram.noalias() += other.row(r).transpose() * other.row(r);
  }

  const std::int64_t n = out.rows();
  // Exceptions may not cross the parallel region; remember the first
  // singular row and throw afterwards.
  std::int64_t singular_row = -1;
#pragma omp parallel for schedule(static)
  for (std::int64_t row = 0; row < n; ++row) {
    Eigen::MatrixXd a = w0 * gram;
    a.diagonal().array() += reg;
    Eigen::VectorXd b = Eigen::VectorXd::Zero(d);
    const std::size_t begin = adj.offsets[static_cast<std::size_t>(row)];
    const std::size_t end = adj.offsets[static_cast<std::size_t>(row) + 1];
    for (std::size_t k = begin; k < end; ++k) {
      const auto y = other.row(adj.other[k]);
      a.noalias() += (adj.weight[k] - w0) * (y.transpose() * y);
      b.noalias() += (adj.weight[k] * adj.value[k]) * y.transpose();
    }
    if (reg == 0.0) {
      Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
      if (!lu.isInvertible()) {
#pragma omp critical
        {
          if (singular_row < 0 || row < singular_row) singular_row = row;
        }
        continue;
      }
      out.row(row) = lu.solve(b).transpose();
    } else {
      out.row(row) = a.ldlt().solve(b).transpose();
    }
  }
  if (singular_row >= 0)
    throw DomainError("singular-system",
                      "normal equations are singular at reg=0 (row " +
                          std::to_string(singular_row) + "); set reg > 0");
}

double objective(const SparseRatingMatrix& m, const Eigen::MatrixXd& items,
                 const Eigen::MatrixXd& annotators, double reg, double w0) {
  // Per-entry residuals accumulated into a fixed-order buffer so the total
  // is independent of thread count.
  const std::size_t nnz = m.entries.size();
  std::vector<double> partial(nnz);
#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(nnz); ++k) {
    const auto& e = m.entries[static_cast<std::size_t>(k)];
    const double pred = items.row(e.item).dot(annotators.row(e.annotator));
    const double r = e.value - pred;
    partial[static_cast<std::size_t>(k)] =
        e.weight * r * r - w0 * pred * pred;  // w0 correction folded in
  }
  double j = std::accumulate(partial.begin(), partial.end(), 0.0);
  if (w0 > 0.0) {
    // w0 * sum over ALL cells of pred^2 = w0 * tr((X^T X)(Y^T Y)); the
    // observed-cell share was subtracted inside `partial`.
    const int d = static_cast<int>(items.cols());
    Eigen::MatrixXd gx = Eigen::MatrixXd::Zero(d, d);
    Eigen::MatrixXd gy = Eigen::MatrixXd::Zero(d, d);
    for (Eigen::Index r = 0; r < items.rows(); ++r)
      gx.noalias() += items.row(r).transpose() * items.row(r);
    for (Eigen::Index r = 0; r < annotators.rows(); ++r)
      gy.noalias() += annotators.row(r).transpose() * annotators.row(r);
    j += w0 * (gx.cwiseProduct(gy)).sum();
  }
  j += reg * (items.squaredNorm() + annotators.squaredNorm());
  return j;
}

}  // namespace

std::vector<std::int32_t> SparseRatingMatrix::cold_items() const {
  std::vector<char> seen(static_cast<std::size_t>(n_items), 0);
  for (const auto& e : entries) seen[static_cast<std::size_t>(e.item)] = 1;
  std::vector<std::int32_t> cold;
  for (std::int64_t i = 0; i < n_items; ++i)
    if (!seen[static_cast<std::size_t>(i)])
      cold.push_back(static_cast<std::int32_t>(i));
  return cold;
}

std::vector<std::int32_t> SparseRatingMatrix::cold_annotators() const {
  std::vector<char> seen(static_cast<std::size_t>(n_annotators), 0);
  for (const auto& e : entries) seen[static_cast<std::size_t>(e.annotator)] = 1;
  std::vector<std::int32_t> cold;
  for (std::int64_t i = 0; i < n_annotators; ++i)
    if (!seen[static_cast<std::size_t>(i)])
      cold.push_back(static_cast<std::int32_t>(i));
  return cold;
}

void validate(const SparseRatingMatrix& matrix) {
  if (matrix.n_items <= 0 || matrix.n_annotators <= 0)
    throw ConfigError("invalid-config", "matrix dimensions must be positive");
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(matrix.entries.size());
  for (const auto& e : matrix.entries) {
    if (e.item < 0 || e.item >= matrix.n_items || e.annotator < 0 ||
        e.annotator >= matrix.n_annotators)
      throw ConfigError("invalid-config", "entry index out of range");
    if (e.value != 0.0 && e.value != 1.0)
      throw ConfigError("invalid-config", "entry values must be binary");
    if (!(e.weight >= 0.0))
      throw ConfigError("invalid-config", "entry weights must be >= 0");
    const std::uint64_t key =
        (static_cast<std::uint64_t>(static_cast<std::uint32_t>(e.item)) << 32) |
        static_cast<std::uint32_t>(e.annotator);
    if (!seen.insert(key).second)
      throw ConfigError("invalid-config",
                        "duplicate (item, annotator) entry: " +
                            std::to_string(e.item) + "," +
                            std::to_string(e.annotator));
  }
}

std::pair<SparseRatingMatrix, SparseRatingMatrix> split_train_dev(
    const SparseRatingMatrix& matrix, double dev_fraction, std::uint64_t seed) {
  if (!(dev_fraction > 0.0 && dev_fraction < 1.0))
    throw ConfigError("invalid-fraction",
                      "dev fraction must lie strictly between 0 and 1");
  if (matrix.entries.empty())
    throw ConfigError("invalid-config", "cannot split an empty matrix");

  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < matrix.entries.size(); ++i)
    (matrix.entries[i].value == 1.0 ? pos : neg).push_back(i);
  for (const auto* cls : {&pos, &neg})
    if (cls->size() < 2)
      throw DomainError("stratification",
                        "a value class has fewer than 2 entries; "
                        "stratified split is impossible");

  std::vector<char> in_dev(matrix.entries.size(), 0);
  const char* names[2] = {"split.pos", "split.neg"};
  std::vector<std::size_t>* classes[2] = {&pos, &neg};
  for (int c = 0; c < 2; ++c) {
    auto& idx = *classes[c];
    rng::SplitMix64 gen(rng::stage_seed(seed, names[c]));
    const auto take = static_cast<std::size_t>(
        std::llround(dev_fraction * static_cast<double>(idx.size())));
    const auto pick = rng::sample_without_replacement(idx.size(), take, gen);
    for (std::size_t p : pick) in_dev[idx[p]] = 1;
  }

  SparseRatingMatrix train{matrix.n_items, matrix.n_annotators, {}};
  SparseRatingMatrix dev{matrix.n_items, matrix.n_annotators, {}};
  for (std::size_t i = 0; i < matrix.entries.size(); ++i)
    (in_dev[i] ? dev : train).entries.push_back(matrix.entries[i]);
  return {std::move(train), std::move(dev)};
}

WalsFit fit_wals(const SparseRatingMatrix& train, int dim, double reg,
                 int iterations, double unobserved_weight, std::uint64_t seed) {
  if (dim < 1) throw ConfigError("invalid-config", "dim must be >= 1");
  if (reg < 0.0) throw ConfigError("invalid-config", "reg must be >= 0");
  if (iterations < 1)
    throw ConfigError("invalid-config", "iterations must be >= 1");
  if (unobserved_weight < 0.0)
    throw ConfigError("invalid-config", "unobserved weight must be >= 0");
  if (train.entries.empty())
    throw ConfigError("invalid-config", "cannot fit an empty matrix");
  validate(train);

  WalsFit fit;
  fit.model.dim = dim;
  fit.model.reg = reg;
  fit.model.iterations = iterations;
  fit.model.unobserved_weight = unobserved_weight;

  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  rng::SplitMix64 gen(rng::stage_seed(seed, "wals.init"));
  auto& x = fit.model.item_factors;
  auto& y = fit.model.annotator_factors;
  x.resize(train.n_items, dim);
  y.resize(train.n_annotators, dim);
  for (Eigen::Index r = 0; r < x.rows(); ++r)
    for (int c = 0; c < dim; ++c) x(r, c) = gen.normal() * scale;
  for (Eigen::Index r = 0; r < y.rows(); ++r)
    for (int c = 0; c < dim; ++c) y(r, c) = gen.normal() * scale;

  const Adjacency by_item = build_adjacency(train, /*by_item=*/true);
  const Adjacency by_annotator = build_adjacency(train, /*by_item=*/false);

  fit.objective_trace.push_back(
      objective(train, x, y, reg, unobserved_weight));
  for (int it = 0; it < iterations; ++it) {
    solve_side(x, y, by_item, reg, unobserved_weight);
    fit.objective_trace.push_back(
        objective(train, x, y, reg, unobserved_weight));
    solve_side(y, x, by_annotator, reg, unobserved_weight);
    fit.objective_trace.push_back(
        objective(train, x, y, reg, unobserved_weight));
  }
  return fit;
}

double predict(const FactorModel& model, std::int64_t item,
               std::int64_t annotator) {
  if (item < 0 || item >= model.item_factors.rows() || annotator < 0 ||
      annotator >= model.annotator_factors.rows())
    throw ConfigError("invalid-config", "prediction index out of range");
  return model.item_factors.row(item).dot(
      model.annotator_factors.row(annotator));
}

namespace {

std::pair<double, double> class_rmse(const FactorModel& model,
                                     const SparseRatingMatrix& m) {
  double sq[2] = {0.0, 0.0};
  std::int64_t n[2] = {0, 0};
  for (const auto& e : m.entries) {
    const double raw =
        model.item_factors.row(e.item).dot(model.annotator_factors.row(e.annotator));
    const double pred = std::clamp(raw, 0.0, 1.0);
    const double r = e.value - pred;
    const int cls = e.value == 1.0 ? 1 : 0;
    sq[cls] += r * r;
    ++n[cls];
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double neg = n[0] > 0 ? std::sqrt(sq[0] / static_cast<double>(n[0])) : nan;
  const double pos = n[1] > 0 ? std::sqrt(sq[1] / static_cast<double>(n[1])) : nan;
  return {pos, neg};
}

}  // namespace

FitReport error_report(const WalsFit& fit, const SparseRatingMatrix& train,
                       const SparseRatingMatrix& dev) {
  FitReport report;
  std::tie(report.pos_train, report.neg_train) = class_rmse(fit.model, train);
  std::tie(report.pos_dev, report.neg_dev) = class_rmse(fit.model, dev);
  report.objective_trace = fit.objective_trace;
  return report;
}

GridResult grid_search(const SparseRatingMatrix& train,
                       const SparseRatingMatrix& dev, std::span<const int> dims,
                       std::span<const double> regs,
                       std::span<const int> iterations, std::uint64_t seed,
                       double unobserved_weight) {
  if (dims.empty() || regs.empty() || iterations.empty())
    throw ConfigError("invalid-config", "grid axes must be non-empty");

  GridResult result;
  bool have_best = false;
  for (int d : dims) {
    for (double r : regs) {
      for (int it : iterations) {
        GridCell cell{d, r, it, 0.0, 0.0, false, ""};
        try {
          const WalsFit fit = fit_wals(train, d, r, it, unobserved_weight, seed);
          const FitReport rep = error_report(fit, train, dev);
          cell.pos_dev = rep.pos_dev;
          cell.neg_dev = rep.neg_dev;
        } catch (const Error& e) {
          cell.failed = true;
          cell.error = e.code();
        }
        const bool usable = !cell.failed && std::isfinite(cell.mean_dev());
        if (usable) {
          const auto rank = [](const GridCell& c) {
            return std::tuple(c.mean_dev(), c.dim, c.reg, c.iterations);
          };
          if (!have_best || rank(cell) < rank(result.best)) {
            result.best = cell;
            have_best = true;
          }
        }
        result.table.push_back(std::move(cell));
      }
    }
  }
  if (!have_best)
    throw DomainError("grid-exhausted", "every grid cell failed to fit");
  return result;
}

}  // namespace raterlens
