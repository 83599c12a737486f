// Copyright 2026 RaterLens Authors
// SPDX-License-Identifier: Apache-2.0
#include "raterlens/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "raterlens/agreement.hpp"
#include "raterlens/cluster.hpp"
#include "raterlens/common.hpp"
#include "raterlens/csv.hpp"
#include "raterlens/evalsweep.hpp"
#include "raterlens/ingest.hpp"
#include "raterlens/projection.hpp"
#include "raterlens/rng.hpp"
#include "raterlens/simgen.hpp"
#include "raterlens/svg.hpp"
#include "raterlens/wals.hpp"

namespace raterlens {
namespace {

namespace fs = std::filesystem;

std::string out_dir(const RunConfig& config) {
  const std::string dir = config.out_dir.empty() ? "." : config.out_dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw IoError("output-dir",
                  "cannot create output directory " + dir + ": " + ec.message());
  }
  return dir;
}

std::string join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

void expect_header(const std::vector<std::string>& got,
                   const std::vector<std::string>& want,
                   const std::string& path) {
  if (got != want) {
    std::string expected;
    for (const auto& w : want) {
      if (!expected.empty()) expected += ',';
      expected += w;
    }
    throw IoError("bad-header", path + ": expected header '" + expected + "'");
  }
}

std::vector<AnnotationRecord> read_annotations(const std::string& path) {
  csv::Reader reader(path);
  std::vector<std::string> row;
  if (!reader.next(row)) {
    throw IoError("empty-file", path + ": no header row");
  }
  expect_header(row, {"item_id", "annotator_id", "value"}, path);
  std::vector<AnnotationRecord> records;
  while (reader.next(row)) {
    if (row.size() != 3) {
      throw IoError("bad-row", path + ":" + std::to_string(reader.line_number()) +
                                   ": expected 3 fields");
    }
    AnnotationRecord r;
    r.item_id = csv::parse_int(row[0]);
    r.annotator_id = csv::parse_int(row[1]);
    const std::int64_t v = csv::parse_int(row[2]);
    if (v != 0 && v != 1) {
      throw IoError("bad-row", path + ":" + std::to_string(reader.line_number()) +
                                   ": value must be 0 or 1");
    }
    r.value = static_cast<std::uint8_t>(v);
    records.push_back(r);
  }
  return records;
}

struct PopulationFile {
  std::int64_t n_annotators = 0;
  std::int64_t n_items = 0;
  std::vector<std::uint8_t> item_truth;  // by item id
};

PopulationFile read_population(const std::string& path) {
  csv::Reader reader(path);
  std::vector<std::string> row;
  if (!reader.next(row)) {
    throw IoError("empty-file", path + ": no header row");
  }
  expect_header(row, {"kind", "id", "class", "true_label"}, path);
  PopulationFile pop;
  std::map<std::int64_t, std::uint8_t> truth;
  while (reader.next(row)) {
    if (row.size() != 4) {
      throw IoError("bad-row", path + ":" + std::to_string(reader.line_number()) +
                                   ": expected 4 fields");
    }
    if (row[0] == "annotator") {
      ++pop.n_annotators;
    } else if (row[0] == "item") {
      ++pop.n_items;
      const std::int64_t label = csv::parse_int(row[3]);
      truth[csv::parse_int(row[1])] = static_cast<std::uint8_t>(label);
    } else {
      throw IoError("bad-row", path + ":" + std::to_string(reader.line_number()) +
                                   ": kind must be item or annotator");
    }
  }
  pop.item_truth.resize(static_cast<std::size_t>(pop.n_items), 0);
  for (const auto& [id, label] : truth) {
    if (id < 0 || id >= pop.n_items) {
      throw IoError("bad-row", path + ": item id " + std::to_string(id) +
                                   " outside [0, " + std::to_string(pop.n_items) +
                                   ")");
    }
    pop.item_truth[static_cast<std::size_t>(id)] = label;
  }
  return pop;
}

EmbeddingSet read_embeddings(const std::string& path) {
  csv::Reader reader(path);
  std::vector<std::string> header;
  if (!reader.next(header)) {
    throw IoError("empty-file", path + ": no header row");
  }
  if (header.size() < 3 || header[0] != "kind" || header[1] != "id") {
    throw IoError("bad-header", path + ": expected header kind,id,f0,...");
  }
  const std::size_t dim = header.size() - 2;
  std::vector<std::vector<double>> rows;
  EmbeddingSet set;
  std::vector<std::string> row;
  while (reader.next(row)) {
    if (row.size() != header.size()) {
      throw IoError("bad-row", path + ":" + std::to_string(reader.line_number()) +
                                   ": expected " + std::to_string(header.size()) +
                                   " fields");
    }
    if (row[0] == "item") {
      set.kinds.push_back(RowKind::Item);
    } else if (row[0] == "annotator") {
      set.kinds.push_back(RowKind::Annotator);
    } else {
      throw IoError("bad-row", path + ":" + std::to_string(reader.line_number()) +
                                   ": kind must be item or annotator");
    }
    set.ids.push_back(csv::parse_int(row[1]));
    std::vector<double> values(dim);
    for (std::size_t f = 0; f < dim; ++f) {
      values[f] = csv::parse_double(row[2 + f]);
    }
    rows.push_back(std::move(values));
  }
  set.values.resize(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t f = 0; f < dim; ++f) {
      set.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(f)) =
          rows[i][f];
    }
  }
  return set;
}

EmbeddingSet read_projection_file(const std::string& path) {
  csv::Reader reader(path);
  std::vector<std::string> header;
  if (!reader.next(header)) {
    throw IoError("empty-file", path + ": no header row");
  }
  expect_header(header, {"kind", "id", "x", "y"}, path);
  EmbeddingSet set;
  std::vector<std::array<double, 2>> rows;
  std::vector<std::string> row;
  while (reader.next(row)) {
    if (row.size() != 4) {
      throw IoError("bad-row", path + ":" + std::to_string(reader.line_number()) +
                                   ": expected 4 fields");
    }
    set.kinds.push_back(row[0] == "item" ? RowKind::Item : RowKind::Annotator);
    set.ids.push_back(csv::parse_int(row[1]));
    rows.push_back({csv::parse_double(row[2]), csv::parse_double(row[3])});
  }
  set.values.resize(static_cast<Eigen::Index>(rows.size()), 2);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    set.values(static_cast<Eigen::Index>(i), 0) = rows[i][0];
    set.values(static_cast<Eigen::Index>(i), 1) = rows[i][1];
  }
  return set;
}

RatingTable read_ratings(const std::string& path) {
  csv::Reader reader(path);
  std::vector<std::string> row;
  if (!reader.next(row)) {
    throw IoError("empty-file", path + ": no header row");
  }
  expect_header(row, {"unit_id", "rater_id", "category"}, path);
  RatingTable table;
  while (reader.next(row)) {
    if (row.size() != 3) {
      throw IoError("bad-row", path + ":" + std::to_string(reader.line_number()) +
                                   ": expected 3 fields");
    }
    table.add(row[0], row[1], static_cast<int>(csv::parse_int(row[2])));
  }
  return table;
}

std::vector<PredictionPair> read_predictions(const std::string& path) {
  csv::Reader reader(path);
  std::vector<std::string> row;
  if (!reader.next(row)) {
    throw IoError("empty-file", path + ": no header row");
  }
  expect_header(row, {"annotator_id", "comment_id", "human_label", "model_label"},
                path);
  std::vector<PredictionPair> pairs;
  while (reader.next(row)) {
    if (row.size() != 4) {
      throw IoError("bad-row", path + ":" + std::to_string(reader.line_number()) +
                                   ": expected 4 fields");
    }
    pairs.push_back({row[0], row[1], static_cast<int>(csv::parse_int(row[2])),
                     static_cast<int>(csv::parse_int(row[3]))});
  }
  return pairs;
}

std::string band_text(const BandLabel& label) {
  std::string text = to_string(label.band);
  if (label.over_unity) text += " (over unity)";
  return text;
}

std::string stem(const std::string& path) {
  return fs::path(path).stem().string();
}

std::string pick(const std::string& configured, const std::string& dir,
                 const std::string& fallback_name) {
  return configured.empty() ? join(dir, fallback_name) : configured;
}

std::string sanitize(const std::string& name) {
  std::string out;
  for (const char c : name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '_' || c == '-';
    out.push_back(ok ? c : '-');
  }
  return out.empty() ? "all" : out;
}

// Rebuild a sparse matrix from annotation records; dimensions from
// population.csv when available, otherwise from the largest referenced id.
SparseRatingMatrix matrix_from_records(
    const std::vector<AnnotationRecord>& records, const std::string& dir) {
  SparseRatingMatrix matrix;
  const std::string pop_path = join(dir, "population.csv");
  if (fs::exists(pop_path)) {
    const PopulationFile pop = read_population(pop_path);
    matrix.n_items = pop.n_items;
    matrix.n_annotators = pop.n_annotators;
  } else {
    for (const AnnotationRecord& r : records) {
      matrix.n_items = std::max(matrix.n_items, r.item_id + 1);
      matrix.n_annotators = std::max(matrix.n_annotators, r.annotator_id + 1);
    }
  }
  matrix.entries.reserve(records.size());
  for (const AnnotationRecord& r : records) {
    matrix.entries.push_back({static_cast<std::int32_t>(r.item_id),
                              static_cast<std::int32_t>(r.annotator_id),
                              static_cast<double>(r.value), 1.0});
  }
  validate(matrix);
  return matrix;
}

}  // namespace

void run_simulate(const RunConfig& config) {
  const std::string dir = out_dir(config);
  SimConfig sim = config.sim;
  sim.seed = config.seed;
  const Population pop = build_population(sim);
  const auto full = generate_annotations(pop.annotators, pop.items, sim.seed);
  const auto records = downsample_replication(full, sim.replication, sim.seed);

  {
    csv::Writer w(join(dir, "population.csv"));
    w.row({"kind", "id", "class", "true_label"});
    for (const AnnotatorProfile& a : pop.annotators) {
      w.row({"annotator", csv::format_int(a.id), to_string(a.skill), ""});
    }
    for (const ItemProfile& item : pop.items) {
      w.row({"item", csv::format_int(item.id), to_string(item.difficulty),
             csv::format_int(item.true_label)});
    }
  }
  {
    csv::Writer w(join(dir, "annotations.csv"));
    w.row({"item_id", "annotator_id", "value"});
    for (const AnnotationRecord& r : records) {
      w.row({csv::format_int(r.item_id), csv::format_int(r.annotator_id),
             csv::format_int(r.value)});
    }
  }
}

void run_fit(const RunConfig& config) {
  const std::string dir = out_dir(config);
  const auto records = read_annotations(join(dir, "annotations.csv"));
  const SparseRatingMatrix matrix = matrix_from_records(records, dir);

  const auto [train, dev] = split_train_dev(
      matrix, config.wals_dev_fraction, rng::stage_seed(config.seed, "fit.split"));
  const std::uint64_t fit_seed = rng::stage_seed(config.seed, "fit.wals");
  const GridResult grid =
      grid_search(train, dev, config.wals_dims, config.wals_regs,
                  config.wals_iterations, fit_seed, config.wals_unobserved_weight);
  const WalsFit fit =
      fit_wals(train, grid.best.dim, grid.best.reg, grid.best.iterations,
               config.wals_unobserved_weight, fit_seed);
  const FitReport report = error_report(fit, train, dev);

  {
    csv::Writer w(join(dir, "fit_report.csv"));
    w.row({"metric", "value"});
    w.row({"pos_train", csv::format_double(report.pos_train)});
    w.row({"neg_train", csv::format_double(report.neg_train)});
    w.row({"pos_dev", csv::format_double(report.pos_dev)});
    w.row({"neg_dev", csv::format_double(report.neg_dev)});
  }
  {
    csv::Writer w(join(dir, "objective_trace.csv"));
    w.row({"half_step", "objective"});
    for (std::size_t i = 0; i < report.objective_trace.size(); ++i) {
      w.row({csv::format_int(static_cast<std::int64_t>(i)),
             csv::format_double(report.objective_trace[i])});
    }
  }
  {
    csv::Writer w(join(dir, "embeddings.csv"));
    std::vector<std::string> header{"kind", "id"};
    for (int f = 0; f < grid.best.dim; ++f) {
      header.push_back("f" + std::to_string(f));
    }
    w.row(header);
    const auto emit = [&](const char* kind, const Eigen::MatrixXd& factors) {
      for (Eigen::Index i = 0; i < factors.rows(); ++i) {
        std::vector<std::string> row{kind, csv::format_int(i)};
        for (Eigen::Index f = 0; f < factors.cols(); ++f) {
          row.push_back(csv::format_double(factors(i, f)));
        }
        w.row(row);
      }
    };
    emit("item", fit.model.item_factors);
    emit("annotator", fit.model.annotator_factors);
  }
}

void run_project(const RunConfig& config) {
  const std::string dir = out_dir(config);
  const EmbeddingSet raw = read_embeddings(join(dir, "embeddings.csv"));
  const EmbeddingSet pre = preprocess(raw, config.preprocess);
  ProjectionParams params = config.projection;
  params.seed = rng::stage_seed(config.seed, "projection");
  const Eigen::MatrixX2d points = project_2d(pre, params);

  {
    csv::Writer w(join(dir, "projection.csv"));
    w.row({"kind", "id", "x", "y"});
    for (std::size_t i = 0; i < pre.ids.size(); ++i) {
      const auto row = static_cast<Eigen::Index>(i);
      w.row({pre.kinds[i] == RowKind::Item ? "item" : "annotator",
             csv::format_int(pre.ids[i]), csv::format_double(points(row, 0)),
             csv::format_double(points(row, 1))});
    }
  }
  {
    svg::Series items{"items", "#4682b4", {}, false, svg::Marker::Circle};
    svg::Series annotators{"annotators", "#ff8c00", {}, false,
                           svg::Marker::Square};
    for (std::size_t i = 0; i < pre.ids.size(); ++i) {
      const auto row = static_cast<Eigen::Index>(i);
      auto& series = pre.kinds[i] == RowKind::Item ? items : annotators;
      series.points.push_back({points(row, 0), points(row, 1)});
    }
    svg::write_chart(join(dir, "projection.svg"), "2-D projection", "x", "y",
                     {items, annotators});
  }
}

void run_cluster(const RunConfig& config) {
  const std::string dir = out_dir(config);
  EmbeddingSet set;
  if (config.cluster.space == ClusterSpace::Embedding) {
    set = preprocess(read_embeddings(join(dir, "embeddings.csv")),
                     config.preprocess);
  } else {
    set = read_projection_file(join(dir, "projection.csv"));
  }

  std::vector<std::size_t> item_rows;
  std::vector<std::size_t> annotator_rows;
  for (std::size_t i = 0; i < set.kinds.size(); ++i) {
    (set.kinds[i] == RowKind::Item ? item_rows : annotator_rows).push_back(i);
  }
  const auto slice = [&](const std::vector<std::size_t>& rows) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()),
                        set.values.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      out.row(static_cast<Eigen::Index>(i)) =
          set.values.row(static_cast<Eigen::Index>(rows[i]));
    }
    return out;
  };

  const ClusterResult item_clusters =
      fit_density_clusters(slice(item_rows), config.cluster);
  const ClusterResult annotator_clusters =
      fit_density_clusters(slice(annotator_rows), config.cluster);
  if (item_clusters.all_noise) {
    std::cerr << "warning: fewer item points than min_cluster_size; "
                 "all items are noise\n";
  }
  if (annotator_clusters.all_noise) {
    std::cerr << "warning: fewer annotator points than min_cluster_size; "
                 "all annotators are noise\n";
  }

  std::vector<std::int64_t> item_ids;
  item_ids.reserve(item_rows.size());
  for (const std::size_t r : item_rows) item_ids.push_back(set.ids[r]);
  const auto records = read_annotations(join(dir, "annotations.csv"));
  const ProxyLabels proxy =
      derive_binary_labels(item_clusters, item_ids, records);

  csv::Writer w(join(dir, "clusters.csv"));
  w.row({"kind", "id", "cluster", "proxy_label", "proxy_score"});
  for (std::size_t i = 0; i < item_rows.size(); ++i) {
    w.row({"item", csv::format_int(item_ids[i]),
           csv::format_int(item_clusters.labels[i]),
           csv::format_int(proxy.labels[i]),
           csv::format_double(proxy.scores[i])});
  }
  for (std::size_t i = 0; i < annotator_rows.size(); ++i) {
    w.row({"annotator", csv::format_int(set.ids[annotator_rows[i]]),
           csv::format_int(annotator_clusters.labels[i]), "", ""});
  }
}

void run_sweep(const RunConfig& config) {
  const std::string dir = out_dir(config);
  const SweepReport report = run_replication_sweep(config.sim, config.sweep);

  {
    csv::Writer w(join(dir, "sweep_report.csv"));
    w.row({"seed", "replication", "proxy", "auc", "average_precision",
           "status"});
    for (const SweepCell& cell : report.cells) {
      w.row({std::to_string(cell.seed), csv::format_int(cell.replication),
             to_string(cell.proxy), csv::format_double(cell.auc),
             csv::format_double(cell.average_precision),
             cell.failed ? "failed:" + cell.error : "ok"});
    }
  }
  for (const SweepCell& cell : report.cells) {
    if (cell.failed) continue;
    const std::string name = "pr_points_" + std::to_string(cell.seed) + "_" +
                             std::to_string(cell.replication) + "_" +
                             to_string(cell.proxy) + ".csv";
    csv::Writer w(join(dir, name));
    w.row({"recall", "precision"});
    for (const auto& p : cell.pr.points) {
      w.row({csv::format_double(p[0]), csv::format_double(p[1])});
    }
  }

  // Fig.-4-style overlay: both proxies at the smallest replication size of
  // the first seed.
  const std::int64_t smallest = config.sweep.replication_sizes.back();
  const std::uint64_t first_seed = config.sweep.seeds.front();
  std::vector<svg::Series> series;
  const char* colors[] = {"#4682b4", "#ff8c00"};
  std::size_t color_at = 0;
  for (const SweepCell& cell : report.cells) {
    if (cell.seed != first_seed || cell.replication != smallest || cell.failed) {
      continue;
    }
    svg::Series s;
    s.name = to_string(cell.proxy);
    s.color = colors[color_at++ % 2];
    s.points = cell.pr.points;
    s.line = true;
    s.marker = svg::Marker::None;
    series.push_back(std::move(s));
  }
  if (!series.empty()) {
    svg::write_chart(join(dir, "pr_curves.svg"),
                     "PR at replication " + std::to_string(smallest), "recall",
                     "precision", series);
  }
}

void run_irr(const RunConfig& config) {
  const std::string dir = out_dir(config);
  const std::string path = pick(config.agreement.ratings, dir, "ratings.csv");
  const RatingTable table = read_ratings(path);
  const AgreementScore score = krippendorff_alpha(table);

  csv::Writer w(join(dir, "agreement_report.csv"));
  w.row({"metric", "scope", "value", "n_units", "band"});
  w.row({"krippendorff_alpha", stem(path), csv::format_double(score.value),
         csv::format_int(score.n_units), band_text(interpret_band(score.value))});
}

void run_xrr(const RunConfig& config) {
  const std::string dir = out_dir(config);
  const std::string path_x =
      pick(config.agreement.ratings_x, dir, "ratings_x.csv");
  const std::string path_y =
      pick(config.agreement.ratings_y, dir, "ratings_y.csv");
  const RatingTable x = read_ratings(path_x);
  const RatingTable y = read_ratings(path_y);

  const AgreementScore cross = xrr(x, y);
  csv::Writer w(join(dir, "agreement_report.csv"));
  w.row({"metric", "scope", "value", "n_units", "band"});
  w.row({"xrr", "cross", csv::format_double(cross.value),
         csv::format_int(cross.n_units), band_text(interpret_band(cross.value))});
  const auto try_row = [&](const char* metric, const char* scope, auto&& fn) {
    try {
      const AgreementScore s = fn();
      w.row({metric, scope, csv::format_double(s.value),
             csv::format_int(s.n_units), band_text(interpret_band(s.value))});
    } catch (const DomainError& e) {
      std::cerr << "warning: " << metric << " (" << scope
                << ") undefined: " << e.what() << "\n";
    }
  };
  try_row("krippendorff_alpha", "pool_x", [&] { return krippendorff_alpha(x); });
  try_row("krippendorff_alpha", "pool_y", [&] { return krippendorff_alpha(y); });
  try_row("normalized_xrr", "cross", [&] { return normalized_xrr(x, y); });
}

void run_delta_irr(const RunConfig& config) {
  const std::string dir = out_dir(config);
  const auto soft = read_predictions(
      pick(config.agreement.soft, dir, "predictions_soft.csv"));
  const auto fewshot = read_predictions(
      pick(config.agreement.fewshot, dir, "predictions_fewshot.csv"));
  const DeltaIrrReport report = delta_irr(soft, fewshot);

  csv::Writer w(join(dir, "agreement_report.csv"));
  w.row({"metric", "scope", "value", "n_units", "band"});
  for (const AnnotatorDelta& d : report.per_annotator) {
    w.row({"delta_irr", d.annotator_id, csv::format_double(d.delta),
           csv::format_int(d.n_units), ""});
  }
  w.row({"delta_irr_mean", "all", csv::format_double(report.mean_delta),
         csv::format_int(report.n_annotators), ""});
  for (const auto& [annotator, reason] : report.excluded) {
    w.row({"delta_irr_excluded", annotator, "nan", "0", reason});
  }
}

void run_ingest(const RunConfig& config) {
  if (config.ingests.empty()) {
    throw ConfigError("invalid-config",
                      "ingest needs at least one [ingest.<dataset>] section");
  }
  const std::string dir = out_dir(config);

  std::vector<LoadResult> loads;
  std::vector<SampleResult> samples;
  for (const IngestEntry& entry : config.ingests) {
    LoadResult load = load_annotations(entry.path, entry.schema);
    SampleResult sample;
    if (entry.sample_k > 0) {
      sample = sample_raters(load.annotations, entry.sample_k, config.seed);
    } else {
      sample.annotations = load.annotations;
    }
    loads.push_back(std::move(load));
    samples.push_back(std::move(sample));
  }

  if (config.ingest_common_only && samples.size() >= 2) {
    std::vector<std::vector<UnifiedAnnotation>> pools;
    pools.reserve(samples.size());
    for (const SampleResult& s : samples) pools.push_back(s.annotations);
    const std::set<std::string> common = intersect_common(pools);
    if (common.empty()) {
      std::cerr << "warning: datasets share no comment ids\n";
    }
    for (SampleResult& s : samples) {
      std::erase_if(s.annotations, [&](const UnifiedAnnotation& a) {
        return common.count(a.comment_id) == 0;
      });
    }
  }

  {
    csv::Writer w(join(dir, "rejects.csv"));
    w.row({"dataset", "line", "reason", "detail"});
    for (std::size_t i = 0; i < loads.size(); ++i) {
      for (const RejectRecord& r : loads[i].rejects) {
        w.row({config.ingests[i].schema.tag,
               csv::format_int(static_cast<std::int64_t>(r.line)), r.reason,
               r.detail});
      }
    }
  }
  {
    csv::Writer w(join(dir, "shortfall.csv"));
    w.row({"dataset", "comment_id"});
    for (std::size_t i = 0; i < samples.size(); ++i) {
      for (const std::string& comment : samples[i].shortfall) {
        w.row({config.ingests[i].schema.tag, comment});
      }
    }
  }

  for (std::size_t i = 0; i < samples.size(); ++i) {
    const std::string& tag = config.ingests[i].schema.tag;
    // (group, unit, rater) -> category; first occurrence wins on duplicates.
    std::map<std::string, std::map<std::pair<std::string, std::string>, int>>
        groups;
    std::int64_t duplicates = 0;
    for (const UnifiedAnnotation& a : samples[i].annotations) {
      auto& group = groups[a.group];
      const auto [it, fresh] =
          group.emplace(std::pair(a.comment_id, a.rater_id),
                        static_cast<int>(a.binary_value));
      if (!fresh) ++duplicates;
    }
    if (duplicates > 0) {
      std::cerr << "warning: " << tag << ": dropped " << duplicates
                << " duplicate (comment, rater) ratings\n";
    }
    for (const auto& [group, ratings] : groups) {
      const std::string name = "ratings_" + sanitize(tag) + "_" +
                               sanitize(group.empty() ? "all" : group) + ".csv";
      csv::Writer w(join(dir, name));
      w.row({"unit_id", "rater_id", "category"});
      for (const auto& [key, category] : ratings) {
        w.row({key.first, key.second, csv::format_int(category)});
      }
    }
  }
}

void run_report(const RunConfig& config) {
  const std::string dir = out_dir(config);
  const std::string agreement_path = join(dir, "agreement_report.csv");
  const std::string fit_path = join(dir, "fit_report.csv");
  const std::string sweep_path = join(dir, "sweep_report.csv");

  struct SummaryRow {
    std::string source, metric, scope, value, band;
  };
  std::vector<SummaryRow> rows;

  if (fs::exists(agreement_path)) {
    csv::Reader reader(agreement_path);
    std::vector<std::string> row;
    if (!reader.next(row)) {
      throw IoError("empty-file", agreement_path + ": no header row");
    }
    expect_header(row, {"metric", "scope", "value", "n_units", "band"},
                  agreement_path);
    while (reader.next(row)) {
      rows.push_back({"agreement", row[0], row[1], row[2], row[4]});
    }
  }
  if (fs::exists(fit_path)) {
    csv::Reader reader(fit_path);
    std::vector<std::string> row;
    if (!reader.next(row)) {
      throw IoError("empty-file", fit_path + ": no header row");
    }
    expect_header(row, {"metric", "value"}, fit_path);
    while (reader.next(row)) {
      rows.push_back({"wals", row[0], "", row[1], ""});
    }
  }
  if (fs::exists(sweep_path)) {
    csv::Reader reader(sweep_path);
    std::vector<std::string> row;
    if (!reader.next(row)) {
      throw IoError("empty-file", sweep_path + ": no header row");
    }
    expect_header(
        row, {"seed", "replication", "proxy", "auc", "average_precision",
              "status"},
        sweep_path);
    std::int64_t failed = 0;
    while (reader.next(row)) {
      if (row[5] != "ok") {
        ++failed;
        continue;
      }
      const std::string scope =
          "seed=" + row[0] + ",replication=" + row[1] + ",proxy=" + row[2];
      rows.push_back({"sweep", "auc", scope, row[3], ""});
      rows.push_back({"sweep", "average_precision", scope, row[4], ""});
    }
    if (failed > 0) {
      rows.push_back({"sweep", "failed_cells", "all", csv::format_int(failed),
                      ""});
    }
  }

  if (rows.empty()) {
    throw DomainError("empty-report",
                      "no reports found in " + dir +
                          "; run simulate/fit/sweep/irr first");
  }
  csv::Writer w(join(dir, "summary.csv"));
  w.row({"source", "metric", "scope", "value", "band"});
  for (const SummaryRow& r : rows) {
    w.row({r.source, r.metric, r.scope, r.value, r.band});
  }
}

}  // namespace raterlens
