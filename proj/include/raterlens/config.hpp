// Copyright 2026 RaterLens Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "raterlens/cluster.hpp"
#include "raterlens/evalsweep.hpp"
#include "raterlens/ingest.hpp"
#include "raterlens/projection.hpp"
#include "raterlens/simgen.hpp"
#include "raterlens/toml.hpp"
#include "raterlens/wals.hpp"

namespace raterlens {

struct IngestEntry {
  DatasetSchema schema;
  std::string path;
  std::int64_t sample_k = 0;  // 0 = keep every rater
};

// Paths for the agreement subcommands; empty = default file in the output
// directory.
struct AgreementPaths {
  std::string ratings;
  std::string ratings_x;
  std::string ratings_y;
  std::string soft;
  std::string fewshot;
};

struct RunConfig {
  SimConfig sim;

  // WALS grid for `fit`; single-element lists mean a plain fit. The sweep
  // uses the first element of each list.
  std::vector<int> wals_dims{3};
  std::vector<double> wals_regs{0.1};
  std::vector<int> wals_iterations{5};
  double wals_dev_fraction = 0.1;
  double wals_unobserved_weight = 0.0;

  PreprocessMode preprocess = PreprocessMode::Whiten;
  ProjectionParams projection;
  ClusterParams cluster;
  SweepConfig sweep;

  std::vector<IngestEntry> ingests;
  bool ingest_common_only = false;

  AgreementPaths agreement;

  std::uint64_t seed = 0;
  std::string out_dir;  // resolved by the CLI (flag > config > env > ".")
};

// Parse and map a TOML config; empty path returns the defaults above.
RunConfig load_run_config(const std::string& path);
RunConfig config_from_table(const toml::Table& table);

}  // namespace raterlens
