// Copyright 2026 RaterLens Authors
// SPDX-License-Identifier: Apache-2.0
//
// raterlens <subcommand> [--config FILE] [--seed N] [--out DIR]
//
// Exit codes: 0 success, 1 domain error (metric undefined for the data),
// 2 usage/config/input problems.
#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "raterlens/common.hpp"
#include "raterlens/config.hpp"
#include "raterlens/pipeline.hpp"

namespace {

using StageFn = void (*)(const raterlens::RunConfig&);

const std::map<std::string, StageFn>& stages() {
  static const std::map<std::string, StageFn> table{
      {"simulate", raterlens::run_simulate},
      {"fit", raterlens::run_fit},
      {"project", raterlens::run_project},
      {"cluster", raterlens::run_cluster},
      {"sweep", raterlens::run_sweep},
      {"irr", raterlens::run_irr},
      {"xrr", raterlens::run_xrr},
      {"delta-irr", raterlens::run_delta_irr},
      {"ingest", raterlens::run_ingest},
      {"report", raterlens::run_report},
  };
  return table;
}

const char* describe(const std::string& name) {
  static const std::map<std::string, const char*> text{
      {"simulate", "Generate a typed annotator/item population and ratings"},
      {"fit", "Factorize the rating matrix and write embeddings"},
      {"project", "Project embeddings to 2-D"},
      {"cluster", "Density-cluster embeddings and derive proxy labels"},
      {"sweep", "Score proxies against truth across replication sizes"},
      {"irr", "Krippendorff alpha for one ratings file"},
      {"xrr", "Cross-replication reliability between two rating pools"},
      {"delta-irr", "Per-annotator IRR delta between two prediction sets"},
      {"ingest", "Normalize public annotation datasets"},
      {"report", "Summarize previously written reports"},
  };
  return text.at(name);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"raterlens: annotator-subjectivity analysis pipeline"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_flag;
  std::uint64_t seed_flag = 0;
  bool seed_given = false;
  app.add_option("--config", config_path, "TOML config file");
  app.add_option("--out", out_flag, "Output directory");
  app.add_option("--seed", seed_flag, "Global seed (overrides config)")
      ->each([&](const std::string&) { seed_given = true; });

  for (const auto& [name, fn] : stages()) {
    app.add_subcommand(name, describe(name));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << std::flush;
    return 2;
  }

  try {
    raterlens::RunConfig config = raterlens::load_run_config(config_path);
    if (seed_given) config.seed = seed_flag;
    if (!out_flag.empty()) {
      config.out_dir = out_flag;
    } else if (config.out_dir.empty()) {
      if (const char* env = std::getenv("RATERLENS_OUT");
          env != nullptr && *env != '\0') {
        config.out_dir = env;
      }
    }
    const std::string sub = app.get_subcommands().front()->get_name();
    stages().at(sub)(config);
    return 0;
  } catch (const raterlens::DomainError& e) {
    std::cerr << "raterlens: " << e.code() << ": " << e.what() << "\n";
    return 1;
  } catch (const raterlens::Error& e) {
    std::cerr << "raterlens: " << e.code() << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "raterlens: internal: " << e.what() << "\n";
    return 2;
  }
}
