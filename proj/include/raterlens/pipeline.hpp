// Copyright 2026 RaterLens Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "raterlens/config.hpp"

namespace raterlens {

// File-based stage handoffs: every stage reads its inputs from and writes
// its outputs into config.out_dir (created on demand). All randomness comes
// from config.seed fanned out per stage.

void run_simulate(const RunConfig& config);
void run_fit(const RunConfig& config);
void run_project(const RunConfig& config);
void run_cluster(const RunConfig& config);
void run_sweep(const RunConfig& config);
void run_irr(const RunConfig& config);
void run_xrr(const RunConfig& config);
void run_delta_irr(const RunConfig& config);
void run_ingest(const RunConfig& config);
void run_report(const RunConfig& config);

}  // namespace raterlens
