// Copyright 2026 The Teleclone Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "teleclone/monte_carlo.hpp"
#include "teleclone/protocols.hpp"

namespace teleclone {

/// Nearest double to `value` rounded to `digits` significant decimal digits.
/// Every number a report emits passes through this first, so parsing the
/// report and re-emitting the parsed value is byte-exact.
double round_sig(double value, int digits = 12);

/// The emitted text for round_sig(value, digits) ("%.*g" form).
std::string format_sig(double value, int digits = 12);

/// Simulation report. Runs the network when the spec has finite squeezing
/// and a network variant; the baseline variant and infinite squeezing are
/// reported from the closed forms alone (closed_form_only: true, null
/// simulated fields). Keys:
///   schema, command, spec{...}, closed_form_only,
///   clones_total, materialized, clones[], anticlones[] (per-mode states),
///   predicted_clone_variance, predicted_anticlone_variance,
///   fidelity_clone, fidelity_anticlone (simulated when available),
///   fidelity_*_sim, fidelity_*_formula, discrepancy, invariants{...}.
nlohmann::ordered_json simulate_document(const ProtocolSpec& spec);

/// True when the document's invariant summary reports a failure. Closed-form
/// documents have no network invariants and never fail.
bool document_reports_failure(const nlohmann::ordered_json& document);

enum class SweepAxis { kClones, kCopies, kSqueezing, kSqueezing2 };

SweepAxis sweep_axis_from_name(const std::string& name);

struct SweepRequest {
  ProtocolSpec base;
  SweepAxis axis = SweepAxis::kClones;
  double min = 0.0;
  double max = 0.0;
  int steps = 1;
};

/// CSV sweep over one axis, header
///   variant,M,N,r,r2,F_clone_sim,F_clone_formula,F_anti_sim,F_anti_formula,F_baseline_clone
/// one row per grid point in axis order. Grid values are rounded to the
/// emitted precision before any computation, so recomputing the formula
/// columns from a parsed row reproduces the file. The simulated columns are
/// empty at infinite squeezing; the baseline column is empty when the
/// standard telecloner does not exist (M < 2N). The baseline variant is not
/// sweepable; it is the comparison column on every row.
std::string sweep_csv(const SweepRequest& request);

/// Fixed comparison table at infinite squeezing, header
///   M,F_pci_clone,F_pci_anticlone,F_baseline_clone,F_baseline_anticlone
/// with rows M = 2..10 and a final "inf" row of large-M limits.
std::string table_csv();

struct VerifyOutcome {
  nlohmann::ordered_json document;
  bool pass = false;
};

/// Runs the sampling oracle over each cell and assembles the verification
/// document (schema, command, samples, seed, per-cell z tables, overall
/// pass). Cells run concurrently; rows are emitted in grid order. Cell i
/// draws from an independent stream seeded by mixing `seed` with i, so the
/// document is a pure function of (grid, samples, seed).
VerifyOutcome run_verify(const std::vector<ProtocolSpec>& grid, long samples,
                         std::uint64_t seed);

}  // namespace teleclone
