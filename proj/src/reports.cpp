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

#include "teleclone/reports.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <future>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "teleclone/fidelity.hpp"

namespace teleclone {

namespace {

using nlohmann::ordered_json;

// Runs fn over every item on its own thread and collects results in item
// order. The first failing item's exception is rethrown after all threads
// finish.
template <typename Item, typename Fn>
auto parallel_map(const std::vector<Item>& items, Fn&& fn)
    -> std::vector<decltype(fn(items.front()))> {
  using Result = decltype(fn(items.front()));
  std::vector<std::future<Result>> futures;
  futures.reserve(items.size());
  for (const Item& item : items) {
    futures.push_back(std::async(std::launch::async, [&fn, &item] { return fn(item); }));
  }
  std::vector<Result> results;
  results.reserve(items.size());
  for (auto& future : futures) results.push_back(future.get());
  return results;
}

// Report parameters are rounded once here; everything downstream (network,
// closed forms, emitted text) sees the same value, which is what makes
// parse-and-recompute round trips exact.
ProtocolSpec normalized(ProtocolSpec spec) {
  spec.squeezing = round_sig(spec.squeezing);
  spec.squeezing2 = round_sig(spec.squeezing2);
  spec.input_x = round_sig(spec.input_x);
  spec.input_p = round_sig(spec.input_p);
  return spec;
}

bool network_computable(const ProtocolSpec& spec) {
  if (spec.variant == Variant::kBaseline) return false;
  if (!std::isfinite(spec.squeezing)) return false;
  if (spec.variant == Variant::kB && !std::isfinite(spec.squeezing2)) return false;
  return true;
}

ordered_json spec_json(const ProtocolSpec& spec) {
  ordered_json echo;
  echo["variant"] = variant_name(spec.variant);
  echo["clones"] = spec.clones;
  echo["copies"] = spec.copies;
  if (std::isfinite(spec.squeezing)) {
    echo["squeezing"] = round_sig(spec.squeezing);
  } else {
    echo["squeezing"] = "inf";
  }
  if (spec.variant == Variant::kB) {
    if (std::isfinite(spec.squeezing2)) {
      echo["squeezing2"] = round_sig(spec.squeezing2);
    } else {
      echo["squeezing2"] = "inf";
    }
  }
  echo["input"] = ordered_json{{"x", round_sig(spec.input_x)}, {"p", round_sig(spec.input_p)}};
  echo["materialize_limit"] = spec.materialize_limit;
  return echo;
}

ordered_json state_json(const ModeState& state) {
  ordered_json out;
  out["mean_x"] = round_sig(state.mean_x);
  out["mean_p"] = round_sig(state.mean_p);
  out["var_x"] = round_sig(state.var_x());
  out["var_p"] = round_sig(state.var_p());
  out["cov_xp"] = round_sig(state.cov(0, 1));
  return out;
}

}  // namespace

double round_sig(double value, int digits) {
  if (!std::isfinite(value)) return value;
  return std::strtod(format_sig(value, digits).c_str(), nullptr);
}

std::string format_sig(double value, int digits) {
  if (digits < 1 || digits > 17) {
    throw std::invalid_argument("significant digits must be in 1..17");
  }
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*g", digits, value);
  return buffer;
}

nlohmann::ordered_json simulate_document(const ProtocolSpec& raw) {
  const ProtocolSpec spec = normalized(raw);
  spec.validate();
  const bool closed_only = !network_computable(spec);

  ordered_json doc;
  doc["schema"] = 1;
  doc["command"] = "simulate";
  doc["spec"] = spec_json(spec);
  doc["closed_form_only"] = closed_only;

  if (spec.variant == Variant::kBaseline) {
    const auto [clone, anticlone] =
        baseline_standard_fidelity(spec.clones, spec.copies, spec.squeezing);
    doc["clones_total"] = spec.clones;
    doc["materialized"] = 0;
    doc["clones"] = ordered_json::array();
    doc["anticlones"] = ordered_json::array();
    doc["predicted_clone_variance"] = nullptr;
    doc["predicted_anticlone_variance"] = nullptr;
    doc["fidelity_clone"] = round_sig(clone);
    doc["fidelity_anticlone"] = round_sig(anticlone);
    doc["fidelity_clone_sim"] = nullptr;
    doc["fidelity_clone_formula"] = round_sig(clone);
    doc["fidelity_anticlone_sim"] = nullptr;
    doc["fidelity_anticlone_formula"] = round_sig(anticlone);
    doc["discrepancy"] = nullptr;
    doc["invariants"] = nullptr;
    return doc;
  }

  if (closed_only) {
    const double clone_var = closed_form_variance(spec.variant, spec.clones, spec.copies,
                                                  spec.squeezing, spec.squeezing2,
                                                  OutputKind::kClone);
    const double anti_var = closed_form_variance(spec.variant, spec.clones, spec.copies,
                                                 spec.squeezing, spec.squeezing2,
                                                 OutputKind::kAnticlone);
    const double clone_fid = closed_form_fidelity(spec.variant, spec.clones, spec.copies,
                                                  spec.squeezing, spec.squeezing2,
                                                  OutputKind::kClone);
    const double anti_fid = closed_form_fidelity(spec.variant, spec.clones, spec.copies,
                                                 spec.squeezing, spec.squeezing2,
                                                 OutputKind::kAnticlone);
    doc["clones_total"] = spec.clones;
    doc["materialized"] = 0;
    doc["clones"] = ordered_json::array();
    doc["anticlones"] = ordered_json::array();
    doc["predicted_clone_variance"] = round_sig(clone_var);
    doc["predicted_anticlone_variance"] = round_sig(anti_var);
    doc["fidelity_clone"] = round_sig(clone_fid);
    doc["fidelity_anticlone"] = round_sig(anti_fid);
    doc["fidelity_clone_sim"] = nullptr;
    doc["fidelity_clone_formula"] = round_sig(clone_fid);
    doc["fidelity_anticlone_sim"] = nullptr;
    doc["fidelity_anticlone_formula"] = round_sig(anti_fid);
    doc["discrepancy"] = nullptr;
    doc["invariants"] = nullptr;
    return doc;
  }

  const ProtocolBuild build = build_protocol(spec);
  const CloneReport& report = build.report;
  doc["clones_total"] = report.clones_total;
  doc["materialized"] = report.materialized;
  ordered_json clones = ordered_json::array();
  for (const ModeState& state : report.clone_states) clones.push_back(state_json(state));
  ordered_json anticlones = ordered_json::array();
  for (const ModeState& state : report.anticlone_states) {
    anticlones.push_back(state_json(state));
  }
  doc["clones"] = std::move(clones);
  doc["anticlones"] = std::move(anticlones);
  doc["predicted_clone_variance"] = round_sig(report.predicted_clone_var);
  doc["predicted_anticlone_variance"] = round_sig(report.predicted_anticlone_var);
  doc["fidelity_clone"] = round_sig(report.fidelity_clone_sim);
  doc["fidelity_anticlone"] = round_sig(report.fidelity_anticlone_sim);
  doc["fidelity_clone_sim"] = round_sig(report.fidelity_clone_sim);
  doc["fidelity_clone_formula"] = round_sig(report.fidelity_clone_formula);
  doc["fidelity_anticlone_sim"] = round_sig(report.fidelity_anticlone_sim);
  doc["fidelity_anticlone_formula"] = round_sig(report.fidelity_anticlone_formula);
  doc["discrepancy"] = round_sig(report.max_discrepancy);
  ordered_json invariants;
  invariants["symplectic_defect"] = round_sig(report.symplectic_defect);
  invariants["mean_transfer_defect"] = round_sig(report.mean_transfer_defect);
  invariants["exchange_defect"] = round_sig(report.exchange_defect);
  invariants["min_state_det"] = round_sig(report.min_state_det);
  invariants["negative_reflect"] = report.negative_reflect;
  invariants["pass"] = report.pass;
  doc["invariants"] = std::move(invariants);
  return doc;
}

bool document_reports_failure(const nlohmann::ordered_json& document) {
  if (!document.contains("invariants") || document["invariants"].is_null()) return false;
  return !document["invariants"].value("pass", false);
}

SweepAxis sweep_axis_from_name(const std::string& name) {
  if (name == "M") return SweepAxis::kClones;
  if (name == "N") return SweepAxis::kCopies;
  if (name == "r") return SweepAxis::kSqueezing;
  if (name == "r2") return SweepAxis::kSqueezing2;
  throw std::invalid_argument("unknown sweep axis '" + name + "' (expected M, N, r, or r2)");
}

std::string sweep_csv(const SweepRequest& request) {
  if (request.base.variant == Variant::kBaseline) {
    throw std::invalid_argument(
        "the baseline is the comparison column on every row, not a sweepable variant");
  }
  if (request.steps < 1) throw std::invalid_argument("sweep needs at least one step");
  if (!(request.min <= request.max)) throw std::invalid_argument("sweep range is empty");
  if (!std::isfinite(request.min) || !std::isfinite(request.max)) {
    throw std::invalid_argument("sweep range must be finite");
  }
  if (request.steps == 1 && request.min != request.max) {
    throw std::invalid_argument("a single-step sweep needs min == max");
  }

  const bool integer_axis =
      request.axis == SweepAxis::kClones || request.axis == SweepAxis::kCopies;
  std::vector<ProtocolSpec> cells;
  for (int i = 0; i < request.steps; ++i) {
    const double raw = request.steps == 1
                           ? request.min
                           : request.min + (request.max - request.min) * i /
                                               (request.steps - 1);
    ProtocolSpec cell = normalized(request.base);
    if (integer_axis) {
      const long long rounded = std::llround(raw);
      if (std::abs(raw - static_cast<double>(rounded)) > 1e-9) {
        throw std::invalid_argument("integer axis grid point is not an integer");
      }
      if (request.axis == SweepAxis::kClones) {
        cell.clones = static_cast<int>(rounded);
      } else {
        cell.copies = static_cast<int>(rounded);
      }
    } else if (request.axis == SweepAxis::kSqueezing) {
      cell.squeezing = round_sig(raw);
    } else {
      cell.squeezing2 = round_sig(raw);
    }
    cell.validate();
    cells.push_back(cell);
  }

  const auto rows = parallel_map(cells, [](const ProtocolSpec& cell) {
    std::string clone_sim;
    std::string anti_sim;
    if (network_computable(cell)) {
      const ProtocolBuild build = build_protocol(cell);
      if (!build.report.pass) {
        throw std::runtime_error("invariant failure in sweep cell " + spec_label(cell));
      }
      clone_sim = format_sig(build.report.fidelity_clone_sim);
      anti_sim = format_sig(build.report.fidelity_anticlone_sim);
    }
    const double clone_formula =
        closed_form_fidelity(cell.variant, cell.clones, cell.copies, cell.squeezing,
                             cell.squeezing2, OutputKind::kClone);
    const double anti_formula =
        closed_form_fidelity(cell.variant, cell.clones, cell.copies, cell.squeezing,
                             cell.squeezing2, OutputKind::kAnticlone);
    std::string baseline;
    if (cell.clones >= 2 * cell.copies) {
      baseline = format_sig(
          baseline_standard_fidelity(cell.clones, cell.copies, cell.squeezing).first);
    }
    std::ostringstream row;
    row << variant_name(cell.variant) << ',' << cell.clones << ',' << cell.copies << ','
        << format_sig(cell.squeezing) << ','
        << (cell.variant == Variant::kB ? format_sig(cell.squeezing2) : "") << ','
        << clone_sim << ',' << format_sig(clone_formula) << ',' << anti_sim << ','
        << format_sig(anti_formula) << ',' << baseline;
    return row.str();
  });

  std::ostringstream out;
  out << "variant,M,N,r,r2,F_clone_sim,F_clone_formula,F_anti_sim,F_anti_formula,"
         "F_baseline_clone\n";
  for (const std::string& row : rows) out << row << '\n';
  return out.str();
}

std::string table_csv() {
  const double inf = std::numeric_limits<double>::infinity();
  std::ostringstream out;
  out << "M,F_pci_clone,F_pci_anticlone,F_baseline_clone,F_baseline_anticlone\n";
  for (int clones = 2; clones <= 10; ++clones) {
    const double pci_clone =
        closed_form_fidelity(Variant::kA, clones, 1, inf, inf, OutputKind::kClone);
    const double pci_anti =
        closed_form_fidelity(Variant::kA, clones, 1, inf, inf, OutputKind::kAnticlone);
    const auto baseline = baseline_standard_fidelity(clones, 1, inf);
    out << clones << ',' << format_sig(pci_clone) << ',' << format_sig(pci_anti) << ','
        << format_sig(baseline.first) << ',' << format_sig(baseline.second) << '\n';
  }
  out << "inf," << format_sig(asymptotic_fidelity(Variant::kA, 1, inf, OutputKind::kClone))
      << ',' << format_sig(asymptotic_fidelity(Variant::kA, 1, inf, OutputKind::kAnticlone))
      << ','
      << format_sig(asymptotic_fidelity(Variant::kBaseline, 1, inf, OutputKind::kClone))
      << ','
      << format_sig(asymptotic_fidelity(Variant::kBaseline, 1, inf, OutputKind::kAnticlone))
      << '\n';
  return out.str();
}

VerifyOutcome run_verify(const std::vector<ProtocolSpec>& grid, long samples,
                         std::uint64_t seed) {
  if (grid.empty()) throw std::invalid_argument("verification grid is empty");
  if (samples < 1000) {
    throw std::invalid_argument("verification needs at least 1000 samples");
  }

  struct Cell {
    SampleRun run;
    CompareReport comparison;
  };
  std::vector<std::size_t> indices(grid.size());
  for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = i;
  const auto cells = parallel_map(indices, [&](std::size_t index) {
    // A distinct odd multiplier keeps the per-cell seed streams disjoint from
    // the per-chunk streams derived inside each cell.
    const std::uint64_t cell_seed =
        splitmix64(seed ^ (0xD1B54A32D192ED03ULL * (static_cast<std::uint64_t>(index) + 1)));
    Cell cell;
    cell.run = run_oracle(grid[index], samples, cell_seed);
    cell.comparison = compare(cell.run);
    return cell;
  });

  ordered_json doc;
  doc["schema"] = 1;
  doc["command"] = "verify";
  doc["samples"] = samples;
  doc["seed"] = seed;
  bool all_pass = true;
  double max_abs_z = 0.0;
  ordered_json cell_docs = ordered_json::array();
  for (const Cell& cell : cells) {
    ordered_json entry;
    entry["name"] = cell.run.name;
    entry["seed"] = cell.run.seed;
    entry["pass"] = cell.comparison.pass;
    entry["max_abs_z"] = round_sig(cell.comparison.max_abs_z);
    ordered_json checks = ordered_json::array();
    for (const CompareEntry& check : cell.comparison.entries) {
      ordered_json row;
      row["label"] = check.label;
      row["quantity"] = check.quantity;
      row["estimate"] = round_sig(check.estimate);
      row["target"] = round_sig(check.target);
      row["se"] = round_sig(check.se);
      row["z"] = round_sig(check.z);
      checks.push_back(std::move(row));
    }
    entry["checks"] = std::move(checks);
    cell_docs.push_back(std::move(entry));
    all_pass = all_pass && cell.comparison.pass;
    max_abs_z = std::max(max_abs_z, cell.comparison.max_abs_z);
  }
  doc["cells"] = std::move(cell_docs);
  doc["max_abs_z"] = round_sig(max_abs_z);
  doc["pass"] = all_pass;

  VerifyOutcome outcome;
  outcome.document = std::move(doc);
  outcome.pass = all_pass;
  return outcome;
}

}  // namespace teleclone
