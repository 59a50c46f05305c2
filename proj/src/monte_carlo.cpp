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

#include "teleclone/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace teleclone {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk) {
  return splitmix64(seed ^ (0x9E3779B97F4A7C15ULL * (chunk + 1)));
}

void fill_standard_normals(std::mt19937_64& engine, double* out, long count) {
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  long i = 0;
  while (i < count) {
    // 53-bit uniforms; u1 is shifted into (0, 1] so the log is finite.
    const double u1 = 1.0 - std::ldexp(static_cast<double>(engine() >> 11), -53);
    const double u2 = std::ldexp(static_cast<double>(engine() >> 11), -53);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = kTwoPi * u2;
    out[i++] = radius * std::cos(angle);
    if (i < count) out[i++] = radius * std::sin(angle);
  }
}

std::string spec_label(const ProtocolSpec& spec) {
  std::ostringstream label;
  label << variant_name(spec.variant) << " M=" << spec.clones << " N=" << spec.copies
        << " r=" << spec.squeezing;
  if (spec.variant == Variant::kB) label << " r2=" << spec.squeezing2;
  return label.str();
}

OracleTask oracle_task_for(const ProtocolBuild& build) {
  OracleTask task;
  task.name = spec_label(build.spec);
  task.inputs = build.inputs;

  std::vector<int> tracked = build.clone_modes;
  tracked.insert(tracked.end(), build.anticlone_modes.begin(), build.anticlone_modes.end());
  const int n_tracked = static_cast<int>(tracked.size());
  const int n_records = static_cast<int>(build.records.size());
  const int dim = build.pre_feedforward.dim();

  task.carrier_rows.resize(2 * n_tracked, dim);
  for (int i = 0; i < n_tracked; ++i) {
    task.carrier_rows.row(2 * i) = build.pre_feedforward.x_row(tracked[static_cast<size_t>(i)]);
    task.carrier_rows.row(2 * i + 1) =
        build.pre_feedforward.p_row(tracked[static_cast<size_t>(i)]);
  }
  task.record_rows.resize(2 * n_records, dim);
  for (int j = 0; j < n_records; ++j) {
    task.record_rows.row(2 * j) = build.records[static_cast<size_t>(j)].x_row;
    task.record_rows.row(2 * j + 1) = build.records[static_cast<size_t>(j)].p_row;
  }

  for (size_t i = 0; i < build.clone_modes.size(); ++i) {
    task.labels.push_back("clone[" + std::to_string(i) + "]");
  }
  for (size_t i = 0; i < build.anticlone_modes.size(); ++i) {
    task.labels.push_back("anticlone[" + std::to_string(i) + "]");
  }

  for (const Displacement& displacement : build.plan) {
    const auto slot = std::find(tracked.begin(), tracked.end(), displacement.target_mode);
    if (slot == tracked.end()) {
      throw std::logic_error("displacement targets an untracked mode");
    }
    Displacement remapped = displacement;
    remapped.target_mode = static_cast<int>(slot - tracked.begin());
    task.plan.push_back(std::move(remapped));
  }

  for (int mode : tracked) {
    task.targets.push_back(output_state(build.inputs, build.transform, mode));
  }
  return task;
}

SampleRun run_samples(const OracleTask& task, long n_samples, std::uint64_t seed) {
  if (n_samples < 1000) {
    throw std::invalid_argument("oracle runs need at least 1000 samples");
  }
  const int n_tracked = static_cast<int>(task.labels.size());
  const int carrier_rows = static_cast<int>(task.carrier_rows.rows());
  const int record_rows = static_cast<int>(task.record_rows.rows());
  const int rows = carrier_rows + record_rows;
  const int dim = static_cast<int>(task.carrier_rows.cols());

  Eigen::MatrixXd stacked(rows, dim);
  stacked.topRows(carrier_rows) = task.carrier_rows;
  stacked.bottomRows(record_rows) = task.record_rows;
  const Eigen::MatrixXd propagate = stacked * task.inputs.covariance_factor();
  const Eigen::VectorXd mean_shift = stacked * task.inputs.mean();

  Eigen::ArrayXd sum_x = Eigen::ArrayXd::Zero(n_tracked);
  Eigen::ArrayXd sum_p = Eigen::ArrayXd::Zero(n_tracked);
  Eigen::ArrayXd sum_xx = Eigen::ArrayXd::Zero(n_tracked);
  Eigen::ArrayXd sum_pp = Eigen::ArrayXd::Zero(n_tracked);
  Eigen::ArrayXd sum_xp = Eigen::ArrayXd::Zero(n_tracked);

  Eigen::MatrixXd normals(dim, kOracleChunk);
  Eigen::MatrixXd shots(rows, kOracleChunk);
  long done = 0;
  std::uint64_t chunk = 0;
  while (done < n_samples) {
    const int count = static_cast<int>(
        std::min<long>(kOracleChunk, n_samples - done));
    std::mt19937_64 engine(chunk_seed(seed, chunk));
    fill_standard_normals(engine, normals.data(), static_cast<long>(dim) * count);
    shots.leftCols(count).noalias() = propagate * normals.leftCols(count);
    shots.leftCols(count).colwise() += mean_shift;
    // Per-shot displacement: add the gain-scaled measured values (which sit in
    // the bottom rows) to the tracked carrier rows, exactly as the receivers
    // would after hearing the outcomes.
    for (const Displacement& displacement : task.plan) {
      for (const FeedforwardTerm& term : displacement.terms) {
        const int x_target = 2 * displacement.target_mode;
        const int x_source = carrier_rows + 2 * term.record_index;
        shots.row(x_target).head(count) += term.gain_x * shots.row(x_source).head(count);
        shots.row(x_target + 1).head(count) +=
            term.gain_p * shots.row(x_source + 1).head(count);
      }
    }
    for (int i = 0; i < n_tracked; ++i) {
      const auto xs = shots.row(2 * i).head(count);
      const auto ps = shots.row(2 * i + 1).head(count);
      sum_x[i] += xs.sum();
      sum_p[i] += ps.sum();
      sum_xx[i] += xs.squaredNorm();
      sum_pp[i] += ps.squaredNorm();
      sum_xp[i] += xs.cwiseProduct(ps).sum();
    }
    done += count;
    ++chunk;
  }

  SampleRun run;
  run.name = task.name;
  run.n_samples = n_samples;
  run.seed = seed;
  run.targets = task.targets;
  const double n = static_cast<double>(n_samples);
  for (int i = 0; i < n_tracked; ++i) {
    SampleEstimate est;
    est.label = task.labels[static_cast<size_t>(i)];
    est.mean_x = sum_x[i] / n;
    est.mean_p = sum_p[i] / n;
    est.var_x = (sum_xx[i] - n * est.mean_x * est.mean_x) / (n - 1.0);
    est.var_p = (sum_pp[i] - n * est.mean_p * est.mean_p) / (n - 1.0);
    est.cov_xp = (sum_xp[i] - n * est.mean_x * est.mean_p) / (n - 1.0);
    est.se_mean_x = std::sqrt(est.var_x / n);
    est.se_mean_p = std::sqrt(est.var_p / n);
    // Gaussian sampling errors: Var(s^2) = 2 sigma^4/(n-1) and
    // Var(s_xy) = (sigma_x^2 sigma_y^2 + sigma_xy^2)/(n-1).
    est.se_var_x = est.var_x * std::sqrt(2.0 / (n - 1.0));
    est.se_var_p = est.var_p * std::sqrt(2.0 / (n - 1.0));
    est.se_cov_xp =
        std::sqrt((est.var_x * est.var_p + est.cov_xp * est.cov_xp) / (n - 1.0));
    run.estimates.push_back(est);
  }
  return run;
}

SampleRun run_oracle(const ProtocolSpec& spec, long n_samples, std::uint64_t seed) {
  const ProtocolBuild build = build_protocol(spec);
  return run_samples(oracle_task_for(build), n_samples, seed);
}

CompareReport compare(const SampleRun& run) {
  CompareReport report;
  for (size_t i = 0; i < run.estimates.size(); ++i) {
    const SampleEstimate& est = run.estimates[i];
    const ModeState& target = run.targets[i];
    const auto add = [&](const char* quantity, double value, double expected, double se) {
      CompareEntry entry;
      entry.label = est.label;
      entry.quantity = quantity;
      entry.estimate = value;
      entry.target = expected;
      entry.se = se;
      entry.z = se > 0.0 ? (value - expected) / se
                         : (value == expected ? 0.0
                                              : std::numeric_limits<double>::infinity());
      report.entries.push_back(entry);
    };
    add("mean_x", est.mean_x, target.mean_x, est.se_mean_x);
    add("mean_p", est.mean_p, target.mean_p, est.se_mean_p);
    add("var_x", est.var_x, target.var_x(), est.se_var_x);
    add("var_p", est.var_p, target.var_p(), est.se_var_p);
    add("cov_xp", est.cov_xp, target.cov(0, 1), est.se_cov_xp);
  }
  for (size_t i = 0; i < report.entries.size(); ++i) {
    const double abs_z = std::abs(report.entries[i].z);
    if (abs_z > report.max_abs_z || report.worst < 0) {
      report.max_abs_z = abs_z;
      report.worst = static_cast<int>(i);
    }
  }
  report.pass = report.max_abs_z <= 5.0;
  return report;
}

std::vector<ProtocolSpec> default_verify_grid() {
  struct Kind {
    Variant variant;
    int copies;
  };
  const Kind kinds[] = {{Variant::kA, 1},
                        {Variant::kASwapped, 1},
                        {Variant::kAGeneralized, 2},
                        {Variant::kB, 1}};
  const int clone_counts[] = {1, 2, 3, 5};
  const double squeezings[] = {0.0, 1.0};

  std::vector<ProtocolSpec> grid;
  for (const Kind& kind : kinds) {
    for (int clones : clone_counts) {
      for (double r : squeezings) {
        ProtocolSpec spec;
        spec.variant = kind.variant;
        spec.clones = clones;
        spec.copies = kind.copies;
        spec.squeezing = r;
        spec.squeezing2 = r;
        spec.input_x = 2.0;
        spec.input_p = 4.0;
        grid.push_back(spec);
      }
    }
  }
  return grid;
}

}  // namespace teleclone
