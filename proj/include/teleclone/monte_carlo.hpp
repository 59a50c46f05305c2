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

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "teleclone/protocols.hpp"

// Monte Carlo verification of the analytic moment propagation.
//
// Every state prepared here (vacuum, coherent, two-mode squeezed) is Gaussian
// with a positive Wigner function, every optical element is linear, and the
// measurements are homodyne, so the full experiment admits an exact classical
// sampling model: draw the input quadratures from their Gaussian law, push
// them through the pre-measurement network numerically, read the measured
// values off the measured ports, and displace the receiver modes shot by
// shot. Empirical moments of those samples must match the analytic
// mean/covariance propagation; nothing about this shortcut is approximate for
// the protocols in this library, which is what makes it a legitimate oracle.
//
// Determinism: sampling is chunked (kOracleChunk shots per chunk), each chunk
// seeded from (seed, chunk index) through splitmix64, and each chunk's
// normals come from one mt19937_64 via an explicit Box-Muller transform.
// Replaying the same spec, sample count, and seed reproduces the estimates
// bit for bit; the generator and transform are spelled out (rather than
// std::normal_distribution, whose algorithm is implementation-defined) so the
// stream is stable across standard libraries too, up to last-ulp libm
// variation in log/sin/cos.

namespace teleclone {

inline constexpr int kOracleChunk = 4096;

/// SplitMix64 mixing step; the stream seeding primitive.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed of one sampling chunk, derived so chunks are independent of how many
/// precede them.
std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk);

/// Fills out[0..count) with standard normals via Box-Muller on 53-bit
/// uniforms from the engine.
void fill_standard_normals(std::mt19937_64& engine, double* out, long count);

/// A sampling-ready flattening of one protocol build: carrier rows of the
/// tracked outputs before any displacement, measured-operator rows, and the
/// displacement plan re-indexed to tracked slots.
struct OracleTask {
  std::string name;
  InputRegistry inputs;
  // 2k x 2n: X/P row pair per tracked output, no feedforward applied.
  Eigen::MatrixXd carrier_rows;
  // 2m x 2n: X/P row pair per measurement record.
  Eigen::MatrixXd record_rows;
  // Displacement plans with target_mode holding the tracked slot (0..k-1).
  std::vector<Displacement> plan;
  std::vector<std::string> labels;   // k entries, e.g. "clone[0]"
  std::vector<ModeState> targets;    // analytic moments per tracked output
};

/// Empirical moments of one tracked output with standard errors.
struct SampleEstimate {
  std::string label;
  double mean_x = 0.0, mean_p = 0.0;
  double var_x = 0.0, var_p = 0.0, cov_xp = 0.0;
  double se_mean_x = 0.0, se_mean_p = 0.0;
  double se_var_x = 0.0, se_var_p = 0.0, se_cov_xp = 0.0;
};

struct SampleRun {
  std::string name;
  long n_samples = 0;
  std::uint64_t seed = 0;
  std::vector<SampleEstimate> estimates;
  std::vector<ModeState> targets;
};

/// One compared quantity: (estimate - target)/se.
struct CompareEntry {
  std::string label;
  std::string quantity;  // mean_x | mean_p | var_x | var_p | cov_xp
  double estimate = 0.0;
  double target = 0.0;
  double se = 0.0;
  double z = 0.0;
};

struct CompareReport {
  std::vector<CompareEntry> entries;
  double max_abs_z = 0.0;
  int worst = -1;  // index into entries
  bool pass = false;
};

/// Flattens a finished build; tracks every materialized clone, then every
/// materialized anticlone.
OracleTask oracle_task_for(const ProtocolBuild& build);

/// Samples the task. Throws for n_samples < 1000 (estimates below that are
/// too noisy to mean anything at the 5-sigma gate).
SampleRun run_samples(const OracleTask& task, long n_samples, std::uint64_t seed);

/// Builds the protocol and samples it. The baseline variant has no network
/// and is rejected.
SampleRun run_oracle(const ProtocolSpec& spec, long n_samples, std::uint64_t seed);

/// z-scores of every estimated quantity against its analytic target;
/// pass iff all |z| <= 5.
CompareReport compare(const SampleRun& run);

/// The default verification grid: variants a, a-swapped, a-generalized (N=2),
/// and b (r2 = r), each over M in {1,2,3,5} and r in {0,1}, input (2,4).
std::vector<ProtocolSpec> default_verify_grid();

/// Short parameter tag for one spec, used as the cell name in verification
/// documents, e.g. "a M=2 N=1 r=1".
std::string spec_label(const ProtocolSpec& spec);

}  // namespace teleclone
