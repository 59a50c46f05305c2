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

#include <vector>

#include "teleclone/fidelity.hpp"
#include "teleclone/gaussian.hpp"
#include "teleclone/measurement.hpp"

namespace teleclone {

/// Parameters of one telecloning run.
///
/// All networks here broadcast `copies` (N) pairs of a coherent state and its
/// phase conjugate into `clones` (M) approximate copies and M approximate
/// conjugate copies. The unbalanced splitter feeding the measured arm reflects
/// with signed amplitude rho = (M - N)/(M + N); keeping the sign (negative
/// when M < N) is what preserves unity mean transfer on both sides of M = N.
struct ProtocolSpec {
  Variant variant = Variant::kA;
  int clones = 2;  // M
  int copies = 1;  // N
  double squeezing = 1.0;   // r of the first (or only) EPR pair
  double squeezing2 = 1.0;  // r2 of the second pair; only kB reads it
  double input_x = 0.0;
  double input_p = 0.0;
  // Cap on materialized clone / anticlone modes per side. Outputs beyond the
  // cap stay aggregated in one retained carrier; the materialized ones are
  // exact and exchangeable with the rest, so reports stay representative at
  // very large M without building an M-mode network.
  int materialize_limit = 16;

  double reflect_amplitude() const;  // rho = (M - N)/(M + N), signed
  double reflectivity() const;       // R = rho^2
  // 1 - R, computed as 4MN/(M+N)^2 rather than by subtraction so the unity
  // gain condition sqrt(N) (1 + rho)/sqrt(M (1-R)) = 1 holds to rounding even
  // at M ~ 1e4 where 1 - rho^2 would lose digits.
  double transmissivity() const;
  double gain_clone() const;      // g1 = sqrt(2 / (M (1 - R)))
  double gain_anticlone() const;  // g2 = rho * g1, signed like rho

  /// Throws std::invalid_argument on out-of-range parameters or a
  /// count/variant combination the network does not define (kA and kB need
  /// copies == 1; kBaseline needs clones >= 2 * copies). Infinite squeezing
  /// passes validation; the network builders reject it separately because
  /// only the closed forms accept it.
  void validate() const;
};

/// One feedforward contribution to a receiver mode: which measurement record
/// and the gains applied to its X / P outcomes.
struct FeedforwardTerm {
  int record_index = 0;
  double gain_x = 0.0;
  double gain_p = 0.0;
};

/// Full displacement plan of one receiver mode.
struct Displacement {
  int target_mode = 0;
  std::vector<FeedforwardTerm> terms;
};

/// Everything the report and the fidelity comparisons need, gathered from one
/// build. clone_states / anticlone_states hold every materialized output, in
/// cascade order; they are all identical up to rounding (exchange_defect is
/// the observed spread).
struct CloneReport {
  std::vector<ModeState> clone_states;
  std::vector<ModeState> anticlone_states;
  int clones_total = 0;  // M; may exceed the materialized count
  int materialized = 0;  // per side
  double predicted_clone_var = 0.0;
  double predicted_anticlone_var = 0.0;
  double fidelity_clone_sim = 0.0;
  double fidelity_clone_formula = 0.0;
  double fidelity_anticlone_sim = 0.0;
  double fidelity_anticlone_formula = 0.0;
  // Worst |simulated - closed form| over both variances and both fidelities.
  double max_discrepancy = 0.0;
  double symplectic_defect = 0.0;
  // Worst |output mean - target mean| component; targets are (x, p) for
  // clones and (x, -p) for anticlones.
  double mean_transfer_defect = 0.0;
  // Worst spread of any moment across the materialized states of one kind.
  double exchange_defect = 0.0;
  double min_state_det = 0.0;
  bool negative_reflect = false;  // M < N
  bool pass = false;
};

/// A completed network build. `pre_feedforward` has all optics applied and
/// both measurements performed but no displacement; the Monte Carlo oracle
/// replays measurement outcomes and the `plan` displacements per shot from
/// exactly that state, independent of the composed rows in `transform`.
struct ProtocolBuild {
  ProtocolSpec spec;
  InputRegistry inputs;
  QuadratureTransform pre_feedforward;
  QuadratureTransform transform;
  std::vector<MeasurementRecord> records;
  std::vector<Displacement> plan;
  std::vector<int> clone_modes;
  std::vector<int> anticlone_modes;
  CloneReport report;
};

/// Single-EPR network, copies == 1: remote clones from the cascaded EPR half,
/// local anticlones from the cascaded transmitted port of the unbalanced
/// splitter, dual homodyne on (reflected port, plain input).
ProtocolBuild build_variant_a(const ProtocolSpec& spec);

/// Same network with the plain and conjugate inputs swapped, so the remote
/// side emits anticlones and the local side clones. Accepts copies >= 1.
ProtocolBuild build_variant_a_swapped(const ProtocolSpec& spec);

/// copies >= 1: each input arm is first concentrated into its balanced sum,
/// then the single-pair network runs with rho = (M - N)/(M + N).
ProtocolBuild build_variant_a_generalized(const ProtocolSpec& spec);

/// Two-EPR network, copies == 1: both output sets are remote. Two senders
/// measure independently and every receiver combines both outcome pairs.
ProtocolBuild build_variant_b(const ProtocolSpec& spec);

/// Dispatch on spec.variant. kBaseline has no network and throws; its
/// fidelities come from baseline_standard_fidelity.
ProtocolBuild build_protocol(const ProtocolSpec& spec);

}  // namespace teleclone
