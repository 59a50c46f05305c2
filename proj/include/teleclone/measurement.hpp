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

#include <vector>

#include "teleclone/gaussian.hpp"

namespace teleclone {

/// The pair of commuting quadratures read out by a dual homodyne detection,
/// expressed as rows over the network's input quadratures:
///
///     X_m = (X_a + X_b) / sqrt(2),     P_m = (P_a - P_b) / sqrt(2).
///
/// Both measured rows commute with each other and with every retained row,
/// which is what makes feeding them forward classical and safe.
struct MeasurementRecord {
  Eigen::RowVectorXd x_row;
  Eigen::RowVectorXd p_row;
  /// Modes consumed by this detection (two for a raw record; combined records
  /// accumulate all of them).
  std::vector<int> source_modes;
  /// Post-splitter mode whose X (resp. P) quadrature is the measured value,
  /// or -1 for combined records. The sampling oracle reads shot outcomes from
  /// these rows.
  int x_out_mode = -1;
  int p_out_mode = -1;
};

/// Mixes mode_a and mode_b on a balanced splitter and measures X on the sum
/// port and P on the difference port. Marks both modes consumed; their rows
/// stay in the transform so the measured operators remain expressible.
MeasurementRecord dual_homodyne(QuadratureTransform& transform, int mode_a, int mode_b);

/// Conditional displacement of `target` by the measured signals:
///
///     X_target += gain_x * X_m,      P_target += gain_p * P_m.
///
/// The gains multiply the balanced-detection rows above directly; protocol
/// gain values are quoted in exactly this normalization (clone-side
/// feedforward uses gain_x = -gain_p, anticlone-side uses gain_x = gain_p).
/// Throws if the target is consumed or the record does not commute with the
/// retained rows.
void feedforward(QuadratureTransform& transform, const MeasurementRecord& record,
                 int target, double gain_x, double gain_p);

/// Gain-weighted sum of two records from disjoint detections:
/// x = g1x * x_1 + g2x * x_2 and likewise for p. Feeding the result forward
/// at unit gain equals feeding both records with their own gains.
MeasurementRecord combine_records(const MeasurementRecord& first,
                                  const MeasurementRecord& second, double g1x,
                                  double g1p, double g2x, double g2p);

}  // namespace teleclone
