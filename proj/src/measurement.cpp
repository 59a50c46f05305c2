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

#include "teleclone/measurement.hpp"

#include <stdexcept>
#include <unordered_set>

#include "teleclone/network.hpp"

namespace teleclone {

MeasurementRecord dual_homodyne(QuadratureTransform& transform, int mode_a, int mode_b) {
  SplitterSpec balanced;
  balanced.mode_a = mode_a;
  balanced.mode_b = mode_b;
  balanced.transmissivity = 0.5;
  balanced.convention = SplitterConvention::kGeneric;
  beam_splitter(transform, balanced);

  MeasurementRecord record;
  record.x_row = transform.x_row(mode_a);
  record.p_row = transform.p_row(mode_b);
  record.source_modes = {mode_a, mode_b};
  record.x_out_mode = mode_a;
  record.p_out_mode = mode_b;
  transform.consume(mode_a);
  transform.consume(mode_b);
  return record;
}

void feedforward(QuadratureTransform& transform, const MeasurementRecord& record,
                 int target, double gain_x, double gain_p) {
  if (!transform.retained(target)) {
    throw std::invalid_argument("feedforward: target mode is consumed");
  }
  if (record.x_row.size() != transform.matrix().cols() ||
      record.p_row.size() != transform.matrix().cols()) {
    throw std::invalid_argument("feedforward: record predates added modes");
  }
  if (transform.commutation_defect(record.x_row) > kCheckTol ||
      transform.commutation_defect(record.p_row) > kCheckTol) {
    throw std::invalid_argument(
        "feedforward: measured rows do not commute with retained rows");
  }
  transform.add_to_x_row(target, record.x_row, gain_x);
  transform.add_to_p_row(target, record.p_row, gain_p);
}

MeasurementRecord combine_records(const MeasurementRecord& first,
                                  const MeasurementRecord& second, double g1x,
                                  double g1p, double g2x, double g2p) {
  if (first.x_row.size() != second.x_row.size()) {
    throw std::invalid_argument("combine_records: record widths differ");
  }
  std::unordered_set<int> sources(first.source_modes.begin(), first.source_modes.end());
  for (int mode : second.source_modes) {
    if (!sources.insert(mode).second) {
      throw std::invalid_argument("combine_records: records share a consumed mode");
    }
  }

  MeasurementRecord combined;
  combined.x_row = g1x * first.x_row + g2x * second.x_row;
  combined.p_row = g1p * first.p_row + g2p * second.p_row;
  combined.source_modes.assign(first.source_modes.begin(), first.source_modes.end());
  combined.source_modes.insert(combined.source_modes.end(), second.source_modes.begin(),
                               second.source_modes.end());
  return combined;
}

}  // namespace teleclone
