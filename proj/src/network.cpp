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

#include "teleclone/network.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace teleclone {

SplitterSpec SplitterSpec::bs0(int a, int b, double reflect_amplitude) {
  if (!std::isfinite(reflect_amplitude) || std::abs(reflect_amplitude) > 1.0) {
    throw std::invalid_argument("bs0: reflected amplitude must lie in [-1, 1]");
  }
  SplitterSpec spec;
  spec.mode_a = a;
  spec.mode_b = b;
  spec.transmissivity = 1.0 - reflect_amplitude * reflect_amplitude;
  spec.convention = SplitterConvention::kBs0;
  spec.reflect_sign = reflect_amplitude < 0.0 ? -1 : 1;
  return spec;
}

Eigen::Matrix2d SplitterSpec::mixing() const {
  if (!std::isfinite(transmissivity) || transmissivity < 0.0 || transmissivity > 1.0) {
    throw std::invalid_argument("beam splitter transmissivity must lie in [0, 1]");
  }
  const double ta = std::sqrt(transmissivity);
  const double ra = std::sqrt(1.0 - transmissivity);
  Eigen::Matrix2d m;
  switch (convention) {
    case SplitterConvention::kGeneric:
    case SplitterConvention::kCascade:
      m << ta, ra, ra, -ta;
      break;
    case SplitterConvention::kBs0: {
      const double rho = reflect_sign * ra;
      m << ta, -rho, rho, ta;
      break;
    }
  }
  return m;
}

void beam_splitter(QuadratureTransform& transform, const SplitterSpec& spec) {
  transform.mix_pair(spec.mode_a, spec.mode_b, spec.mixing());
}

std::vector<int> splitter_cascade(InputRegistry& inputs, QuadratureTransform& transform,
                                  int source, int clones) {
  return splitter_cascade_prefix(inputs, transform, source, clones, clones);
}

std::vector<int> splitter_cascade_prefix(InputRegistry& inputs,
                                         QuadratureTransform& transform, int source,
                                         int clones, int max_outputs) {
  if (clones < 1) throw std::invalid_argument("splitter_cascade: need at least one clone");
  if (max_outputs < 1) throw std::invalid_argument("splitter_cascade: need at least one output");
  if (inputs.mode_count() != transform.mode_count()) {
    throw std::invalid_argument("splitter_cascade: registry and transform disagree on size");
  }
  if (!transform.retained(source)) {
    throw std::invalid_argument("splitter_cascade: source mode is consumed");
  }

  const int materialized = std::min(clones, max_outputs);
  const bool full = materialized == clones;
  const int steps = full ? clones - 1 : materialized;

  std::vector<int> outputs;
  outputs.reserve(static_cast<size_t>(materialized));
  int carrier = source;
  for (int j = 1; j <= steps; ++j) {
    const int vacuum = inputs.add_vacuum();
    transform.append_modes(1);
    const double t = 1.0 / static_cast<double>(clones - j + 1);
    beam_splitter(transform, SplitterSpec::cascade_step(carrier, vacuum, t));
    // Output j lands in the carrier slot; the running combination moves to
    // the fresh ancilla slot.
    outputs.push_back(carrier);
    carrier = vacuum;
  }
  if (full) outputs.push_back(carrier);  // the final carrier is the last clone
  return outputs;
}

int concentrate(QuadratureTransform& transform, const std::vector<int>& sources) {
  if (sources.empty()) throw std::invalid_argument("concentrate: no source modes");
  std::unordered_set<int> seen;
  for (int mode : sources) {
    if (!transform.retained(mode)) {
      throw std::invalid_argument("concentrate: source mode is consumed");
    }
    if (!seen.insert(mode).second) {
      throw std::invalid_argument("concentrate: duplicate source mode");
    }
  }
  const int accumulator = sources[0];
  for (size_t l = 1; l < sources.size(); ++l) {
    // Keeps the accumulator equal to the balanced sum of the first l+1 modes.
    const double t = static_cast<double>(l) / static_cast<double>(l + 1);
    beam_splitter(transform, SplitterSpec::cascade_step(accumulator, sources[l], t));
  }
  return accumulator;
}

}  // namespace teleclone
