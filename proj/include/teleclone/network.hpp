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

// Two sign conventions appear in the telecloning networks and they are not
// interchangeable mode-by-mode:
//
//   kCascade (also the generic convention):
//       out_a = sqrt(t) in_a + sqrt(1-t) in_b
//       out_b = sqrt(1-t) in_a - sqrt(t) in_b
//
//   kBs0 (the splitter feeding the measured arm), parameterized by a signed
//   reflected amplitude rho with t = 1 - rho^2:
//       out_a = sqrt(t) in_a - rho in_b
//       out_b = rho in_a + sqrt(t) in_b
//
// Both matrices are orthogonal, so either choice preserves the symplectic
// form; what the convention changes is which quadrature combinations end up
// squeezed downstream.
enum class SplitterConvention { kGeneric, kCascade, kBs0 };

struct SplitterSpec {
  int mode_a = 0;
  int mode_b = 1;
  double transmissivity = 0.5;
  SplitterConvention convention = SplitterConvention::kGeneric;
  // Sign of the reflected amplitude; only kBs0 uses it. A negative amplitude
  // is an ordinary splitter followed by a pi phase flip and is what makes the
  // M < N generalized protocol reach unity gain.
  int reflect_sign = 1;

  static SplitterSpec cascade_step(int a, int b, double t) {
    return {a, b, t, SplitterConvention::kCascade, 1};
  }
  static SplitterSpec bs0(int a, int b, double reflect_amplitude);

  /// The 2x2 mode-mixing matrix for this spec.
  Eigen::Matrix2d mixing() const;
};

/// Applies the splitter to the transform. Throws on out-of-range or consumed
/// modes, or transmissivity outside [0, 1].
void beam_splitter(QuadratureTransform& transform, const SplitterSpec& spec);

/// Splits `source` into `clones` equal shares through the telecloning
/// cascade: step j mixes the running carrier with a fresh vacuum at
/// transmissivity 1/(clones - j + 1), so every output carries the source with
/// amplitude exactly 1/sqrt(clones). Registers the vacuum ancillas in
/// `inputs` (which must stay in lockstep with `transform`). Returns the
/// `clones` output mode indices in order.
std::vector<int> splitter_cascade(InputRegistry& inputs, QuadratureTransform& transform,
                                  int source, int clones);

/// Same cascade, but only the first min(clones, max_outputs) outputs are
/// materialized; the rest of the source amplitude stays in one retained,
/// unused carrier mode. Each materialized output is exact (the splitting
/// ratios use the true `clones`), and the outputs are exchangeable with the
/// unmaterialized ones, which keeps very large M affordable.
std::vector<int> splitter_cascade_prefix(InputRegistry& inputs,
                                         QuadratureTransform& transform, int source,
                                         int clones, int max_outputs);

/// Coherently concentrates the listed modes into their balanced sum
/// (1/sqrt(N)) * (a_1 + ... + a_N), returned in the first listed mode's slot.
/// The orthogonal complement combinations stay retained but unused, so the
/// overall transform remains square and symplectic. N identical coherent
/// states (x, p) concentrate to mean (sqrt(N) x, sqrt(N) p) with vacuum
/// noise.
int concentrate(QuadratureTransform& transform, const std::vector<int>& sources);

}  // namespace teleclone
