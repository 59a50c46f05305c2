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

#include <string>

#include "teleclone/gaussian.hpp"

namespace teleclone {

/// Telecloning network layouts.
///
///   kA            1 + 1 inputs (coherent state and its phase conjugate held
///                 together), M nonlocal clones and M local anticlones.
///   kASwapped     same network with the two inputs exchanged: the clones
///                 come out local and the anticlones nonlocal.
///   kAGeneralized N + N inputs concentrated before the same network,
///                 N + N -> M + M.
///   kB            both output sets nonlocal, using a second EPR pair and a
///                 second sender; squeezing2 is the second pair's parameter.
///   kBaseline     the standard (non-phase-conjugate) telecloner, available
///                 as closed-form fidelities only.
enum class Variant { kA, kASwapped, kAGeneralized, kB, kBaseline };

enum class OutputKind { kClone, kAnticlone };

std::string variant_name(Variant variant);
Variant variant_from_name(const std::string& name);

struct FidelityResult {
  double value = 0.0;
  // Output mean minus target mean; both near zero at protocol gains.
  double gain_deficit_x = 0.0;
  double gain_deficit_p = 0.0;
  // True when the deficits vanish (to tolerance), in which case value reduces
  // to the unity-gain expression below.
  bool unity_gain = false;
};

/// Fidelity of a Gaussian one-mode state against the coherent state with mean
/// (target_x, target_p):
///
///     F = 2 / sqrt(det(V + I)) * exp(-delta^T (V + I)^{-1} delta / 2),
///
/// delta the mean offset. For diagonal V this is the familiar
/// 2/sqrt((1+Vx)(1+Vp)) times Gaussian mean penalties.
FidelityResult fidelity_vs_coherent(const ModeState& state, double target_x,
                                    double target_p);

/// Unity-gain special case: F = 2 / sqrt((1 + var_x)(1 + var_p)). Throws on
/// nonpositive variances.
double fidelity_unity_gain(double var_x, double var_p);

/// Closed-form clone/anticlone variance for the given network.
/// r may be +infinity (the e^{-2r} terms vanish exactly). The baseline
/// variant has no variance formula here and throws.
///
///   kA / kAGeneralized:
///     clone      1 + (M-N)^2/(2 M^2 N) + 2 e^{-2r}/M
///     anticlone  1 + (M-N)^2/(2 M^2 N)
///   kASwapped: the two lines trade places.
///   kB (N = 1, r2 the second pair's squeezing):
///     clone      1 + (M-1)^2 (1 + e^{-2 r2})/(2 M^2) + 2 e^{-2r}/M
///     anticlone  1 + (M-1)^2/(2 M^2) + (M+1)^2 e^{-2 r2}/(2 M^2)
double closed_form_variance(Variant variant, int clones, int copies, double r,
                            double r2, OutputKind kind);

/// Closed-form unity-gain fidelity for the given network; algebraically equal
/// to fidelity_unity_gain applied to closed_form_variance, but evaluated from
/// the independent rational expressions (e.g. clone fidelity of kA is
/// 4 M^2 N / (4 M^2 N + (M-N)^2 + 4 M N e^{-2r})). kBaseline routes to
/// baseline_standard_fidelity.
double closed_form_fidelity(Variant variant, int clones, int copies, double r,
                            double r2, OutputKind kind);

/// M -> infinity limit of the fidelity. Independent of r for every variant
/// except kB, where the second pair's noise survives:
/// 4 / (5 + e^{-2 r2}).
double asymptotic_fidelity(Variant variant, int copies, double r2, OutputKind kind);

/// Standard-telecloning reference fidelities for 2N input copies and M
/// outputs. For N = 1: F_clone = 2M / (3M - 2 + 2 e^{-2r}), F_anti = 2/3.
/// General N extends those anchors as F_clone = 2MN / (2MN + M - 2N +
/// 2N e^{-2r}) and F_anti = 2N/(2N+1), the optimal-cloner family matching
/// both the N = 1 line and the large-M limits.
std::pair<double, double> baseline_standard_fidelity(int clones, int copies, double r);

}  // namespace teleclone
