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

#include <cmath>
#include <limits>
#include <stdexcept>

#include "doctest.h"
#include "teleclone/fidelity.hpp"

using namespace teleclone;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("variant names round-trip") {
  for (Variant v : {Variant::kA, Variant::kASwapped, Variant::kAGeneralized,
                    Variant::kB, Variant::kBaseline}) {
    CHECK(variant_from_name(variant_name(v)) == v);
  }
  CHECK(variant_from_name("a-general") == Variant::kAGeneralized);
  CHECK_THROWS_AS(variant_from_name("c"), std::invalid_argument);
}

TEST_CASE("coherent-state fidelity anchors") {
  ModeState state;
  CHECK(fidelity_vs_coherent(state, 0.0, 0.0).value == doctest::Approx(1.0).epsilon(1e-15));

  state.cov = 2.125 * Eigen::Matrix2d::Identity();
  state.mean_x = 2.0;
  state.mean_p = 4.0;
  const FidelityResult matched = fidelity_vs_coherent(state, 2.0, 4.0);
  CHECK(matched.value == doctest::Approx(0.64).epsilon(1e-15));
  CHECK(matched.unity_gain);

  ModeState pure;
  pure.mean_x = 1.0;
  const FidelityResult offset = fidelity_vs_coherent(pure, 0.0, 0.0);
  CHECK(offset.value == doctest::Approx(0.7788007830714049).epsilon(1e-15));
  CHECK_FALSE(offset.unity_gain);
  CHECK(offset.gain_deficit_x == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(offset.gain_deficit_p == 0.0);
}

TEST_CASE("unity-gain fidelity anchors") {
  CHECK(fidelity_unity_gain(1.125, 1.125) ==
        doctest::Approx(0.9411764705882353).epsilon(1e-15));
  CHECK(fidelity_unity_gain(3.0, 1.0) ==
        doctest::Approx(0.7071067811865476).epsilon(1e-15));
  CHECK_THROWS_AS(fidelity_unity_gain(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(fidelity_unity_gain(1.0, -2.0), std::invalid_argument);
}

TEST_CASE("fidelity is invariant under a joint phase-space rotation") {
  ModeState state;
  state.cov << 1.7, 0.4, 0.4, 2.6;
  state.mean_x = 0.9;
  state.mean_p = -1.3;
  const double target_x = 0.5;
  const double target_p = -1.0;
  const double reference = fidelity_vs_coherent(state, target_x, target_p).value;

  const double angle = 0.83;
  Eigen::Matrix2d rot;
  rot << std::cos(angle), std::sin(angle), -std::sin(angle), std::cos(angle);
  ModeState rotated;
  rotated.cov = rot * state.cov * rot.transpose();
  Eigen::Vector2d mean = rot * Eigen::Vector2d(state.mean_x, state.mean_p);
  Eigen::Vector2d target = rot * Eigen::Vector2d(target_x, target_p);
  rotated.mean_x = mean(0);
  rotated.mean_p = mean(1);
  CHECK(fidelity_vs_coherent(rotated, target(0), target(1)).value ==
        doctest::Approx(reference).epsilon(1e-13));
}

TEST_CASE("fidelity rejects a non-positive covariance") {
  ModeState broken;
  broken.cov << -3.0, 0.0, 0.0, 1.0;
  CHECK_THROWS_AS(fidelity_vs_coherent(broken, 0.0, 0.0), std::domain_error);
}

TEST_CASE("closed-form variance anchors") {
  CHECK(closed_form_variance(Variant::kA, 2, 1, 10.0, 0.0, OutputKind::kClone) ==
        doctest::Approx(1.125 + std::exp(-20.0)).epsilon(1e-15));
  CHECK(closed_form_variance(Variant::kA, 2, 1, 10.0, 0.0, OutputKind::kAnticlone) ==
        1.125);
  CHECK(closed_form_variance(Variant::kA, 1, 1, 0.7, 0.0, OutputKind::kClone) ==
        doctest::Approx(1.0 + 2.0 * std::exp(-1.4)).epsilon(1e-15));
  CHECK(closed_form_variance(Variant::kA, 1, 1, 0.7, 0.0, OutputKind::kAnticlone) ==
        1.0);
  CHECK(closed_form_variance(Variant::kAGeneralized, 4, 2, kInf, 0.0,
                             OutputKind::kClone) == 1.0625);
  CHECK(closed_form_variance(Variant::kB, 2, 1, 10.0, 0.0, OutputKind::kClone) ==
        doctest::Approx(1.25 + std::exp(-20.0)).epsilon(1e-15));
  CHECK(closed_form_variance(Variant::kB, 2, 1, 10.0, 0.0, OutputKind::kAnticlone) ==
        2.25);
  CHECK_THROWS_AS(
      closed_form_variance(Variant::kBaseline, 2, 1, 1.0, 0.0, OutputKind::kClone),
      std::invalid_argument);
}

TEST_CASE("swapped variant exchanges the two output kinds") {
  for (int m : {1, 2, 3, 7}) {
    for (double r : {0.0, 0.5, 2.0}) {
      CHECK(closed_form_variance(Variant::kASwapped, m, 1, r, 0.0, OutputKind::kClone) ==
            closed_form_variance(Variant::kA, m, 1, r, 0.0, OutputKind::kAnticlone));
      CHECK(closed_form_variance(Variant::kASwapped, m, 1, r, 0.0,
                                 OutputKind::kAnticlone) ==
            closed_form_variance(Variant::kA, m, 1, r, 0.0, OutputKind::kClone));
    }
  }
}

TEST_CASE("closed-form fidelity anchors") {
  CHECK(closed_form_fidelity(Variant::kA, 2, 1, kInf, 0.0, OutputKind::kClone) ==
        doctest::Approx(0.9411764705882353).epsilon(1e-15));
  CHECK(closed_form_fidelity(Variant::kA, 3, 1, kInf, 0.0, OutputKind::kClone) ==
        doctest::Approx(0.9).epsilon(1e-15));
  CHECK(closed_form_fidelity(Variant::kAGeneralized, 4, 2, kInf, 0.0,
                             OutputKind::kClone) ==
        doctest::Approx(0.9696969696969697).epsilon(1e-15));
  CHECK(closed_form_fidelity(Variant::kB, 2, 1, 10.0, 0.0, OutputKind::kAnticlone) ==
        doctest::Approx(0.6153846153846154).epsilon(1e-15));
  CHECK(closed_form_fidelity(Variant::kA, 1, 1, 0.0, 0.0, OutputKind::kAnticlone) ==
        doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("closed-form fidelity equals the unity-gain form of the variance") {
  for (Variant v : {Variant::kA, Variant::kASwapped, Variant::kAGeneralized, Variant::kB}) {
    for (int m : {1, 2, 3, 5, 8}) {
      for (int n : {1, 2, 3}) {
        if ((v == Variant::kA || v == Variant::kB) && n != 1) continue;
        for (double r : {0.0, 0.7, 2.0}) {
          for (OutputKind kind : {OutputKind::kClone, OutputKind::kAnticlone}) {
            const double var = closed_form_variance(v, m, n, r, 0.9, kind);
            CHECK(closed_form_fidelity(v, m, n, r, 0.9, kind) ==
                  doctest::Approx(fidelity_unity_gain(var, var)).epsilon(1e-13));
          }
        }
      }
    }
  }
}

TEST_CASE("asymptotic fidelities") {
  CHECK(asymptotic_fidelity(Variant::kA, 1, 0.0, OutputKind::kClone) ==
        doctest::Approx(0.8).epsilon(1e-15));
  CHECK(asymptotic_fidelity(Variant::kAGeneralized, 3, 0.0, OutputKind::kClone) ==
        doctest::Approx(12.0 / 13.0).epsilon(1e-15));
  CHECK(asymptotic_fidelity(Variant::kB, 1, 0.0, OutputKind::kClone) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(asymptotic_fidelity(Variant::kB, 1, kInf, OutputKind::kAnticlone) ==
        doctest::Approx(0.8).epsilon(1e-15));
  CHECK(asymptotic_fidelity(Variant::kBaseline, 1, 0.0, OutputKind::kClone) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-15));

  // Large-M closed forms approach their limits.
  CHECK(closed_form_fidelity(Variant::kA, 10000, 1, 10.0, 0.0, OutputKind::kClone) ==
        doctest::Approx(0.8).epsilon(1e-3));
}

TEST_CASE("baseline reference fidelities") {
  const auto perfect = baseline_standard_fidelity(2, 1, kInf);
  CHECK(perfect.first == 1.0);
  CHECK(perfect.second == 2.0 / 3.0);

  const auto three = baseline_standard_fidelity(3, 1, 10.0);
  CHECK(three.first == doctest::Approx(6.0 / 7.0).epsilon(1e-8));
  CHECK(three.second == 2.0 / 3.0);

  // Fewer than 2N outputs cannot exist for the 2N-input standard cloner.
  CHECK_THROWS_AS(baseline_standard_fidelity(1, 1, 10.0), std::invalid_argument);
  CHECK_THROWS_AS(baseline_standard_fidelity(3, 2, 10.0), std::invalid_argument);
}

TEST_CASE("closed forms validate counts and squeezing") {
  CHECK_THROWS_AS(
      closed_form_variance(Variant::kA, 0, 1, 1.0, 0.0, OutputKind::kClone),
      std::invalid_argument);
  CHECK_THROWS_AS(
      closed_form_variance(Variant::kA, 2, 0, 1.0, 0.0, OutputKind::kClone),
      std::invalid_argument);
  CHECK_THROWS_AS(
      closed_form_variance(Variant::kA, 2, 2, 1.0, 0.0, OutputKind::kClone),
      std::invalid_argument);
  CHECK_THROWS_AS(
      closed_form_variance(Variant::kB, 2, 3, 1.0, 0.0, OutputKind::kClone),
      std::invalid_argument);
  CHECK_THROWS_AS(
      closed_form_variance(Variant::kA, 2, 1, -1.0, 0.0, OutputKind::kClone),
      std::invalid_argument);
  CHECK_THROWS_AS(
      closed_form_variance(Variant::kB, 2, 1, 1.0, -0.5, OutputKind::kClone),
      std::invalid_argument);
  CHECK_THROWS_AS(
      closed_form_fidelity(Variant::kA, 2, 1, std::nan(""), 0.0, OutputKind::kClone),
      std::invalid_argument);
}
