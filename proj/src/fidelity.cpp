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

#include "teleclone/fidelity.hpp"

#include <cmath>
#include <stdexcept>

namespace teleclone {

std::string variant_name(Variant variant) {
  switch (variant) {
    case Variant::kA: return "a";
    case Variant::kASwapped: return "a-swapped";
    case Variant::kAGeneralized: return "a-generalized";
    case Variant::kB: return "b";
    case Variant::kBaseline: return "baseline";
  }
  throw std::invalid_argument("variant_name: unknown variant");
}

Variant variant_from_name(const std::string& name) {
  if (name == "a") return Variant::kA;
  if (name == "a-swapped") return Variant::kASwapped;
  if (name == "a-generalized" || name == "a-general") return Variant::kAGeneralized;
  if (name == "b") return Variant::kB;
  if (name == "baseline") return Variant::kBaseline;
  throw std::invalid_argument("unknown variant \"" + name +
                              "\" (expected a, a-swapped, a-generalized, b, baseline)");
}

FidelityResult fidelity_vs_coherent(const ModeState& state, double target_x,
                                    double target_p) {
  Eigen::Matrix2d sum = state.cov + Eigen::Matrix2d::Identity();
  const double det = sum(0, 0) * sum(1, 1) - sum(0, 1) * sum(1, 0);
  if (!(det > 0.0)) {
    throw std::domain_error("fidelity_vs_coherent: cov + I is not positive definite");
  }
  Eigen::Vector2d delta(state.mean_x - target_x, state.mean_p - target_p);
  Eigen::Matrix2d inv;
  inv << sum(1, 1), -sum(0, 1), -sum(1, 0), sum(0, 0);
  inv /= det;

  FidelityResult result;
  result.gain_deficit_x = delta(0);
  result.gain_deficit_p = delta(1);
  result.unity_gain = std::abs(delta(0)) <= 1e-9 && std::abs(delta(1)) <= 1e-9;
  result.value = 2.0 / std::sqrt(det) * std::exp(-0.5 * delta.dot(inv * delta));
  return result;
}

double fidelity_unity_gain(double var_x, double var_p) {
  if (!(var_x > 0.0) || !(var_p > 0.0)) {
    throw std::invalid_argument("fidelity_unity_gain: variances must be positive");
  }
  return 2.0 / std::sqrt((1.0 + var_x) * (1.0 + var_p));
}

namespace {

void check_counts(int clones, int copies) {
  if (clones < 1) throw std::invalid_argument("clone count must be at least 1");
  if (copies < 1) throw std::invalid_argument("copy count must be at least 1");
}

void check_squeezing(double r, const char* label) {
  // +infinity is allowed: e^{-2r} evaluates to exactly zero.
  if (std::isnan(r) || r < 0.0) {
    throw std::invalid_argument(std::string(label) + " must be nonnegative");
  }
}

}  // namespace

double closed_form_variance(Variant variant, int clones, int copies, double r,
                            double r2, OutputKind kind) {
  check_counts(clones, copies);
  check_squeezing(r, "squeezing");
  const double m = clones;
  const double n = copies;

  switch (variant) {
    case Variant::kA:
    case Variant::kAGeneralized:
    case Variant::kASwapped: {
      if (variant == Variant::kA && copies != 1) {
        throw std::invalid_argument("variant a takes exactly one input copy pair");
      }
      const double base = 1.0 + (m - n) * (m - n) / (2.0 * m * m * n);
      const bool r_dependent = (variant == Variant::kASwapped)
                                   ? kind == OutputKind::kAnticlone
                                   : kind == OutputKind::kClone;
      return r_dependent ? base + 2.0 * std::exp(-2.0 * r) / m : base;
    }
    case Variant::kB: {
      if (copies != 1) {
        throw std::invalid_argument("the two-sender variant takes exactly one copy pair");
      }
      check_squeezing(r2, "squeezing2");
      if (kind == OutputKind::kClone) {
        return 1.0 + (m - 1.0) * (m - 1.0) * (1.0 + std::exp(-2.0 * r2)) / (2.0 * m * m) +
               2.0 * std::exp(-2.0 * r) / m;
      }
      return 1.0 + (m - 1.0) * (m - 1.0) / (2.0 * m * m) +
             (m + 1.0) * (m + 1.0) * std::exp(-2.0 * r2) / (2.0 * m * m);
    }
    case Variant::kBaseline:
      throw std::invalid_argument("the baseline telecloner has no variance formula here");
  }
  throw std::invalid_argument("closed_form_variance: unknown variant");
}

double closed_form_fidelity(Variant variant, int clones, int copies, double r,
                            double r2, OutputKind kind) {
  check_counts(clones, copies);
  check_squeezing(r, "squeezing");
  const double m = clones;
  const double n = copies;

  switch (variant) {
    case Variant::kA:
    case Variant::kAGeneralized:
    case Variant::kASwapped: {
      if (variant == Variant::kA && copies != 1) {
        throw std::invalid_argument("variant a takes exactly one input copy pair");
      }
      const double body = 4.0 * m * m * n;
      const double excess = (m - n) * (m - n);
      const bool r_dependent = (variant == Variant::kASwapped)
                                   ? kind == OutputKind::kAnticlone
                                   : kind == OutputKind::kClone;
      const double noise = r_dependent ? 4.0 * m * n * std::exp(-2.0 * r) : 0.0;
      return body / (body + excess + noise);
    }
    case Variant::kB: {
      if (copies != 1) {
        throw std::invalid_argument("the two-sender variant takes exactly one copy pair");
      }
      check_squeezing(r2, "squeezing2");
      const double body = 4.0 * m * m;
      if (kind == OutputKind::kClone) {
        return body / (body + (m - 1.0) * (m - 1.0) * (1.0 + std::exp(-2.0 * r2)) +
                       4.0 * m * std::exp(-2.0 * r));
      }
      return body / (body + (m - 1.0) * (m - 1.0) +
                     (m + 1.0) * (m + 1.0) * std::exp(-2.0 * r2));
    }
    case Variant::kBaseline: {
      const auto [clone, anticlone] = baseline_standard_fidelity(clones, copies, r);
      return kind == OutputKind::kClone ? clone : anticlone;
    }
  }
  throw std::invalid_argument("closed_form_fidelity: unknown variant");
}

double asymptotic_fidelity(Variant variant, int copies, double r2, OutputKind kind) {
  if (copies < 1) throw std::invalid_argument("copy count must be at least 1");
  const double n = copies;
  switch (variant) {
    case Variant::kA:
    case Variant::kAGeneralized:
    case Variant::kASwapped:
      return 4.0 * n / (4.0 * n + 1.0);
    case Variant::kB:
      check_squeezing(r2, "squeezing2");
      (void)kind;  // both output sets share the limit
      return 4.0 / (5.0 + std::exp(-2.0 * r2));
    case Variant::kBaseline:
      return 2.0 * n / (2.0 * n + 1.0);
  }
  throw std::invalid_argument("asymptotic_fidelity: unknown variant");
}

std::pair<double, double> baseline_standard_fidelity(int clones, int copies, double r) {
  check_counts(clones, copies);
  check_squeezing(r, "squeezing");
  if (clones < 2 * copies) {
    // The standard telecloner consumes its 2N input copies, so fewer than 2N
    // outputs do not exist (and the formula would exceed 1).
    throw std::invalid_argument("the standard telecloner needs at least 2N clones");
  }
  const double m = clones;
  const double n = copies;
  const double clone =
      2.0 * m * n / (2.0 * m * n + m - 2.0 * n + 2.0 * n * std::exp(-2.0 * r));
  const double anticlone = 2.0 * n / (2.0 * n + 1.0);
  return {clone, anticlone};
}

}  // namespace teleclone
