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
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "teleclone/network.hpp"

using namespace teleclone;

TEST_CASE("mixing matrices follow the stated conventions") {
  const SplitterSpec cascade = SplitterSpec::cascade_step(0, 1, 0.25);
  Eigen::Matrix2d m = cascade.mixing();
  CHECK(m(0, 0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(m(0, 1) == doctest::Approx(std::sqrt(0.75)).epsilon(1e-15));
  CHECK(m(1, 0) == doctest::Approx(std::sqrt(0.75)).epsilon(1e-15));
  CHECK(m(1, 1) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK((m * m.transpose()).isIdentity(1e-14));

  const SplitterSpec bs0 = SplitterSpec::bs0(0, 1, 1.0 / 3.0);
  m = bs0.mixing();
  const double t = std::sqrt(8.0) / 3.0;
  CHECK(m(0, 0) == doctest::Approx(t).epsilon(1e-14));
  CHECK(m(0, 1) == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
  CHECK(m(1, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(m(1, 1) == doctest::Approx(t).epsilon(1e-14));

  const SplitterSpec flipped = SplitterSpec::bs0(0, 1, -1.0 / 3.0);
  m = flipped.mixing();
  CHECK(m(0, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(m(1, 0) == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
  CHECK((m * m.transpose()).isIdentity(1e-14));
}

TEST_CASE("splitter specs reject unphysical parameters") {
  CHECK_THROWS_AS(SplitterSpec::bs0(0, 1, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(SplitterSpec::bs0(0, 1, -1.5), std::invalid_argument);
  InputRegistry inputs;
  inputs.add_vacuum();
  inputs.add_vacuum();
  QuadratureTransform transform = QuadratureTransform::identity(2);
  SplitterSpec bad = SplitterSpec::cascade_step(0, 1, 1.5);
  CHECK_THROWS_AS(beam_splitter(transform, bad), std::invalid_argument);
  SplitterSpec out_of_range = SplitterSpec::cascade_step(0, 5, 0.5);
  CHECK_THROWS_AS(beam_splitter(transform, out_of_range), std::out_of_range);
}

TEST_CASE("cascade of one output returns the source untouched") {
  InputRegistry inputs;
  inputs.add_coherent(3.0, -1.0);
  QuadratureTransform transform = QuadratureTransform::identity(1);
  const std::vector<int> outputs = splitter_cascade(inputs, transform, 0, 1);
  REQUIRE(outputs == std::vector<int>{0});
  CHECK(transform.matrix().isIdentity(1e-15));
}

TEST_CASE("three-way cascade matches an explicit matrix product") {
  InputRegistry inputs;
  inputs.add_coherent(3.0, -1.0);
  QuadratureTransform transform = QuadratureTransform::identity(1);
  const std::vector<int> outputs = splitter_cascade(inputs, transform, 0, 3);
  REQUIRE(outputs.size() == 3);
  REQUIRE(inputs.mode_count() == 3);

  // Step 1: source with vacuum 1 at t = 1/3; step 2: that vacuum slot with
  // vacuum 2 at t = 1/2. Composed by hand over 6 quadratures.
  const auto embed = [](int a, int b, double t) {
    Eigen::MatrixXd s = Eigen::MatrixXd::Identity(6, 6);
    const double c0 = std::sqrt(t);
    const double c1 = std::sqrt(1.0 - t);
    for (int q = 0; q < 2; ++q) {
      s(2 * a + q, 2 * a + q) = c0;
      s(2 * a + q, 2 * b + q) = c1;
      s(2 * b + q, 2 * a + q) = c1;
      s(2 * b + q, 2 * b + q) = -c0;
    }
    return s;
  };
  const Eigen::MatrixXd expected = embed(1, 2, 0.5) * embed(0, 1, 1.0 / 3.0);
  CHECK((transform.matrix() - expected).cwiseAbs().maxCoeff() < 1e-14);

  // Every output carries the source at amplitude 1/sqrt(3).
  const double share = 1.0 / std::sqrt(3.0);
  for (int mode : outputs) {
    CHECK(std::abs(transform.x_row(mode)(0)) == doctest::Approx(share).epsilon(1e-14));
    const ModeState state = output_state(inputs, transform, mode);
    CHECK(state.mean_x == doctest::Approx(3.0 * share).epsilon(1e-14));
    CHECK(state.mean_p == doctest::Approx(-1.0 * share).epsilon(1e-14));
    CHECK(state.cov.isIdentity(1e-14));
  }
  CHECK(transform.symplectic_defect() < 1e-12);
}

TEST_CASE("cascade outputs are exchangeable") {
  InputRegistry inputs;
  inputs.add_epr_pair(1.0);
  QuadratureTransform transform = QuadratureTransform::identity(2);
  const std::vector<int> outputs = splitter_cascade(inputs, transform, 1, 4);
  const ModeState first = output_state(inputs, transform, outputs[0]);
  for (int mode : outputs) {
    const ModeState state = output_state(inputs, transform, mode);
    CHECK(state.var_x() == doctest::Approx(first.var_x()).epsilon(1e-13));
    CHECK(state.var_p() == doctest::Approx(first.var_p()).epsilon(1e-13));
    CHECK(state.cov(0, 1) == doctest::Approx(first.cov(0, 1)).epsilon(1e-13));
  }
}

TEST_CASE("prefix cascade materializes exact leading outputs") {
  InputRegistry full_inputs;
  full_inputs.add_coherent(2.0, 4.0);
  QuadratureTransform full = QuadratureTransform::identity(1);
  const std::vector<int> all = splitter_cascade(full_inputs, full, 0, 5);

  InputRegistry prefix_inputs;
  prefix_inputs.add_coherent(2.0, 4.0);
  QuadratureTransform prefix = QuadratureTransform::identity(1);
  const std::vector<int> some =
      splitter_cascade_prefix(prefix_inputs, prefix, 0, 5, 2);
  REQUIRE(some.size() == 2);
  // Two materialized outputs need two cascade steps: source + 2 vacua.
  CHECK(prefix_inputs.mode_count() == 3);

  for (std::size_t i = 0; i < some.size(); ++i) {
    const ModeState expected = output_state(full_inputs, full, all[i]);
    const ModeState got = output_state(prefix_inputs, prefix, some[i]);
    CHECK(got.mean_x == doctest::Approx(expected.mean_x).epsilon(1e-14));
    CHECK(got.mean_p == doctest::Approx(expected.mean_p).epsilon(1e-14));
    CHECK((got.cov - expected.cov).cwiseAbs().maxCoeff() < 1e-14);
  }
  CHECK(prefix.symplectic_defect() < 1e-12);

  // A cap at or above the clone count materializes everything.
  InputRegistry wide_inputs;
  wide_inputs.add_coherent(2.0, 4.0);
  QuadratureTransform wide = QuadratureTransform::identity(1);
  CHECK(splitter_cascade_prefix(wide_inputs, wide, 0, 3, 16).size() == 3);
}

TEST_CASE("prefix cascade stays affordable at M = 10^4") {
  InputRegistry inputs;
  inputs.add_coherent(1.0, 0.0);
  QuadratureTransform transform = QuadratureTransform::identity(1);
  const std::vector<int> outputs =
      splitter_cascade_prefix(inputs, transform, 0, 10000, 3);
  REQUIRE(outputs.size() == 3);
  CHECK(inputs.mode_count() == 4);
  const ModeState state = output_state(inputs, transform, outputs[0]);
  CHECK(state.mean_x == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(state.cov.isIdentity(1e-13));
}

TEST_CASE("concentration forms the balanced sum") {
  InputRegistry inputs;
  std::vector<int> sources;
  for (int i = 0; i < 4; ++i) sources.push_back(inputs.add_coherent(1.0, 1.0));
  QuadratureTransform transform = QuadratureTransform::identity(4);
  const int sum = concentrate(transform, sources);

  const Eigen::RowVectorXd row = transform.x_row(sum);
  for (int mode : sources) {
    CHECK(row(2 * mode) == doctest::Approx(0.5).epsilon(1e-14));
  }
  const ModeState state = output_state(inputs, transform, sum);
  CHECK(state.mean_x == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(state.mean_p == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(state.cov.isIdentity(1e-13));
  CHECK(transform.symplectic_defect() < 1e-12);
}

TEST_CASE("concentrating conjugated copies keeps the conjugated mean") {
  InputRegistry inputs;
  std::vector<int> sources;
  for (int i = 0; i < 2; ++i) sources.push_back(inputs.add_coherent(1.0, 1.0, true));
  QuadratureTransform transform = QuadratureTransform::identity(2);
  const int sum = concentrate(transform, sources);
  const ModeState state = output_state(inputs, transform, sum);
  const double root2 = std::sqrt(2.0);
  CHECK(state.mean_x == doctest::Approx(root2).epsilon(1e-14));
  CHECK(state.mean_p == doctest::Approx(-root2).epsilon(1e-14));
}

TEST_CASE("concentration validates its source list") {
  InputRegistry inputs;
  inputs.add_vacuum();
  inputs.add_vacuum();
  QuadratureTransform transform = QuadratureTransform::identity(2);
  CHECK_THROWS_AS(concentrate(transform, {}), std::invalid_argument);
  CHECK_THROWS_AS(concentrate(transform, {0, 0}), std::invalid_argument);
  transform.consume(1);
  CHECK_THROWS_AS(concentrate(transform, {0, 1}), std::invalid_argument);
}

TEST_CASE("cascade validates counts and source state") {
  InputRegistry inputs;
  inputs.add_vacuum();
  QuadratureTransform transform = QuadratureTransform::identity(1);
  CHECK_THROWS_AS(splitter_cascade(inputs, transform, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(splitter_cascade_prefix(inputs, transform, 0, 3, 0),
                  std::invalid_argument);
  transform.consume(0);
  CHECK_THROWS_AS(splitter_cascade(inputs, transform, 0, 2), std::invalid_argument);
}

TEST_CASE("unbalanced splitter plus EPR reproduces hand covariances") {
  // Two EPR pairs (r = 1 each); BS0 with rho = 1/3 mixes b1 (kept in slot a)
  // with a1. Checks a few joint entries against cosh/sinh arithmetic.
  InputRegistry inputs;
  const auto [a1, a2] = inputs.add_epr_pair(1.0);
  const auto [b1, b2] = inputs.add_epr_pair(1.0);
  QuadratureTransform transform = QuadratureTransform::identity(4);
  beam_splitter(transform, SplitterSpec::bs0(b1, a1, 1.0 / 3.0));

  const Eigen::MatrixXd joint = joint_covariance(inputs, transform, {b1, a1, b2});
  const double ch = std::cosh(2.0);
  const double sh = std::sinh(2.0);
  // Transmitted port: Var = (8/9) cosh2 + 1/9 of the partner's cosh2.
  CHECK(joint(0, 0) == doctest::Approx(ch).epsilon(1e-13));
  // The two output ports of one splitter fed by symmetric inputs decorrelate.
  CHECK(joint(0, 2) == doctest::Approx(0.0).epsilon(1e-13));
  // Cov(X_out_a, X_b2) = sqrt(8/9) * (-sinh 2).
  CHECK(joint(0, 4) ==
        doctest::Approx(-std::sqrt(8.0 / 9.0) * sh).epsilon(1e-13));
  (void)a2;
}
