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

#include "teleclone/gaussian.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace teleclone {

Eigen::MatrixXd symplectic_form(int n_modes) {
  if (n_modes < 0) throw std::invalid_argument("symplectic_form: negative mode count");
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
  for (int m = 0; m < n_modes; ++m) {
    omega(2 * m, 2 * m + 1) = 2.0;
    omega(2 * m + 1, 2 * m) = -2.0;
  }
  return omega;
}

int InputRegistry::add_vacuum() {
  const int mode = mode_count();
  mean_.push_back(0.0);
  mean_.push_back(0.0);
  blocks_.push_back({BlockKind::kSingle, mode, 0.0});
  return mode;
}

int InputRegistry::add_coherent(double x, double p, bool conjugate) {
  if (!std::isfinite(x) || !std::isfinite(p)) {
    throw std::invalid_argument("add_coherent: amplitude must be finite");
  }
  const int mode = mode_count();
  mean_.push_back(x);
  mean_.push_back(conjugate ? -p : p);
  blocks_.push_back({BlockKind::kSingle, mode, 0.0});
  return mode;
}

std::pair<int, int> InputRegistry::add_epr_pair(double r) {
  if (!std::isfinite(r) || r < 0.0) {
    throw std::invalid_argument("add_epr_pair: squeezing must be finite and nonnegative");
  }
  const int first = mode_count();
  for (int i = 0; i < 4; ++i) mean_.push_back(0.0);
  blocks_.push_back({BlockKind::kEprPair, first, r});
  return {first, first + 1};
}

Eigen::VectorXd InputRegistry::mean() const {
  return Eigen::Map<const Eigen::VectorXd>(mean_.data(),
                                           static_cast<Eigen::Index>(mean_.size()));
}

Eigen::MatrixXd InputRegistry::covariance() const {
  const int n = mode_count();
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(2 * n, 2 * n);
  for (const Block& b : blocks_) {
    if (b.kind != BlockKind::kEprPair) continue;
    const double ch = std::cosh(2.0 * b.squeezing);
    const double sh = std::sinh(2.0 * b.squeezing);
    const int x1 = 2 * b.first_mode, p1 = x1 + 1, x2 = x1 + 2, p2 = x1 + 3;
    v(x1, x1) = ch;
    v(p1, p1) = ch;
    v(x2, x2) = ch;
    v(p2, p2) = ch;
    v(x1, x2) = v(x2, x1) = -sh;
    v(p1, p2) = v(p2, p1) = sh;
  }
  return v;
}

Eigen::MatrixXd InputRegistry::covariance_factor() const {
  const int n = mode_count();
  Eigen::MatrixXd l = Eigen::MatrixXd::Identity(2 * n, 2 * n);
  for (const Block& b : blocks_) {
    if (b.kind != BlockKind::kEprPair) continue;
    const double ch = std::cosh(2.0 * b.squeezing);
    const double sh = std::sinh(2.0 * b.squeezing);
    const double root_ch = std::sqrt(ch);
    const int x1 = 2 * b.first_mode, p1 = x1 + 1, x2 = x1 + 2, p2 = x1 + 3;
    // Exact Cholesky factor of the EPR block: the Schur complement
    // cosh - sinh^2/cosh collapses to 1/cosh analytically.
    l(x1, x1) = root_ch;
    l(p1, p1) = root_ch;
    l(x2, x1) = -sh / root_ch;
    l(x2, x2) = 1.0 / root_ch;
    l(p2, p1) = sh / root_ch;
    l(p2, p2) = 1.0 / root_ch;
  }
  return l;
}

QuadratureTransform QuadratureTransform::identity(int n_modes) {
  if (n_modes < 0) throw std::invalid_argument("QuadratureTransform: negative mode count");
  QuadratureTransform t;
  t.mat_ = Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes);
  t.consumed_.assign(static_cast<size_t>(n_modes), 0);
  return t;
}

void QuadratureTransform::append_modes(int count) {
  if (count < 0) throw std::invalid_argument("append_modes: negative count");
  if (count == 0) return;
  const int old_dim = dim();
  const int new_dim = old_dim + 2 * count;
  Eigen::MatrixXd grown = Eigen::MatrixXd::Zero(new_dim, new_dim);
  grown.topLeftCorner(old_dim, old_dim) = mat_;
  grown.bottomRightCorner(2 * count, 2 * count).setIdentity();
  mat_ = std::move(grown);
  consumed_.insert(consumed_.end(), static_cast<size_t>(count), 0);
}

void QuadratureTransform::check_mode(int mode) const {
  if (mode < 0 || mode >= mode_count()) {
    throw std::out_of_range("QuadratureTransform: mode " + std::to_string(mode) +
                            " out of range");
  }
}

bool QuadratureTransform::retained(int mode) const {
  check_mode(mode);
  return consumed_[static_cast<size_t>(mode)] == 0;
}

void QuadratureTransform::consume(int mode) {
  check_mode(mode);
  consumed_[static_cast<size_t>(mode)] = 1;
}

std::vector<int> QuadratureTransform::retained_modes() const {
  std::vector<int> modes;
  for (int m = 0; m < mode_count(); ++m) {
    if (consumed_[static_cast<size_t>(m)] == 0) modes.push_back(m);
  }
  return modes;
}

Eigen::RowVectorXd QuadratureTransform::x_row(int mode) const {
  check_mode(mode);
  return mat_.row(2 * mode);
}

Eigen::RowVectorXd QuadratureTransform::p_row(int mode) const {
  check_mode(mode);
  return mat_.row(2 * mode + 1);
}

void QuadratureTransform::mix_pair(int mode_a, int mode_b, const Eigen::Matrix2d& m) {
  if (mode_a == mode_b) throw std::invalid_argument("mix_pair: modes must be distinct");
  if (!retained(mode_a) || !retained(mode_b)) {
    throw std::invalid_argument("mix_pair: cannot mix a consumed mode");
  }
  for (int q = 0; q < 2; ++q) {  // q = 0 mixes X rows, q = 1 mixes P rows
    const Eigen::RowVectorXd row_a = mat_.row(2 * mode_a + q);
    const Eigen::RowVectorXd row_b = mat_.row(2 * mode_b + q);
    mat_.row(2 * mode_a + q) = m(0, 0) * row_a + m(0, 1) * row_b;
    mat_.row(2 * mode_b + q) = m(1, 0) * row_a + m(1, 1) * row_b;
  }
}

void QuadratureTransform::add_to_x_row(int mode, const Eigen::RowVectorXd& row,
                                       double gain) {
  if (!retained(mode)) throw std::invalid_argument("add_to_x_row: mode is consumed");
  if (row.size() != mat_.cols()) {
    throw std::invalid_argument("add_to_x_row: row width mismatch");
  }
  mat_.row(2 * mode) += gain * row;
}

void QuadratureTransform::add_to_p_row(int mode, const Eigen::RowVectorXd& row,
                                       double gain) {
  if (!retained(mode)) throw std::invalid_argument("add_to_p_row: mode is consumed");
  if (row.size() != mat_.cols()) {
    throw std::invalid_argument("add_to_p_row: row width mismatch");
  }
  mat_.row(2 * mode + 1) += gain * row;
}

double QuadratureTransform::symplectic_defect() const {
  const std::vector<int> kept = retained_modes();
  if (kept.empty()) return 0.0;
  const int k = static_cast<int>(kept.size());
  Eigen::MatrixXd rows(2 * k, dim());
  for (int i = 0; i < k; ++i) {
    rows.row(2 * i) = mat_.row(2 * kept[static_cast<size_t>(i)]);
    rows.row(2 * i + 1) = mat_.row(2 * kept[static_cast<size_t>(i)] + 1);
  }
  const Eigen::MatrixXd omega_in = symplectic_form(mode_count());
  const Eigen::MatrixXd omega_out = symplectic_form(k);
  return (rows * omega_in * rows.transpose() - omega_out).cwiseAbs().maxCoeff();
}

double QuadratureTransform::commutation_defect(const Eigen::RowVectorXd& row) const {
  if (row.size() != mat_.cols()) {
    throw std::invalid_argument("commutation_defect: row width mismatch");
  }
  const Eigen::MatrixXd omega = symplectic_form(mode_count());
  const Eigen::VectorXd products = mat_ * (omega.transpose() * row.transpose());
  double worst = 0.0;
  for (int m : retained_modes()) {
    worst = std::max(worst, std::abs(products(2 * m)));
    worst = std::max(worst, std::abs(products(2 * m + 1)));
  }
  return worst;
}

namespace {

Eigen::MatrixXd selected_rows(const QuadratureTransform& transform,
                              const std::vector<int>& modes) {
  Eigen::MatrixXd rows(2 * static_cast<int>(modes.size()), transform.dim());
  for (size_t i = 0; i < modes.size(); ++i) {
    if (!transform.retained(modes[i])) {
      throw std::invalid_argument("mode " + std::to_string(modes[i]) +
                                  " was consumed by a measurement");
    }
    rows.row(2 * static_cast<Eigen::Index>(i)) = transform.x_row(modes[i]);
    rows.row(2 * static_cast<Eigen::Index>(i) + 1) = transform.p_row(modes[i]);
  }
  return rows;
}

}  // namespace

ModeState output_state(const InputRegistry& inputs,
                       const QuadratureTransform& transform, int mode) {
  if (transform.mode_count() != inputs.mode_count()) {
    throw std::invalid_argument("output_state: registry and transform disagree on size");
  }
  const Eigen::MatrixXd rows = selected_rows(transform, {mode});
  const Eigen::MatrixXd propagated = rows * inputs.covariance_factor();
  const Eigen::Vector2d mu = rows * inputs.mean();
  ModeState state;
  state.mean_x = mu(0);
  state.mean_p = mu(1);
  state.cov = propagated * propagated.transpose();
  return state;
}

Eigen::MatrixXd joint_covariance(const InputRegistry& inputs,
                                 const QuadratureTransform& transform,
                                 const std::vector<int>& modes) {
  if (transform.mode_count() != inputs.mode_count()) {
    throw std::invalid_argument("joint_covariance: registry and transform disagree on size");
  }
  const Eigen::MatrixXd propagated = selected_rows(transform, modes) * inputs.covariance_factor();
  return propagated * propagated.transpose();
}

Eigen::VectorXd joint_mean(const InputRegistry& inputs,
                           const QuadratureTransform& transform,
                           const std::vector<int>& modes) {
  if (transform.mode_count() != inputs.mode_count()) {
    throw std::invalid_argument("joint_mean: registry and transform disagree on size");
  }
  return selected_rows(transform, modes) * inputs.mean();
}

}  // namespace teleclone
