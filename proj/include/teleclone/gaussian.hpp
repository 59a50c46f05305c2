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

#include <utility>
#include <vector>

// Quadrature conventions used throughout this library:
//
//     a = (X + iP) / 2,        [X, P] = 2i
//
// so a vacuum mode has Var(X) = Var(P) = 1, and an EPR pair with squeezing
// parameter r satisfies Var(X1 + X2) = Var(P1 - P2) = 2 e^{-2r}.
//
// Quadratures are stored interleaved, (X1, P1, X2, P2, ...), and every
// multimode covariance follows that ordering. Fidelity formulas elsewhere in
// the library assume exactly this normalization; other hbar conventions will
// not reproduce them.

namespace teleclone {

// Tolerance for structural checks (symplectic preservation, commutation,
// mean transfer).
inline constexpr double kCheckTol = 1e-12;

// Tolerance for agreement between propagated moments and closed-form
// predictions.
inline constexpr double kReportTol = 1e-10;

/// First and second moments of one output mode: mean (X, P) and the 2x2
/// symmetrized covariance.
struct ModeState {
  double mean_x = 0.0;
  double mean_p = 0.0;
  Eigen::Matrix2d cov = Eigen::Matrix2d::Identity();

  double var_x() const { return cov(0, 0); }
  double var_p() const { return cov(1, 1); }
  // det >= 1 is the single-mode uncertainty bound in this normalization.
  double cov_det() const { return cov(0, 0) * cov(1, 1) - cov(0, 1) * cov(1, 0); }
};

/// Symplectic form for n modes: block diagonal with [[0, 2], [-2, 0]] per
/// mode, encoding [X, P] = 2i. Only its ratio structure matters for the
/// checks below, the overall scale cancels.
Eigen::MatrixXd symplectic_form(int n_modes);

/// Collects the input modes of a network together with their exact first and
/// second moments. Vacuum and coherent blocks are 2x2 identities; an EPR pair
/// occupies a correlated 4x4 block.
class InputRegistry {
 public:
  /// Appends a vacuum mode, returns its index.
  int add_vacuum();

  /// Appends a coherent mode with mean (x, p). With conjugate = true the mode
  /// is prepared in the phase-conjugated state, mean (x, -p). Rejects
  /// non-finite amplitudes.
  int add_coherent(double x, double p, bool conjugate = false);

  /// Appends a two-mode squeezed (EPR) pair with squeezing r >= 0 and returns
  /// the pair of mode indices. The correlated quadratures are
  /// Var(X1 + X2) = Var(P1 - P2) = 2 e^{-2r}.
  std::pair<int, int> add_epr_pair(double r);

  int mode_count() const { return static_cast<int>(mean_.size()) / 2; }

  /// Mean quadrature vector, length 2 * mode_count().
  Eigen::VectorXd mean() const;

  /// Exact covariance; cosh/sinh entries are written directly, never formed
  /// by differencing.
  Eigen::MatrixXd covariance() const;

  /// Lower-triangular L with L L^T = covariance(), assembled analytically per
  /// block. Output moments are propagated as (S L)(S L)^T rather than
  /// S V S^T: at large squeezing the latter cancels cosh against sinh and
  /// loses the squeezed variances entirely, while the factored form only ever
  /// squares the small residuals.
  Eigen::MatrixXd covariance_factor() const;

 private:
  enum class BlockKind { kSingle, kEprPair };
  struct Block {
    BlockKind kind;
    int first_mode;
    double squeezing;  // EPR blocks only
  };

  std::vector<double> mean_;
  std::vector<Block> blocks_;
};

/// Linear map from input quadratures to the current mode quadratures, with
/// retained/consumed bookkeeping. The matrix starts as the identity and every
/// optical element updates rows in place; measurement marks modes consumed
/// but keeps their rows so measured operators stay expressible over inputs.
class QuadratureTransform {
 public:
  QuadratureTransform() = default;

  static QuadratureTransform identity(int n_modes);

  /// Extends the transform with `count` fresh modes mapped identically.
  void append_modes(int count);

  int mode_count() const { return static_cast<int>(consumed_.size()); }
  int dim() const { return 2 * mode_count(); }

  bool retained(int mode) const;
  void consume(int mode);
  std::vector<int> retained_modes() const;

  const Eigen::MatrixXd& matrix() const { return mat_; }

  Eigen::RowVectorXd x_row(int mode) const;
  Eigen::RowVectorXd p_row(int mode) const;

  /// Applies the 2x2 mode mixing (out_a, out_b)^T = m (in_a, in_b)^T to the
  /// X rows and, identically, to the P rows of the two modes. Throws if
  /// either mode is consumed.
  void mix_pair(int mode_a, int mode_b, const Eigen::Matrix2d& m);

  /// Adds gain * row to the X (resp. P) row of `mode`. Used by feedforward;
  /// the target must be retained.
  void add_to_x_row(int mode, const Eigen::RowVectorXd& row, double gain);
  void add_to_p_row(int mode, const Eigen::RowVectorXd& row, double gain);

  /// Max-norm defect of S_ret Omega S_ret^T = Omega_ret over retained rows.
  /// Zero (to rounding) for any composition of passive elements, and still
  /// zero after feedforward because displacement rows commute with every
  /// retained row.
  double symplectic_defect() const;

  /// Max |row . Omega . s^T| over retained rows s: how far `row` is from
  /// commuting with everything still retained.
  double commutation_defect(const Eigen::RowVectorXd& row) const;

 private:
  void check_mode(int mode) const;

  Eigen::MatrixXd mat_;
  std::vector<char> consumed_;
};

/// Moments of one retained output mode under `transform` applied to the
/// registry state. Throws if the mode was consumed by a measurement.
ModeState output_state(const InputRegistry& inputs,
                       const QuadratureTransform& transform, int mode);

/// Joint 2k x 2k covariance of the listed retained modes, in list order.
Eigen::MatrixXd joint_covariance(const InputRegistry& inputs,
                                 const QuadratureTransform& transform,
                                 const std::vector<int>& modes);

/// Joint mean vector (length 2k) of the listed retained modes.
Eigen::VectorXd joint_mean(const InputRegistry& inputs,
                           const QuadratureTransform& transform,
                           const std::vector<int>& modes);

}  // namespace teleclone
