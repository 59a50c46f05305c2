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

#include "teleclone/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "teleclone/network.hpp"

namespace teleclone {

double ProtocolSpec::reflect_amplitude() const {
  return static_cast<double>(clones - copies) / static_cast<double>(clones + copies);
}

double ProtocolSpec::reflectivity() const {
  const double rho = reflect_amplitude();
  return rho * rho;
}

double ProtocolSpec::transmissivity() const {
  const double m = clones;
  const double n = copies;
  return 4.0 * m * n / ((m + n) * (m + n));
}

double ProtocolSpec::gain_clone() const {
  return std::sqrt(2.0 / (clones * transmissivity()));
}

double ProtocolSpec::gain_anticlone() const { return reflect_amplitude() * gain_clone(); }

void ProtocolSpec::validate() const {
  if (clones < 1) throw std::invalid_argument("clones must be at least 1");
  if (copies < 1) throw std::invalid_argument("copies must be at least 1");
  // NaN and negatives fail this form; +infinity passes.
  if (!(squeezing >= 0.0)) throw std::invalid_argument("squeezing must be >= 0");
  if (!(squeezing2 >= 0.0)) throw std::invalid_argument("squeezing2 must be >= 0");
  if (!std::isfinite(input_x) || !std::isfinite(input_p)) {
    throw std::invalid_argument("input mean must be finite");
  }
  if (materialize_limit < 1) {
    throw std::invalid_argument("materialize_limit must be at least 1");
  }
  if ((variant == Variant::kA || variant == Variant::kB) && copies != 1) {
    throw std::invalid_argument(variant_name(variant) +
                                " takes a single input pair; use a-generalized for more");
  }
  if (variant == Variant::kBaseline && clones < 2 * copies) {
    throw std::invalid_argument("the standard telecloner needs at least 2N clones");
  }
}

namespace {

void require_variant(const ProtocolSpec& spec, Variant expected) {
  if (spec.variant != expected) {
    throw std::invalid_argument("spec variant is " + variant_name(spec.variant) +
                                " but the builder constructs " + variant_name(expected));
  }
}

void require_finite_squeezing(double r) {
  if (!std::isfinite(r)) {
    throw std::invalid_argument(
        "network builds need finite squeezing; infinite squeezing is closed-form only");
  }
}

void apply_plan(ProtocolBuild& build) {
  for (const Displacement& displacement : build.plan) {
    for (const FeedforwardTerm& term : displacement.terms) {
      feedforward(build.transform, build.records[static_cast<size_t>(term.record_index)],
                  displacement.target_mode, term.gain_x, term.gain_p);
    }
  }
}

double spread_against(const ModeState& reference, const ModeState& state) {
  double d = std::abs(state.mean_x - reference.mean_x);
  d = std::max(d, std::abs(state.mean_p - reference.mean_p));
  d = std::max(d, (state.cov - reference.cov).cwiseAbs().maxCoeff());
  return d;
}

CloneReport make_report(const ProtocolBuild& build) {
  const ProtocolSpec& spec = build.spec;
  CloneReport rep;
  rep.clones_total = spec.clones;
  rep.materialized = static_cast<int>(build.clone_modes.size());
  rep.negative_reflect = spec.clones < spec.copies;

  for (int mode : build.clone_modes) {
    rep.clone_states.push_back(output_state(build.inputs, build.transform, mode));
  }
  for (int mode : build.anticlone_modes) {
    rep.anticlone_states.push_back(output_state(build.inputs, build.transform, mode));
  }

  rep.predicted_clone_var = closed_form_variance(spec.variant, spec.clones, spec.copies,
                                                 spec.squeezing, spec.squeezing2,
                                                 OutputKind::kClone);
  rep.predicted_anticlone_var = closed_form_variance(spec.variant, spec.clones, spec.copies,
                                                     spec.squeezing, spec.squeezing2,
                                                     OutputKind::kAnticlone);

  const FidelityResult clone_fid =
      fidelity_vs_coherent(rep.clone_states.front(), spec.input_x, spec.input_p);
  const FidelityResult anti_fid =
      fidelity_vs_coherent(rep.anticlone_states.front(), spec.input_x, -spec.input_p);
  rep.fidelity_clone_sim = clone_fid.value;
  rep.fidelity_anticlone_sim = anti_fid.value;
  rep.fidelity_clone_formula = closed_form_fidelity(
      spec.variant, spec.clones, spec.copies, spec.squeezing, spec.squeezing2,
      OutputKind::kClone);
  rep.fidelity_anticlone_formula = closed_form_fidelity(
      spec.variant, spec.clones, spec.copies, spec.squeezing, spec.squeezing2,
      OutputKind::kAnticlone);

  double disc = 0.0;
  double mean_defect = 0.0;
  double exchange = 0.0;
  double min_det = std::numeric_limits<double>::infinity();
  for (const ModeState& state : rep.clone_states) {
    disc = std::max(disc, std::abs(state.var_x() - rep.predicted_clone_var));
    disc = std::max(disc, std::abs(state.var_p() - rep.predicted_clone_var));
    mean_defect = std::max(mean_defect, std::abs(state.mean_x - spec.input_x));
    mean_defect = std::max(mean_defect, std::abs(state.mean_p - spec.input_p));
    exchange = std::max(exchange, spread_against(rep.clone_states.front(), state));
    min_det = std::min(min_det, state.cov_det());
  }
  for (const ModeState& state : rep.anticlone_states) {
    disc = std::max(disc, std::abs(state.var_x() - rep.predicted_anticlone_var));
    disc = std::max(disc, std::abs(state.var_p() - rep.predicted_anticlone_var));
    mean_defect = std::max(mean_defect, std::abs(state.mean_x - spec.input_x));
    mean_defect = std::max(mean_defect, std::abs(state.mean_p + spec.input_p));
    exchange = std::max(exchange, spread_against(rep.anticlone_states.front(), state));
    min_det = std::min(min_det, state.cov_det());
  }
  disc = std::max(disc, std::abs(rep.fidelity_clone_sim - rep.fidelity_clone_formula));
  disc = std::max(disc, std::abs(rep.fidelity_anticlone_sim - rep.fidelity_anticlone_formula));

  rep.max_discrepancy = disc;
  rep.mean_transfer_defect = mean_defect;
  rep.exchange_defect = exchange;
  rep.min_state_det = min_det;
  rep.symplectic_defect = build.transform.symplectic_defect();
  rep.pass = rep.max_discrepancy <= kReportTol && rep.symplectic_defect <= kCheckTol &&
             rep.mean_transfer_defect <= kCheckTol && rep.exchange_defect <= kCheckTol &&
             rep.min_state_det >= 1.0 - kCheckTol;
  return rep;
}

// Shared single-EPR network. Normally the conjugate input feeds the
// unbalanced splitter and the plain input joins the measurement, which makes
// the remote cascade outputs clones and the local ones anticlones; `swapped`
// exchanges the two inputs, which exchanges the output roles as well.
ProtocolBuild build_a_family(const ProtocolSpec& spec, bool swapped) {
  spec.validate();
  require_finite_squeezing(spec.squeezing);

  ProtocolBuild build;
  build.spec = spec;
  InputRegistry& inputs = build.inputs;
  const std::pair<int, int> epr = inputs.add_epr_pair(spec.squeezing);
  std::vector<int> splitter_arm;
  std::vector<int> measured_arm;
  for (int l = 0; l < spec.copies; ++l) {
    splitter_arm.push_back(inputs.add_coherent(spec.input_x, spec.input_p, !swapped));
  }
  for (int l = 0; l < spec.copies; ++l) {
    measured_arm.push_back(inputs.add_coherent(spec.input_x, spec.input_p, swapped));
  }

  QuadratureTransform& transform = build.transform;
  transform = QuadratureTransform::identity(inputs.mode_count());
  const int splitter_in = concentrate(transform, splitter_arm);
  const int measured_in = concentrate(transform, measured_arm);

  const std::vector<int> remote = splitter_cascade_prefix(
      inputs, transform, epr.second, spec.clones, spec.materialize_limit);

  SplitterSpec bs0;
  bs0.mode_a = splitter_in;
  bs0.mode_b = epr.first;
  bs0.transmissivity = spec.transmissivity();
  bs0.convention = SplitterConvention::kBs0;
  bs0.reflect_sign = spec.clones >= spec.copies ? 1 : -1;
  beam_splitter(transform, bs0);
  // splitter_in now carries the transmitted port, epr.first the reflected one.
  const std::vector<int> local = splitter_cascade_prefix(
      inputs, transform, splitter_in, spec.clones, spec.materialize_limit);

  build.records.push_back(dual_homodyne(transform, epr.first, measured_in));
  build.pre_feedforward = transform;

  const double g1 = spec.gain_clone();
  const double g2 = spec.gain_anticlone();
  for (int mode : remote) build.plan.push_back({mode, {{0, g1, -g1}}});
  for (int mode : local) build.plan.push_back({mode, {{0, g2, g2}}});
  apply_plan(build);

  build.clone_modes = swapped ? local : remote;
  build.anticlone_modes = swapped ? remote : local;
  build.report = make_report(build);
  return build;
}

}  // namespace

ProtocolBuild build_variant_a(const ProtocolSpec& spec) {
  require_variant(spec, Variant::kA);
  return build_a_family(spec, false);
}

ProtocolBuild build_variant_a_swapped(const ProtocolSpec& spec) {
  require_variant(spec, Variant::kASwapped);
  return build_a_family(spec, true);
}

ProtocolBuild build_variant_a_generalized(const ProtocolSpec& spec) {
  require_variant(spec, Variant::kAGeneralized);
  return build_a_family(spec, false);
}

ProtocolBuild build_variant_b(const ProtocolSpec& spec) {
  require_variant(spec, Variant::kB);
  spec.validate();
  require_finite_squeezing(spec.squeezing);
  require_finite_squeezing(spec.squeezing2);

  ProtocolBuild build;
  build.spec = spec;
  InputRegistry& inputs = build.inputs;
  const std::pair<int, int> pair_a = inputs.add_epr_pair(spec.squeezing);
  const std::pair<int, int> pair_b = inputs.add_epr_pair(spec.squeezing2);
  const int plain = inputs.add_coherent(spec.input_x, spec.input_p, false);
  const int conjugate = inputs.add_coherent(spec.input_x, spec.input_p, true);

  QuadratureTransform& transform = build.transform;
  transform = QuadratureTransform::identity(inputs.mode_count());

  const std::vector<int> clone_carriers = splitter_cascade_prefix(
      inputs, transform, pair_a.second, spec.clones, spec.materialize_limit);

  SplitterSpec bs0;
  bs0.mode_a = pair_b.first;
  bs0.mode_b = pair_a.first;
  bs0.transmissivity = spec.transmissivity();
  bs0.convention = SplitterConvention::kBs0;
  beam_splitter(transform, bs0);
  const std::vector<int> anticlone_carriers = splitter_cascade_prefix(
      inputs, transform, pair_b.first, spec.clones, spec.materialize_limit);

  // Sender 1 measures the reflected port with the plain input, sender 2 the
  // second pair's spare half with the conjugate input.
  build.records.push_back(dual_homodyne(transform, pair_a.first, plain));
  build.records.push_back(dual_homodyne(transform, pair_b.second, conjugate));
  build.pre_feedforward = transform;

  const double g1 = spec.gain_clone();
  const double rg = spec.gain_anticlone();
  for (int mode : clone_carriers) build.plan.push_back({mode, {{0, g1, -g1}, {1, rg, rg}}});
  for (int mode : anticlone_carriers) {
    build.plan.push_back({mode, {{0, rg, rg}, {1, g1, -g1}}});
  }
  apply_plan(build);

  build.clone_modes = clone_carriers;
  build.anticlone_modes = anticlone_carriers;
  build.report = make_report(build);
  return build;
}

ProtocolBuild build_protocol(const ProtocolSpec& spec) {
  switch (spec.variant) {
    case Variant::kA:
      return build_variant_a(spec);
    case Variant::kASwapped:
      return build_variant_a_swapped(spec);
    case Variant::kAGeneralized:
      return build_variant_a_generalized(spec);
    case Variant::kB:
      return build_variant_b(spec);
    case Variant::kBaseline:
      break;
  }
  throw std::invalid_argument(
      "the baseline telecloner is closed-form only; no network build exists");
}

}  // namespace teleclone
