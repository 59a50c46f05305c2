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

#include "teleclone/cli.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "teleclone/reports.hpp"

namespace teleclone {

namespace {

double parse_number(const std::string& text, const char* what) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw std::invalid_argument(std::string(what) + ": cannot parse '" + text + "'");
  }
  return value;
}

std::pair<double, double> parse_input(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw std::invalid_argument("--input expects 'x,p'");
  }
  return {parse_number(text.substr(0, comma), "--input x"),
          parse_number(text.substr(comma + 1), "--input p")};
}

std::uint64_t parse_seed_text(const std::string& text, const char* what) {
  if (text.empty() || text.find('-') != std::string::npos) {
    throw std::invalid_argument(std::string(what) + ": seed must be a nonnegative integer");
  }
  errno = 0;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(text.c_str(), &end, 10);
  if (end == text.c_str() || *end != '\0' || errno == ERANGE) {
    throw std::invalid_argument(std::string(what) + ": cannot parse seed '" + text + "'");
  }
  return value;
}

// Spec flags shared by simulate, sweep, and single-cell verify.
struct SpecFlags {
  std::string variant = "a";
  int clones = 2;
  int copies = 1;
  std::string squeezing = "1";
  std::string squeezing2;
  std::string input = "2,4";
  int materialize = 16;
};

void add_spec_flags(CLI::App* cmd, SpecFlags* flags) {
  cmd->add_option("--variant", flags->variant,
                  "Network variant: a, a-swapped, a-generalized, b, baseline")
      ->capture_default_str();
  cmd->add_option("--clones,-M", flags->clones, "Output clone count M")
      ->capture_default_str();
  cmd->add_option("--copies,-N", flags->copies, "Input copy count N")
      ->capture_default_str();
  cmd->add_option("--squeezing,-r", flags->squeezing,
                  "EPR squeezing parameter r; 'inf' selects the symbolic limit")
      ->capture_default_str();
  cmd->add_option("--squeezing2", flags->squeezing2,
                  "Second pair's squeezing for variant b (defaults to --squeezing)");
  cmd->add_option("--input", flags->input, "Input coherent amplitude as 'x,p'")
      ->capture_default_str();
  cmd->add_option("--materialize", flags->materialize,
                  "Cap on explicitly materialized output modes per set")
      ->capture_default_str();
}

ProtocolSpec spec_from_flags(const SpecFlags& flags) {
  ProtocolSpec spec;
  spec.variant = variant_from_name(flags.variant);
  spec.clones = flags.clones;
  spec.copies = flags.copies;
  spec.squeezing = parse_number(flags.squeezing, "--squeezing");
  spec.squeezing2 = flags.squeezing2.empty()
                        ? spec.squeezing
                        : parse_number(flags.squeezing2, "--squeezing2");
  const auto [x, p] = parse_input(flags.input);
  spec.input_x = x;
  spec.input_p = p;
  spec.materialize_limit = flags.materialize;
  spec.validate();
  return spec;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw std::invalid_argument("cannot open output file '" + path + "'");
  file << text;
  if (!file.good()) throw std::invalid_argument("failed writing output file '" + path + "'");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gaussian phase-conjugate telecloning: simulate, sweep, verify, table"};
  app.require_subcommand(1);

  SpecFlags simulate_flags;
  std::string simulate_output;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Run one network and report states, fidelities, and invariants");
  add_spec_flags(simulate, &simulate_flags);
  simulate->add_option("--output", simulate_output, "Write the JSON report to this path");

  SpecFlags sweep_flags;
  std::string sweep_axis = "M";
  double sweep_min = 0.0;
  double sweep_max = 0.0;
  int sweep_steps = 0;
  std::string sweep_output;
  CLI::App* sweep =
      app.add_subcommand("sweep", "Emit a CSV of fidelities along one parameter axis");
  add_spec_flags(sweep, &sweep_flags);
  sweep->add_option("--axis", sweep_axis, "Sweep axis: M, N, r, or r2")->required();
  sweep->add_option("--min", sweep_min, "First grid value")->required();
  sweep->add_option("--max", sweep_max, "Last grid value")->required();
  sweep->add_option("--steps", sweep_steps,
                    "Grid point count (default: one per integer for M and N)");
  sweep->add_option("--output", sweep_output, "Write the CSV to this path");

  SpecFlags verify_flags;
  long verify_samples = 1000000;
  std::string verify_seed;
  std::string verify_output;
  CLI::App* verify = app.add_subcommand(
      "verify", "Check network statistics against the sampling oracle");
  add_spec_flags(verify, &verify_flags);
  verify->add_option("--samples", verify_samples, "Samples per cell (at least 1000)")
      ->capture_default_str();
  verify->add_option("--seed", verify_seed,
                     "Base seed; overrides TELECLONE_SEED, which overrides 0");
  verify->add_option("--output", verify_output, "Write the JSON report to this path");

  std::string table_output;
  CLI::App* table = app.add_subcommand(
      "table", "Fixed infinite-squeezing comparison against the standard telecloner");
  table->add_option("--output", table_output, "Write the CSV to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (simulate->parsed()) {
      const auto doc = simulate_document(spec_from_flags(simulate_flags));
      emit(doc.dump(2) + "\n", simulate_output, out);
      return document_reports_failure(doc) ? 1 : 0;
    }
    if (sweep->parsed()) {
      SweepRequest request;
      request.base = spec_from_flags(sweep_flags);
      request.axis = sweep_axis_from_name(sweep_axis);
      request.min = sweep_min;
      request.max = sweep_max;
      if (sweep_steps == 0) {
        const bool integer_axis = request.axis == SweepAxis::kClones ||
                                  request.axis == SweepAxis::kCopies;
        if (!integer_axis) {
          throw std::invalid_argument("--steps is required for the r and r2 axes");
        }
        const double span = sweep_max - sweep_min;
        const long long rounded = std::llround(span);
        if (!(span >= 0.0) || std::abs(span - static_cast<double>(rounded)) > 1e-9) {
          throw std::invalid_argument("integer axis range must span whole numbers");
        }
        request.steps = static_cast<int>(rounded) + 1;
      } else {
        request.steps = sweep_steps;
      }
      if (request.steps > 100000) throw std::invalid_argument("too many sweep steps");
      emit(sweep_csv(request), sweep_output, out);
      return 0;
    }
    if (verify->parsed()) {
      std::uint64_t seed = 0;
      if (verify->count("--seed") > 0) {
        seed = parse_seed_text(verify_seed, "--seed");
      } else if (const char* env = std::getenv("TELECLONE_SEED")) {
        seed = parse_seed_text(env, "TELECLONE_SEED");
      }
      std::vector<ProtocolSpec> grid;
      if (verify->count("--variant") > 0) {
        grid.push_back(spec_from_flags(verify_flags));
      } else {
        grid = default_verify_grid();
      }
      const VerifyOutcome outcome = run_verify(grid, verify_samples, seed);
      emit(outcome.document.dump(2) + "\n", verify_output, out);
      return outcome.pass ? 0 : 1;
    }
    emit(table_csv(), table_output, out);
    return 0;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace teleclone
