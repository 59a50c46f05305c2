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

#include <iosfwd>

namespace teleclone {

/// Command-line front end: subcommands simulate | sweep | verify | table.
/// Writes the report to --output or to `out`, diagnostics to `err`.
/// Returns the process exit code: 0 success, 1 failed check (network
/// invariant or sampling z-score), 2 invalid arguments.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace teleclone
