// Copyright 2026 The trotterlab Authors
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

// JSON run configuration, experiment dispatch and CSV emission for the
// trotterlab command-line tool.

#ifndef TROTTERLAB_CLI_HPP
#define TROTTERLAB_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trotterlab/experiments.hpp"

namespace trotterlab::cli {

enum class Command { SweepS, SweepH, LongTime, CommutatorScan, CalculusCheck, QueryCount };

std::string_view to_string(Command command);
Command parse_command(std::string_view name);
const std::vector<Command>& all_commands();
std::string_view describe(Command command);

struct Wavepacket {
  double x0 = 0.0;
  double p0 = 0.5;

  bool operator==(const Wavepacket&) const = default;
};

struct RunConfig {
  Command command = Command::SweepS;
  std::string description;
  double a_dom = -std::numbers::pi;
  double b_dom = std::numbers::pi;
  std::string potential = "cos";
  KineticScheme kinetic = KineticScheme::FiniteDifference;
  double modifier_cutoff = 0.1;
  std::vector<std::string> observables;
  std::vector<SplittingScheme> schemes;
  SweepMode mode = SweepMode::Local;
  double h = 0.0;
  std::vector<double> h_values;
  double s = 0.0;
  std::vector<double> s_values;
  double t = 1.0;
  std::vector<int> N_values;
  std::vector<double> epsilons;
  bool expectation = true;
  Wavepacket wavepacket;
  std::string quantizer = "weyl";
  double egorov_t = 0.5;
  std::uint64_t seed = 0;
  std::string output;
  int threads = 1;

  bool operator==(const RunConfig&) const = default;
};

/// The documented defaults for a command (what an empty document parses to).
RunConfig default_config(Command command, SweepMode mode = SweepMode::Local);

/// Parses and validates a JSON document. The command comes from the document's
/// "command" key or from `command`; if both are given they must agree.
/// Throws ParseError (with line and column) or ValidationError (naming the field).
RunConfig parse_config(std::string_view text, std::optional<Command> command = std::nullopt);

/// Human-readable description of every accepted key.
std::string config_key_reference();

struct RunOptions {
  bool assert_criteria = false;
  std::optional<std::string> output;
  std::optional<int> threads;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct RunResult {
  std::string csv;
  std::vector<FitReport> fits;
  std::vector<CheckResult> checks;
  std::vector<std::string> notes;

  bool all_passed() const;
};

/// Runs the experiment without touching the filesystem.
RunResult execute(const RunConfig& config, int threads);

/// Runs, writes the CSV and prints fits (and checks with --assert) to `log`.
/// Returns 0 on success or 2 when an asserted criterion fails.
int run(const RunConfig& config, const RunOptions& options, std::ostream& log);

/// General format with 17 significant digits and a "." decimal separator.
std::string format_number(double v);

}  // namespace trotterlab::cli

#endif  // TROTTERLAB_CLI_HPP
