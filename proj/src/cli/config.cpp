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

#include <algorithm>
#include <cmath>
#include <set>

#include "json.hpp"
#include "trotterlab/cli.hpp"

namespace trotterlab::cli {

namespace {

using json = nlohmann::json;

struct KeyDoc {
  const char* key;
  const char* doc;
};

// Order here is the order of the --help listing.
constexpr KeyDoc kKeys[] = {
    {"command", "string; sweep-s | sweep-h | long-time | commutator-scan | calculus-check | query-count. "
                "Optional, must match the command given on the command line"},
    {"description", "string; free text, ignored"},
    {"domain", "[a, b]; periodic domain endpoints (default [-pi, pi])"},
    {"potential", "string; cos | cos2 | zero (default cos)"},
    {"kinetic", "string; fd | spectral | modified_spectral (default fd)"},
    {"modifier_cutoff", "number in (0, 1/2); cutoff width c for modified_spectral (default 0.1)"},
    {"observables", "list of cos | p (default [cos, p]; query-count uses the first, default [cos])"},
    {"schemes", "list of lie1 | strang2 (default [lie1, strang2]; query-count default [strang2])"},
    {"mode", "string; local | global, for sweep-s and sweep-h (default local)"},
    {"h", "number in (0, 1]; Planck constant for sweep-s (default 1/64 local, 1/256 global and long-time)"},
    {"h_values", "list in (0, 1]; h grid for sweep-h, long-time, commutator-scan, query-count"},
    {"s", "number > 0; step size for sweep-h (default 0.1 local, 0.02 global and long-time)"},
    {"s_values", "list > 0; step sizes for sweep-s and long-time (default 2^-4 .. 2^-11)"},
    {"t", "number > 0; final time for global runs and query-count (default 1)"},
    {"N_values", "list of powers of two >= 16; dimensions for calculus-check (default 16 .. 256)"},
    {"epsilons", "list in (0, 1); tolerances for query-count (default [0.03, 0.0075, 0.01, 0.0025])"},
    {"expectation", "bool; also report expectation errors for the Gaussian wavepacket (default true)"},
    {"wavepacket", "{\"x0\": number, \"p0\": number}; wavepacket centre and momentum (default 0, 0.5)"},
    {"quantizer", "string; weyl | left for calculus-check (left is a deliberately wrong ordering)"},
    {"egorov_t", "number with |t| <= 1; Egorov time for calculus-check (default 0.5)"},
    {"seed", "non-negative integer; recorded in the output metadata"},
    {"output", "string; CSV path (default <command>.csv)"},
    {"threads", "positive integer; worker threads (default 1)"},
};

std::vector<double> powers_of_two(int from, int to) {
  std::vector<double> out;
  for (int e = from; e >= to; --e) out.push_back(std::ldexp(1.0, e));
  return out;
}

[[noreturn]] void invalid(const std::string& field, const std::string& what) { throw ValidationError(field, what); }

double get_number(const json& v, const std::string& field) {
  if (!v.is_number()) invalid(field, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) invalid(field, "must be finite");
  return d;
}

std::string get_string(const json& v, const std::string& field) {
  if (!v.is_string()) invalid(field, "expected a string");
  return v.get<std::string>();
}

std::vector<double> get_numbers(const json& v, const std::string& field) {
  if (!v.is_array()) invalid(field, "expected a list of numbers");
  if (v.empty()) invalid(field, "must not be empty");
  std::vector<double> out;
  for (const auto& e : v) out.push_back(get_number(e, field));
  return out;
}

std::vector<std::string> get_strings(const json& v, const std::string& field) {
  if (!v.is_array()) invalid(field, "expected a list of strings");
  if (v.empty()) invalid(field, "must not be empty");
  std::vector<std::string> out;
  for (const auto& e : v) out.push_back(get_string(e, field));
  return out;
}

long get_integer(const json& v, const std::string& field) {
  if (!v.is_number_integer()) invalid(field, "expected an integer");
  return v.get<long>();
}

void check_h(double h, const std::string& field) {
  if (!(h > 0.0 && h <= 1.0)) invalid(field, "h must lie in (0, 1], got " + format_number(h));
}

void check_positive(double v, const std::string& field) {
  if (!(v > 0.0)) invalid(field, "must be positive, got " + format_number(v));
}

// Converts library argument errors raised while interpreting a field.
template <typename F>
auto as_field(const std::string& field, F&& f) {
  try {
    return f();
  } catch (const InvalidArgument& e) {
    invalid(field, e.what());
  }
}

std::pair<int, int> line_column(std::string_view text, std::size_t byte) {
  int line = 1;
  int column = 1;
  const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

bool uses_mode(Command c) { return c == Command::SweepS || c == Command::SweepH; }

}  // namespace

std::string_view to_string(Command command) {
  switch (command) {
    case Command::SweepS:
      return "sweep-s";
    case Command::SweepH:
      return "sweep-h";
    case Command::LongTime:
      return "long-time";
    case Command::CommutatorScan:
      return "commutator-scan";
    case Command::CalculusCheck:
      return "calculus-check";
    case Command::QueryCount:
      return "query-count";
  }
  return "sweep-s";
}

Command parse_command(std::string_view name) {
  for (Command c : all_commands()) {
    if (to_string(c) == name) return c;
  }
  throw InvalidArgument("unknown command '" + std::string(name) + "'");
}

const std::vector<Command>& all_commands() {
  static const std::vector<Command> commands{Command::SweepS,         Command::SweepH,
                                             Command::LongTime,       Command::CommutatorScan,
                                             Command::CalculusCheck,  Command::QueryCount};
  return commands;
}

std::string_view describe(Command command) {
  switch (command) {
    case Command::SweepS:
      return "observable error against the Trotter step s at fixed h (one step, or to time t in global mode)";
    case Command::SweepH:
      return "unitary and observable errors against h at fixed s, with N = (b-a)/(2 pi h)";
    case Command::LongTime:
      return "global s-sweep at h=1/256 followed by the global h-sweep at s=0.02, t=1";
    case Command::CommutatorScan:
      return "norms of A/h, B/h and their nested commutators against h";
    case Command::CalculusCheck:
      return "composition, commutator, Calderon-Vaillancourt and Egorov remainders of the torus quantization";
    case Command::QueryCount:
      return "smallest Trotter step count meeting an observable error tolerance, at several h";
  }
  return "";
}

RunConfig default_config(Command command, SweepMode mode) {
  RunConfig c;
  c.command = command;
  c.mode = uses_mode(command) ? mode : SweepMode::Global;
  c.observables = {"cos", "p"};
  c.schemes = {SplittingScheme::Lie1, SplittingScheme::Strang2};
  c.output = std::string(to_string(command)) + ".csv";
  const bool global = c.mode == SweepMode::Global;
  switch (command) {
    case Command::SweepS:
      c.h = global ? 1.0 / 256.0 : 1.0 / 64.0;
      c.s_values = powers_of_two(-4, -11);
      break;
    case Command::SweepH:
      c.s = global ? 0.02 : 0.1;
      c.h_values = powers_of_two(-3, -10);
      break;
    case Command::LongTime:
      c.h = 1.0 / 256.0;
      c.s = 0.02;
      c.s_values = powers_of_two(-4, -11);
      c.h_values = powers_of_two(-3, -10);
      break;
    case Command::CommutatorScan:
      c.h_values = powers_of_two(-3, -8);
      break;
    case Command::CalculusCheck:
      c.N_values = {16, 32, 64, 128, 256};
      break;
    case Command::QueryCount:
      c.observables = {"cos"};
      c.schemes = {SplittingScheme::Strang2};
      c.h_values = {1.0 / 64.0, 1.0 / 256.0};
      c.epsilons = {3e-2, 7.5e-3, 1e-2, 2.5e-3};
      break;
  }
  return c;
}

RunConfig parse_config(std::string_view text, std::optional<Command> command) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte);
    throw ParseError("invalid JSON at line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                         e.what(),
                     line, column);
  }
  if (!doc.is_object()) throw ValidationError("<root>", "configuration must be a JSON object");

  std::set<std::string> known;
  for (const auto& k : kKeys) known.insert(k.key);
  for (const auto& [key, value] : doc.items()) {
    if (!known.count(key)) invalid(key, "unknown key");
  }

  if (doc.contains("command")) {
    const std::string name = get_string(doc["command"], "command");
    const Command from_doc = as_field("command", [&] { return parse_command(name); });
    if (command && *command != from_doc) {
      invalid("command", "document says '" + name + "' but '" + std::string(to_string(*command)) + "' was requested");
    }
    command = from_doc;
  }
  if (!command) invalid("command", "no command given");

  SweepMode mode = SweepMode::Local;
  if (doc.contains("mode")) {
    if (!uses_mode(*command)) invalid("mode", "only sweep-s and sweep-h accept a mode");
    const std::string name = get_string(doc["mode"], "mode");
    mode = as_field("mode", [&] { return parse_mode(name); });
  }
  RunConfig c = default_config(*command, mode);

  if (doc.contains("description")) c.description = get_string(doc["description"], "description");
  if (doc.contains("domain")) {
    const auto d = get_numbers(doc["domain"], "domain");
    if (d.size() != 2 || !(d[1] > d[0])) invalid("domain", "expected [a, b] with a < b");
    c.a_dom = d[0];
    c.b_dom = d[1];
  }
  if (doc.contains("potential")) {
    c.potential = get_string(doc["potential"], "potential");
    as_field("potential", [&] { return potential_by_id(c.potential); });
  }
  if (doc.contains("kinetic")) {
    const std::string name = get_string(doc["kinetic"], "kinetic");
    c.kinetic = as_field("kinetic", [&] { return parse_kinetic(name); });
  }
  if (doc.contains("modifier_cutoff")) {
    c.modifier_cutoff = get_number(doc["modifier_cutoff"], "modifier_cutoff");
    if (!(c.modifier_cutoff > 0.0 && c.modifier_cutoff < 0.5)) invalid("modifier_cutoff", "must lie in (0, 1/2)");
  }
  if (doc.contains("observables")) {
    c.observables = get_strings(doc["observables"], "observables");
    for (const auto& o : c.observables) {
      if (o != "cos" && o != "p") invalid("observables", "unknown observable '" + o + "'");
    }
  }
  if (doc.contains("schemes")) {
    c.schemes.clear();
    for (const auto& name : get_strings(doc["schemes"], "schemes")) {
      c.schemes.push_back(as_field("schemes", [&] { return parse_scheme(name); }));
    }
  }
  if (doc.contains("h")) {
    c.h = get_number(doc["h"], "h");
    check_h(c.h, "h");
  }
  if (doc.contains("h_values")) {
    c.h_values = get_numbers(doc["h_values"], "h_values");
    for (double h : c.h_values) check_h(h, "h_values");
  }
  if (doc.contains("s")) {
    c.s = get_number(doc["s"], "s");
    check_positive(c.s, "s");
  }
  if (doc.contains("s_values")) {
    c.s_values = get_numbers(doc["s_values"], "s_values");
    for (double s : c.s_values) check_positive(s, "s_values");
  }
  if (doc.contains("t")) {
    c.t = get_number(doc["t"], "t");
    check_positive(c.t, "t");
  }
  if (doc.contains("N_values")) {
    if (!doc["N_values"].is_array() || doc["N_values"].empty()) invalid("N_values", "expected a non-empty list");
    c.N_values.clear();
    for (const auto& v : doc["N_values"]) {
      const long n = get_integer(v, "N_values");
      if (n < 16 || n > 4096 || !is_power_of_two(static_cast<std::size_t>(n))) {
        invalid("N_values", "entries must be powers of two in [16, 4096]");
      }
      c.N_values.push_back(static_cast<int>(n));
    }
  }
  if (doc.contains("epsilons")) {
    c.epsilons = get_numbers(doc["epsilons"], "epsilons");
    for (double e : c.epsilons) {
      if (!(e > 0.0 && e < 1.0)) invalid("epsilons", "entries must lie in (0, 1)");
    }
  }
  if (doc.contains("expectation")) {
    if (!doc["expectation"].is_boolean()) invalid("expectation", "expected true or false");
    c.expectation = doc["expectation"].get<bool>();
  }
  if (doc.contains("wavepacket")) {
    const json& w = doc["wavepacket"];
    if (!w.is_object()) invalid("wavepacket", "expected an object with x0 and p0");
    for (const auto& [key, value] : w.items()) {
      if (key == "x0") {
        c.wavepacket.x0 = get_number(value, "wavepacket.x0");
      } else if (key == "p0") {
        c.wavepacket.p0 = get_number(value, "wavepacket.p0");
      } else {
        invalid("wavepacket." + key, "unknown key");
      }
    }
  }
  if (doc.contains("quantizer")) {
    c.quantizer = get_string(doc["quantizer"], "quantizer");
    if (c.quantizer != "weyl" && c.quantizer != "left") invalid("quantizer", "expected weyl or left");
  }
  if (doc.contains("egorov_t")) {
    c.egorov_t = get_number(doc["egorov_t"], "egorov_t");
    if (std::abs(c.egorov_t) > 1.0) invalid("egorov_t", "must satisfy |t| <= 1");
  }
  if (doc.contains("seed")) {
    const json& v = doc["seed"];
    if (!v.is_number_unsigned()) invalid("seed", "expected a non-negative integer");
    c.seed = v.get<std::uint64_t>();
  }
  if (doc.contains("output")) {
    c.output = get_string(doc["output"], "output");
    if (c.output.empty()) invalid("output", "must not be empty");
  }
  if (doc.contains("threads")) {
    const long n = get_integer(doc["threads"], "threads");
    if (n < 1 || n > 256) invalid("threads", "must lie in [1, 256]");
    c.threads = static_cast<int>(n);
  }

  // Cross-field checks.
  if (!(c.wavepacket.x0 > c.a_dom && c.wavepacket.x0 < c.b_dom)) invalid("wavepacket.x0", "must lie inside the domain");
  const bool global = c.command == Command::LongTime || (uses_mode(c.command) && c.mode == SweepMode::Global);
  if (global && (c.command == Command::SweepS || c.command == Command::LongTime)) {
    for (double s : c.s_values) as_field("s_values", [&] { return steps_for(c.t, s); });
  }
  if (global && (c.command == Command::SweepH || c.command == Command::LongTime)) {
    as_field("s", [&] { return steps_for(c.t, c.s); });
  }
  return c;
}

std::string config_key_reference() {
  std::string out = "Configuration keys (JSON object; unknown keys are rejected):\n";
  for (const auto& k : kKeys) {
    const std::string key = k.key;
    out += "  " + key + std::string(key.size() < 16 ? 16 - key.size() : 1, ' ');
    out += k.doc;
    out += '\n';
  }
  return out;
}

}  // namespace trotterlab::cli
