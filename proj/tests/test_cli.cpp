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

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "trotterlab/cli.hpp"

namespace trotterlab::cli {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("trotterlab_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int exit_code(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string binary() { return TROTTERLAB_BINARY; }
fs::path preset(const std::string& name) { return fs::path(TROTTERLAB_PRESETS) / (name + ".json"); }

TEST(Commands, NamesRoundTrip) {
  for (Command c : all_commands()) {
    EXPECT_EQ(parse_command(to_string(c)), c);
    EXPECT_FALSE(describe(c).empty());
  }
  EXPECT_EQ(all_commands().size(), 6u);
  EXPECT_THROW(parse_command("sweep"), InvalidArgument);
}

TEST(ParseConfig, EmptyDocumentIsDefault) {
  for (Command c : all_commands()) EXPECT_EQ(parse_config("{}", c), default_config(c)) << to_string(c);
  EXPECT_EQ(parse_config(R"({"mode": "global"})", Command::SweepS), default_config(Command::SweepS, SweepMode::Global));
  EXPECT_EQ(parse_config(R"({"command": "query-count"})"), default_config(Command::QueryCount));
}

TEST(ParseConfig, ReadsFields) {
  const RunConfig c = parse_config(R"({
    "command": "sweep-h", "domain": [0, 6.5], "potential": "cos2", "kinetic": "modified_spectral",
    "modifier_cutoff": 0.2, "observables": ["p"], "schemes": ["strang2"], "h_values": [0.125, 0.0625],
    "s": 0.05, "expectation": false, "wavepacket": {"x0": 1.0, "p0": -0.25}, "seed": 42, "threads": 2,
    "output": "out.csv"})");
  EXPECT_EQ(c.command, Command::SweepH);
  EXPECT_EQ(c.a_dom, 0.0);
  EXPECT_EQ(c.b_dom, 6.5);
  EXPECT_EQ(c.potential, "cos2");
  EXPECT_EQ(c.kinetic, KineticScheme::ModifiedPseudoSpectral);
  EXPECT_EQ(c.modifier_cutoff, 0.2);
  EXPECT_EQ(c.observables, std::vector<std::string>{"p"});
  EXPECT_EQ(c.schemes, std::vector<SplittingScheme>{SplittingScheme::Strang2});
  EXPECT_EQ(c.h_values, (std::vector<double>{0.125, 0.0625}));
  EXPECT_EQ(c.s, 0.05);
  EXPECT_FALSE(c.expectation);
  EXPECT_EQ(c.wavepacket, (Wavepacket{1.0, -0.25}));
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.threads, 2);
  EXPECT_EQ(c.output, "out.csv");
}

void expect_field(const std::string& text, const std::string& field, Command c = Command::SweepS) {
  try {
    parse_config(text, c);
    ADD_FAILURE() << "no error for " << text;
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.field(), field) << text;
  }
}

TEST(ParseConfig, ValidationNamesTheField) {
  expect_field(R"({"h": 2.0})", "h");
  expect_field(R"({"h": "small"})", "h");
  expect_field(R"({"frobnicate": 1})", "frobnicate");
  expect_field(R"({"schemes": ["strang3"]})", "schemes");
  expect_field(R"({"observables": []})", "observables");
  expect_field(R"({"kinetic": "fft"})", "kinetic");
  expect_field(R"({"modifier_cutoff": 0.5})", "modifier_cutoff");
  expect_field(R"({"threads": 0})", "threads");
  expect_field(R"({"domain": [1, 1]})", "domain");
  expect_field(R"({"command": "sweep-h"})", "command");
  expect_field(R"({"N_values": [24]})", "N_values", Command::CalculusCheck);
  expect_field(R"({"quantizer": "right"})", "quantizer", Command::CalculusCheck);
  expect_field(R"({"epsilons": [1.5]})", "epsilons", Command::QueryCount);
  expect_field(R"({"mode": "global", "s_values": [0.3]})", "s_values");
  expect_field("[1, 2]", "<root>");
}

TEST(ParseConfig, SyntaxErrorsCarryPosition) {
  try {
    parse_config("{\n  \"h\": 0.1,\n  \"t\" 1\n}", Command::SweepS);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_GE(e.column(), 6);
  }
}

TEST(ParseConfig, PresetsParse) {
  for (const auto& entry : fs::directory_iterator(TROTTERLAB_PRESETS)) {
    EXPECT_NO_THROW(parse_config(slurp(entry.path()))) << entry.path();
  }
  const RunConfig lte = parse_config(slurp(preset("lte_s")));
  EXPECT_EQ(lte.h, 1.0 / 64);
  EXPECT_EQ(lte.s_values.front(), 1.0 / 16);
  EXPECT_EQ(lte.s_values.back(), 1.0 / 2048);
}

TEST(KeyReference, ListsEveryKey) {
  const std::string ref = config_key_reference();
  for (const char* key : {"command", "domain", "kinetic", "schemes", "h_values", "s_values", "N_values", "epsilons",
                          "wavepacket", "quantizer", "threads"}) {
    EXPECT_NE(ref.find(key), std::string::npos) << key;
  }
}

TEST(FormatNumber, ShortestRoundTrip) {
  EXPECT_EQ(format_number(0.5), "0.5");
  EXPECT_EQ(format_number(64), "64");
  EXPECT_EQ(std::stod(format_number(0.1)), 0.1);
  EXPECT_EQ(std::stod(format_number(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(Execute, DeterministicAcrossThreadCounts) {
  RunConfig c = default_config(Command::CommutatorScan);
  c.h_values = {0.125, 0.0625, 0.03125};
  const RunResult one = execute(c, 1);
  const RunResult four = execute(c, 4);
  EXPECT_EQ(one.csv, four.csv);
  EXPECT_EQ(one.csv.substr(0, one.csv.find('\n')), "h,N,quantity,value");
}

TEST(Execute, LeftQuantizerFailsRateChecks) {
  RunConfig c = default_config(Command::CalculusCheck);
  c.N_values = {16, 32, 64};
  c.quantizer = "left";
  EXPECT_FALSE(execute(c, 1).all_passed());
  c.quantizer = "weyl";
  EXPECT_TRUE(execute(c, 1).all_passed());
}

TEST(Binary, HelpListsCommandsAndKeys) {
  const fs::path dir = scratch_dir("help");
  const fs::path out = dir / "help.txt";
  EXPECT_EQ(exit_code(binary() + " --help > " + out.string() + " 2>&1"), 0);
  const std::string text = slurp(out);
  for (Command c : all_commands()) EXPECT_NE(text.find(std::string(to_string(c))), std::string::npos);
  EXPECT_NE(text.find("N_values"), std::string::npos);
  EXPECT_NE(text.find("modifier_cutoff"), std::string::npos);
}

TEST(Binary, RunsAreByteIdentical) {
  const fs::path dir = scratch_dir("repeat");
  const std::string base = binary() + " commutator-scan --config " + preset("commutator_scan").string() + " --out ";
  ASSERT_EQ(exit_code(base + (dir / "a.csv").string() + " > /dev/null"), 0);
  ASSERT_EQ(exit_code(base + (dir / "b.csv").string() + " --threads 3 > /dev/null"), 0);
  EXPECT_EQ(slurp(dir / "a.csv"), slurp(dir / "b.csv"));
  EXPECT_FALSE(slurp(dir / "a.csv").empty());
}

TEST(Binary, ExitCodes) {
  const fs::path dir = scratch_dir("codes");
  EXPECT_EQ(exit_code(binary() + " calculus-check --assert --config " + preset("calculus_check_left").string() +
                      " --out " + (dir / "left.csv").string() + " > /dev/null"),
            2);
  std::ofstream(dir / "bad.json") << R"({"h": -1})";
  EXPECT_EQ(exit_code(binary() + " sweep-s --config " + (dir / "bad.json").string() + " > /dev/null 2>&1"), 1);
  EXPECT_EQ(exit_code(binary() + " sweep-s --config " + (dir / "missing.json").string() + " > /dev/null 2>&1"), 1);
  EXPECT_EQ(exit_code(binary() + " no-such-command > /dev/null 2>&1"), 1);
}

}  // namespace
}  // namespace trotterlab::cli
