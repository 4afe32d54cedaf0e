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

// trotterlab <command> --config <path> [--assert] [--out <path>] [--threads <n>]

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "trotterlab/cli.hpp"

namespace {

namespace tc = trotterlab::cli;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw trotterlab::Error("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trotter splitting error experiments for the semiclassical Schroedinger equation"};
  app.require_subcommand(1);
  app.footer("\nExit status: 0 success, 1 error, 2 an asserted criterion failed.\n\n" + tc::config_key_reference());

  std::string config_path;
  bool assert_criteria = false;
  std::string out_path;
  int threads = 0;

  for (tc::Command command : tc::all_commands()) {
    CLI::App* sub = app.add_subcommand(std::string(tc::to_string(command)), std::string(tc::describe(command)));
    sub->add_option("--config", config_path, "JSON configuration file")->required();
    sub->add_flag("--assert", assert_criteria, "check the acceptance criteria and exit 2 on failure");
    sub->add_option("--out", out_path, "CSV output path (overrides the config)");
    sub->add_option("--threads", threads, "worker threads (overrides the config)")->check(CLI::PositiveNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    const tc::Command command = tc::parse_command(app.get_subcommands().front()->get_name());
    const tc::RunConfig config = tc::parse_config(read_file(config_path), command);
    tc::RunOptions options;
    options.assert_criteria = assert_criteria;
    if (!out_path.empty()) options.output = out_path;
    if (threads > 0) options.threads = threads;
    return tc::run(config, options, std::cout);
  } catch (const trotterlab::ParseError& e) {
    std::cerr << "error: " << config_path << ": " << e.what() << '\n';
  } catch (const trotterlab::ValidationError& e) {
    std::cerr << "error: " << config_path << ": invalid field " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return 1;
}
