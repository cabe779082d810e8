// Copyright 2026 Chaperone Contributors
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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "chaperone/runtime.hpp"
#include "chaperone/scenario.hpp"

namespace
{

constexpr int kUsageError = 2;

int cmd_run(
  const std::string & scenario_path, std::optional<std::uint64_t> seed,
  std::optional<double> until_s, const std::string & log_path)
{
  auto spec = chaperone::load_scenario(scenario_path);
  if (!spec.ok()) {
    std::cerr << "error: " << chaperone::to_string(spec.error().code) << ": "
              << spec.error().message << "\n";
    return kUsageError;
  }

  chaperone::RunOverrides overrides;
  overrides.seed = seed;
  overrides.until_s = until_s;
  overrides.scenario_path = scenario_path;
  const chaperone::RunResult result = chaperone::run(spec.value(), overrides);

  for (const auto & alert : result.alerts) {
    std::cout << alert << "\n";
  }
  std::cout << "verdict=" << chaperone::to_string(result.verdict)
            << " node=" << result.final_node << " tick=" << result.final_tick << "\n";

  if (!log_path.empty()) {
    std::ofstream out(log_path);
    if (!out) {
      std::cerr << "error: cannot write log: " << log_path << "\n";
      return kUsageError;
    }
    out << result.log.to_text();
  }
  return chaperone::verdict_exit_code(result.verdict);
}

int cmd_validate(const std::string & scenario_path)
{
  auto spec = chaperone::load_scenario(scenario_path);
  if (!spec.ok()) {
    std::cerr << "invalid: " << chaperone::to_string(spec.error().code) << ": "
              << spec.error().message << "\n";
    return kUsageError;
  }
  const chaperone::ScenarioSpec & s = spec.value();
  std::cout << "valid: name=" << s.name << " nodes=" << s.map.nodes.size()
            << " edges=" << s.map.edges.size() << " passengers=" << s.profiles.size()
            << " goal=" << s.mission.goal_node << " horizon_s=" << s.horizon_s << "\n";
  return 0;
}

int cmd_replay(const std::string & log_path)
{
  auto report = chaperone::replay_file(log_path);
  if (!report.ok()) {
    std::cerr << "error: " << chaperone::to_string(report.error().code) << ": "
              << report.error().message << "\n";
    return kUsageError;
  }
  const chaperone::ReplayReport & r = report.value();
  if (r.match) {
    std::cout << "replay match: " << r.compared << " records\n";
    return 0;
  }
  std::cout << "replay diverged at tick=" << r.tick << " module=" << r.module
            << " record=" << r.compared << "\n";
  std::cout << "  recorded: " << r.expected << "\n";
  std::cout << "  rerun:    " << r.actual << "\n";
  return 1;
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"Deterministic mission simulation for an unaccompanied-passenger vehicle"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string log_path;
  std::string replay_path;
  std::optional<std::uint64_t> seed;
  std::optional<double> until_s;

  CLI::App * run = app.add_subcommand("run", "Execute a scenario to its verdict");
  run->add_option("scenario", scenario_path, "Scenario file")->required();
  run->add_option("--seed", seed, "Override the scenario seed");
  run->add_option("--until", until_s, "Cap the run at this many seconds");
  run->add_option("--log", log_path, "Write the event log to this path");

  CLI::App * validate = app.add_subcommand("validate", "Parse and check a scenario file");
  validate->add_option("scenario", scenario_path, "Scenario file")->required();

  CLI::App * replay = app.add_subcommand("replay", "Re-execute a recorded log and compare");
  replay->add_option("log", replay_path, "Event log produced by run --log")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    const int code = app.exit(e);
    // CLI11 returns 0 for --help; anything else is a usage error.
    return code == 0 ? 0 : kUsageError;
  }

  if (run->parsed()) {
    return cmd_run(scenario_path, seed, until_s, log_path);
  }
  if (validate->parsed()) {
    return cmd_validate(scenario_path);
  }
  return cmd_replay(replay_path);
}
