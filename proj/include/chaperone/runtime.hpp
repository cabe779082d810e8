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

#ifndef CHAPERONE__RUNTIME_HPP_
#define CHAPERONE__RUNTIME_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chaperone/common.hpp"
#include "chaperone/event_log.hpp"
#include "chaperone/scenario.hpp"
#include "chaperone/strategic.hpp"

namespace chaperone
{

/// Terminal mission outcome, judged at the final deboarding node.
enum class Verdict { COMPLETED, DIVERTED, RETURNED, STOPPED, REJECTED };

inline constexpr std::pair<Verdict, const char *> kVerdictNames[] = {
  {Verdict::COMPLETED, "COMPLETED"},
  {Verdict::DIVERTED, "DIVERTED"},
  {Verdict::RETURNED, "RETURNED"},
  {Verdict::STOPPED, "STOPPED"},
  {Verdict::REJECTED, "REJECTED"},
};
CHAPERONE_ENUM_IO(Verdict, kVerdictNames)

/// Process exit code for a finished run: COMPLETED maps to 0, every
/// other verdict to a distinct nonzero code.
int verdict_exit_code(Verdict v);

enum class Audience { ONBOARD, REMOTE, OTHER_ROAD_USERS };

inline constexpr std::pair<Audience, const char *> kAudienceNames[] = {
  {Audience::ONBOARD, "ONBOARD"},
  {Audience::REMOTE, "REMOTE"},
  {Audience::OTHER_ROAD_USERS, "OTHER_ROAD_USERS"},
};
CHAPERONE_ENUM_IO(Audience, kAudienceNames)

/// Passenger-facing or road-facing announcement. Logged, never acted on.
struct InfoOutput
{
  Tick tick = 0;
  EventLevel level = EventLevel::STRATEGIC;
  Audience audience = Audience::ONBOARD;
  std::string content;
  std::string detail;

  bool operator==(const InfoOutput &) const = default;
};

struct RunOverrides
{
  std::optional<std::uint64_t> seed;
  std::optional<double> until_s;
  // Recorded in the log header so a replay can reload the scenario.
  std::string scenario_path;
};

struct RunResult
{
  EventLog log;
  Verdict verdict = Verdict::STOPPED;
  Tick final_tick = 0;
  NodeId final_node;
  // Control-room / rescue wire lines, in emission order.
  std::vector<std::string> alerts;
  std::vector<InfoOutput> infos;
};

/// Permission decision for one user event.
struct RouteDecision
{
  bool allowed = false;
  std::string role;
};

/// Permission gate: resolves the actor's role and checks the scenario
/// matrix. Carries no side effects; the harness logs the disposition.
RouteDecision route_user_event(const UserEvent & ev, const ScenarioSpec & spec);

/// Single-line alert wire format:
/// `tick=<ms> recipient=<who> hazard_kind=<kind> subject=<id> node=<node>`.
std::string alert_wire_line(Tick tick, const AlertRequest & req, const NodeId & node);

/// Closed-loop execution of one scenario to a terminal verdict or the
/// horizon. Deterministic: equal spec and seed give byte-equal logs.
RunResult run(const ScenarioSpec & spec, const RunOverrides & overrides = {});

struct ReplayReport
{
  bool match = false;
  std::size_t compared = 0;
  // First divergence, when match is false.
  Tick tick = 0;
  std::string module;
  std::string expected;
  std::string actual;
};

/// Re-executes the scenario recorded in a log's header and compares
/// record-for-record against the recorded run.
Result<ReplayReport> replay_log_text(const std::string & log_text);
Result<ReplayReport> replay_file(const std::string & path);

}  // namespace chaperone

#endif  // CHAPERONE__RUNTIME_HPP_
