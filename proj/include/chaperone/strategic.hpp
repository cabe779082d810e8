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

#ifndef CHAPERONE__STRATEGIC_HPP_
#define CHAPERONE__STRATEGIC_HPP_

#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chaperone/actuation.hpp"
#include "chaperone/common.hpp"
#include "chaperone/map.hpp"
#include "chaperone/mission.hpp"
#include "chaperone/odd.hpp"
#include "chaperone/profile.hpp"
#include "chaperone/representation.hpp"

namespace chaperone
{

enum class StrategyAction { CONTINUE, DIVERT, RETURN, STOP_IMMEDIATELY };

inline constexpr std::pair<StrategyAction, const char *> kStrategyActionNames[] = {
  {StrategyAction::CONTINUE, "CONTINUE"},
  {StrategyAction::DIVERT, "DIVERT"},
  {StrategyAction::RETURN, "RETURN"},
  {StrategyAction::STOP_IMMEDIATELY, "STOP_IMMEDIATELY"},
};
CHAPERONE_ENUM_IO(StrategyAction, kStrategyActionNames)

enum class AlertRecipient { CONTROL_ROOM, RESCUE };

inline constexpr std::pair<AlertRecipient, const char *> kAlertRecipientNames[] = {
  {AlertRecipient::CONTROL_ROOM, "CONTROL_ROOM"},
  {AlertRecipient::RESCUE, "RESCUE"},
};
CHAPERONE_ENUM_IO(AlertRecipient, kAlertRecipientNames)

struct AlertRequest
{
  AlertRecipient recipient = AlertRecipient::CONTROL_ROOM;
  Hazard hazard;

  bool operator==(const AlertRequest &) const = default;
};

/// Harm metric, minimized lexicographically. Unresolvable hazards and
/// abandoned missions carry infinite components.
struct HarmScore
{
  int severity = 0;
  double time_to_resolution_s = 0.0;
  double mission_delay_s = 0.0;

  friend bool operator<(const HarmScore & a, const HarmScore & b)
  {
    if (a.severity != b.severity) {
      return a.severity < b.severity;
    }
    if (a.time_to_resolution_s != b.time_to_resolution_s) {
      return a.time_to_resolution_s < b.time_to_resolution_s;
    }
    return a.mission_delay_s < b.mission_delay_s;
  }
  bool operator==(const HarmScore &) const = default;
};

struct ActionCandidate
{
  StrategyAction action = StrategyAction::CONTINUE;
  NodeId goal;

  bool operator==(const ActionCandidate &) const = default;
};

struct ScoredOption
{
  ActionCandidate candidate;
  HarmScore score;

  bool operator==(const ScoredOption &) const = default;
};

struct StrategyPlan
{
  StrategyAction action = StrategyAction::CONTINUE;
  NodeId goal_node;
  Route route;
  std::optional<AlertRequest> alert;
  std::vector<ScoredOption> rationale;
  // Mission context pinned at acceptance.
  NodeId mission_goal;
  NodeId departure_node;
  RouteConstraints constraints;

  bool operator==(const StrategyPlan &) const = default;
};

struct AcceptOutcome
{
  std::optional<StrategyPlan> plan;
  std::vector<OddViolation> violations;
  std::optional<Error> error;

  bool accepted() const { return plan.has_value(); }
};

/// Gate a mission through the ODD and plan its initial route. Constraints
/// derive from the ODD spec and the manifest's known areas.
AcceptOutcome accept_mission(
  const MissionObjective & obj, const std::vector<PassengerProfile> & profiles,
  const OddSpec & odd, const WorldModel & w);

/// Harm of taking `candidate` given the projection and current hazards.
/// The dominant (highest-severity) hazard defines resolution: a care
/// facility resolves MEDICAL_EMERGENCY, any stop resolves EXPOSURE_RISK.
HarmScore score_option(
  const ActionCandidate & candidate, const WorldProjection & proj,
  const std::vector<Hazard> & hazards);

/// Re-evaluates the four courses of action and picks the lexicographic
/// minimum HarmScore; ties resolve by action declaration order. Attaches
/// an alert iff the dominant hazard severity is 2 or higher.
StrategyPlan replan(
  const StrategyPlan & current, const WorldModel & w, const std::vector<Hazard> & hazards,
  const PerformanceReport & perf);

}  // namespace chaperone

#endif  // CHAPERONE__STRATEGIC_HPP_
