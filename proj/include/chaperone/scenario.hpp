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

#ifndef CHAPERONE__SCENARIO_HPP_
#define CHAPERONE__SCENARIO_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chaperone/common.hpp"
#include "chaperone/map.hpp"
#include "chaperone/mission.hpp"
#include "chaperone/odd.hpp"
#include "chaperone/perception.hpp"
#include "chaperone/plant.hpp"
#include "chaperone/profile.hpp"
#include "chaperone/representation.hpp"

namespace chaperone
{

enum class UserEventKind {
  SET_MISSION,
  CHANGE_DESTINATION,
  REQUEST_STOP,
  EMERGENCY_STOP,
  EXTERNAL_MESSAGE,
};

inline constexpr std::pair<UserEventKind, const char *> kUserEventKindNames[] = {
  {UserEventKind::SET_MISSION, "SET_MISSION"},
  {UserEventKind::CHANGE_DESTINATION, "CHANGE_DESTINATION"},
  {UserEventKind::REQUEST_STOP, "REQUEST_STOP"},
  {UserEventKind::EMERGENCY_STOP, "EMERGENCY_STOP"},
  {UserEventKind::EXTERNAL_MESSAGE, "EXTERNAL_MESSAGE"},
};
CHAPERONE_ENUM_IO(UserEventKind, kUserEventKindNames)

enum class EventLevel { STRATEGIC, TACTICAL, OPERATIONAL };

inline constexpr std::pair<EventLevel, const char *> kEventLevelNames[] = {
  {EventLevel::STRATEGIC, "STRATEGIC"},
  {EventLevel::TACTICAL, "TACTICAL"},
  {EventLevel::OPERATIONAL, "OPERATIONAL"},
};
CHAPERONE_ENUM_IO(EventLevel, kEventLevelNames)

struct UserEvent
{
  Tick tick = 0;
  ActorId actor;
  EventLevel level = EventLevel::TACTICAL;
  UserEventKind kind = UserEventKind::REQUEST_STOP;
  std::map<std::string, std::string> payload;

  std::string payload_value(const std::string & key) const
  {
    auto it = payload.find(key);
    return it == payload.end() ? "" : it->second;
  }
  bool operator==(const UserEvent &) const = default;
};

/// Actor roles the permission matrix distinguishes. Passenger actors map
/// to ADULT/CHILD by age; other actors use their origin name as the role.
inline constexpr const char * kRoleAdult = "ADULT";
inline constexpr const char * kRoleChild = "CHILD";

struct PermissionRule
{
  std::string role;
  EventLevel level = EventLevel::STRATEGIC;
  UserEventKind kind = UserEventKind::SET_MISSION;
  bool allow = true;

  bool operator==(const PermissionRule &) const = default;
};

/// Explicit rules override the built-in default matrix:
///   ADULT: all self-service kinds; CHILD: REQUEST_STOP and EMERGENCY_STOP
///   only; GUARDIAN_REMOTE and CONTROL_ROOM: everything; INFRASTRUCTURE
///   and OTHER_VEHICLE: EXTERNAL_MESSAGE only. A kind is only valid at
///   its natural level (mission kinds STRATEGIC; stop kinds TACTICAL;
///   EXTERNAL_MESSAGE at any level).
struct PermissionMatrix
{
  std::vector<PermissionRule> rules;

  bool allowed(const std::string & role, EventLevel level, UserEventKind kind) const;

  bool operator==(const PermissionMatrix &) const = default;
};

EventLevel natural_level(UserEventKind kind);

struct ScenarioSpec
{
  std::string name;
  std::uint64_t seed = 1;
  double horizon_s = 3600.0;
  RoadGraph map;
  std::vector<PassengerProfile> profiles;
  OddSpec odd;
  MissionObjective mission;
  std::vector<Disturbance> disturbances;
  std::vector<UserEvent> events;
  PermissionMatrix permissions;
  std::vector<ExternalMessage> externals;
  // Environment block.
  NodeId vehicle_start;
  double initial_range_m = 100000.0;
  Tick door_unlock_lead_ms = 0;
  std::map<PassengerId, Zone> start_zones;
  std::map<PassengerId, double> hr_base_bpm;

  bool operator==(const ScenarioSpec &) const = default;
};

/// Role used for permission lookups of the given actor id.
std::string actor_role(const ScenarioSpec & spec, const ActorId & actor);

Result<ScenarioSpec> parse_scenario(const std::string & text, const std::string & name_hint);
Result<ScenarioSpec> load_scenario(const std::string & path);

}  // namespace chaperone

#endif  // CHAPERONE__SCENARIO_HPP_
