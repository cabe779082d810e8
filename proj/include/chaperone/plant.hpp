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

#ifndef CHAPERONE__PLANT_HPP_
#define CHAPERONE__PLANT_HPP_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "chaperone/actuation.hpp"
#include "chaperone/common.hpp"
#include "chaperone/map.hpp"
#include "chaperone/perception.hpp"
#include "chaperone/representation.hpp"
#include "chaperone/vehicle.hpp"

namespace chaperone
{

inline constexpr double kSensorRangeM = 50.0;
inline constexpr Tick kReactionMs = 2000;
inline constexpr Tick kManualReleaseMs = 5000;

enum class DisturbanceCategory { ENVIRONMENT, VEHICLE, PASSENGER };

inline constexpr std::pair<DisturbanceCategory, const char *> kDisturbanceCategoryNames[] = {
  {DisturbanceCategory::ENVIRONMENT, "ENVIRONMENT"},
  {DisturbanceCategory::VEHICLE, "VEHICLE"},
  {DisturbanceCategory::PASSENGER, "PASSENGER"},
};
CHAPERONE_ENUM_IO(DisturbanceCategory, kDisturbanceCategoryNames)

// The taxonomy is open-ended by design; these are the subtypes the
// simulation knows how to actuate.
enum class DisturbanceSubtype {
  ENV_TRAFFIC,
  ENV_BLOCKED_EDGE,
  ENV_OBSTRUCTION,
  ENV_WEATHER,
  VEH_DOOR_ACTUATOR_FAULT,
  VEH_RANGE_LOSS,
  PAX_MEDICAL_EVENT,
  PAX_UNSCRIPTED_MOVEMENT,
};

inline constexpr std::pair<DisturbanceSubtype, const char *> kDisturbanceSubtypeNames[] = {
  {DisturbanceSubtype::ENV_TRAFFIC, "ENV_TRAFFIC"},
  {DisturbanceSubtype::ENV_BLOCKED_EDGE, "ENV_BLOCKED_EDGE"},
  {DisturbanceSubtype::ENV_OBSTRUCTION, "ENV_OBSTRUCTION"},
  {DisturbanceSubtype::ENV_WEATHER, "ENV_WEATHER"},
  {DisturbanceSubtype::VEH_DOOR_ACTUATOR_FAULT, "VEH_DOOR_ACTUATOR_FAULT"},
  {DisturbanceSubtype::VEH_RANGE_LOSS, "VEH_RANGE_LOSS"},
  {DisturbanceSubtype::PAX_MEDICAL_EVENT, "PAX_MEDICAL_EVENT"},
  {DisturbanceSubtype::PAX_UNSCRIPTED_MOVEMENT, "PAX_UNSCRIPTED_MOVEMENT"},
};
CHAPERONE_ENUM_IO(DisturbanceSubtype, kDisturbanceSubtypeNames)

DisturbanceCategory category_of(DisturbanceSubtype subtype);

/// Scripted deviation. Params are subtype-specific string pairs
/// (see docs/scenario_format.md for the key tables).
struct Disturbance
{
  DisturbanceSubtype subtype = DisturbanceSubtype::ENV_TRAFFIC;
  Tick onset = 0;
  Tick expiry = kInfDuration;
  std::map<std::string, std::string> params;

  std::string param(const std::string & key, const std::string & fallback = "") const
  {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  }
  bool operator==(const Disturbance &) const = default;
};

/// Ground-truth record for one manifest passenger.
struct PassengerTruth
{
  PassengerId id;
  Zone zone = Zone::OUTSIDE_NEAR;
  double distance_m = 1.0;
  double hr_base_bpm = 75.0;
  double hr_bpm = 75.0;
  bool fallen = false;
  bool has_ridden = false;
  Tick next_move_at = -1;
  // Profile mirrors the behavioral model needs.
  bool needs_platform = false;
  bool can_release = false;

  bool operator==(const PassengerTruth &) const = default;
};

struct PlantState
{
  Tick tick = 0;
  VehicleState vehicle;
  std::vector<PassengerTruth> passengers;
  // Latched setpoints; actuators keep moving toward the last target.
  std::string door_goal;
  std::string platform_goal;
  // True only on the tick a platform command differs from the latched goal.
  bool platform_goal_changed = false;
  bool platform_lowering = false;
  std::optional<NodeId> steer_target;
  Tick arrival_tick = -1;
  Tick manual_release_since = -1;
  std::map<PassengerId, double> hr_jitter_bpm;
  std::set<std::pair<NodeId, Tick>> traffic_broadcast_done;
  std::set<Tick> edge_broadcast_done;
  SplitMix64 rng{1};

  bool operator==(const PlantState &) const = default;
};

struct PlantStep
{
  PlantState state;
  SensorFrame frame;
  std::vector<ActuatorReport> reports;
  std::vector<ExternalMessage> broadcasts;
};

/// Disturbances whose window contains `tick`. Overlaps are allowed and
/// preserved in schedule order.
std::vector<Disturbance> activate_disturbances(
  const std::vector<Disturbance> & schedule, Tick tick);

/// Behavioral and physiological update for all passengers. Scripted
/// events override; otherwise passengers cooperate with open doors and
/// platform positions, pacing each zone step by a fixed reaction time.
std::vector<PassengerTruth> step_passengers(
  const std::vector<PassengerTruth> & truths, const std::vector<Disturbance> & active,
  const VehicleState & vehicle, Tick tick);

/// One operational-period integration step: kinematics, door/lock/
/// platform dynamics with interlocks and fault semantics, post-step
/// sensor frame, actuator reports, and infrastructure broadcasts.
PlantStep step_plant(
  const PlantState & state, const RoadGraph & graph,
  const std::vector<ActuatorCommand> & commands, const std::vector<Disturbance> & active,
  Tick tick);

/// Weather flags of the active set (ENV_WEATHER params).
std::vector<std::string> active_env_flags(const std::vector<Disturbance> & active);

/// Occupancy interval codec, "lo:hi;lo:hi" with half-open [lo, hi) ms
/// bounds. Malformed segments are dropped.
std::vector<std::pair<Tick, Tick>> parse_intervals(const std::string & text);
std::string render_intervals(const std::vector<std::pair<Tick, Tick>> & iv);

}  // namespace chaperone

#endif  // CHAPERONE__PLANT_HPP_
