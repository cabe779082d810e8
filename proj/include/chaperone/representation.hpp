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

#ifndef CHAPERONE__REPRESENTATION_HPP_
#define CHAPERONE__REPRESENTATION_HPP_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "chaperone/common.hpp"
#include "chaperone/feature.hpp"
#include "chaperone/map.hpp"
#include "chaperone/profile.hpp"
#include "chaperone/vehicle.hpp"

namespace chaperone
{

enum class Zone { CABIN_SEATED, CABIN_UNSECURED, ON_PLATFORM, DOORWAY, OUTSIDE_NEAR, ABSENT };
enum class HealthState { NORMAL, ELEVATED, EMERGENCY };
enum class ActorRole { PASSENGER, EXTERNAL_HELPER, EXTERNAL_OTHER };
enum class HealthTrend { STABLE, DEGRADING, CRITICAL };

enum class HazardKind {
  MEDICAL_EMERGENCY,
  TRAPPED_RISK,
  STRANDING_RISK,
  EXPOSURE_RISK,
  UNKNOWN_AREA_RISK,
};

inline constexpr std::pair<Zone, const char *> kZoneNames[] = {
  {Zone::CABIN_SEATED, "CABIN_SEATED"},
  {Zone::CABIN_UNSECURED, "CABIN_UNSECURED"},
  {Zone::ON_PLATFORM, "ON_PLATFORM"},
  {Zone::DOORWAY, "DOORWAY"},
  {Zone::OUTSIDE_NEAR, "OUTSIDE_NEAR"},
  {Zone::ABSENT, "ABSENT"},
};
CHAPERONE_ENUM_IO(Zone, kZoneNames)

inline constexpr std::pair<HealthState, const char *> kHealthStateNames[] = {
  {HealthState::NORMAL, "NORMAL"},
  {HealthState::ELEVATED, "ELEVATED"},
  {HealthState::EMERGENCY, "EMERGENCY"},
};
CHAPERONE_ENUM_IO(HealthState, kHealthStateNames)

inline constexpr std::pair<ActorRole, const char *> kActorRoleNames[] = {
  {ActorRole::PASSENGER, "PASSENGER"},
  {ActorRole::EXTERNAL_HELPER, "EXTERNAL_HELPER"},
  {ActorRole::EXTERNAL_OTHER, "EXTERNAL_OTHER"},
};
CHAPERONE_ENUM_IO(ActorRole, kActorRoleNames)

inline constexpr std::pair<HealthTrend, const char *> kHealthTrendNames[] = {
  {HealthTrend::STABLE, "STABLE"},
  {HealthTrend::DEGRADING, "DEGRADING"},
  {HealthTrend::CRITICAL, "CRITICAL"},
};
CHAPERONE_ENUM_IO(HealthTrend, kHealthTrendNames)

inline constexpr std::pair<HazardKind, const char *> kHazardKindNames[] = {
  {HazardKind::MEDICAL_EMERGENCY, "MEDICAL_EMERGENCY"},
  {HazardKind::TRAPPED_RISK, "TRAPPED_RISK"},
  {HazardKind::STRANDING_RISK, "STRANDING_RISK"},
  {HazardKind::EXPOSURE_RISK, "EXPOSURE_RISK"},
  {HazardKind::UNKNOWN_AREA_RISK, "UNKNOWN_AREA_RISK"},
};
CHAPERONE_ENUM_IO(HazardKind, kHazardKindNames)

inline bool cabin_zone(Zone z) { return z == Zone::CABIN_SEATED || z == Zone::CABIN_UNSECURED; }

inline bool onboard_zone(Zone z) { return cabin_zone(z) || z == Zone::ON_PLATFORM; }

// Health band thresholds (heart rate, bpm) with sustain hysteresis.
inline constexpr double kHrSoftLow = 50.0;
inline constexpr double kHrSoftHigh = 120.0;
inline constexpr double kHrHardLow = 40.0;
inline constexpr double kHrHardHigh = 150.0;
inline constexpr Tick kHrSustainMs = 10000;
inline constexpr Tick kFallenSustainMs = 5000;
inline constexpr double kOutsideNearMaxM = 3.0;

struct ActorContext
{
  PassengerId id;
  Zone zone = Zone::ABSENT;
  HealthState health = HealthState::NORMAL;
  double distance_to_vehicle_m = 0.0;
  ActorRole role = ActorRole::PASSENGER;
  // Hysteresis bookkeeping; -1 means the condition is not active.
  Tick hr_soft_out_since = -1;
  Tick hr_hard_out_since = -1;
  Tick fallen_since = -1;
  double last_hr_bpm = 0.0;

  bool operator==(const ActorContext &) const = default;
};

struct DynamicElement
{
  ActorId id;
  double distance_m = 0.0;
  double velocity_mps = 0.0;

  bool operator==(const DynamicElement &) const = default;
};

struct SituationModel
{
  Tick tick = 0;
  std::vector<std::string> scenery;
  std::vector<DynamicElement> dynamic_elements;
  VehicleState self_representation;
  std::vector<ActorContext> actors;

  const ActorContext * find_actor(const PassengerId & id) const;
  bool operator==(const SituationModel &) const = default;
};

struct PassengerProjection
{
  HealthTrend health_trend = HealthTrend::STABLE;
  std::int64_t max_remaining_onboard_s = 0;

  bool operator==(const PassengerProjection &) const = default;
};

struct WorldModel
{
  Tick tick = 0;
  RoadGraph map;
  std::map<NodeId, std::set<PassengerId>> known_to;
  std::map<NodeId, bool> suitable_for_platform;
  double range_remaining_m = 0.0;
  std::optional<double> eta_current_goal_s;
  std::map<PassengerId, PassengerProjection> passenger_projection;
  // Long-horizon context carried for planning and ODD checks.
  Position vehicle_position;
  std::int64_t odometer_mm = 0;
  std::set<EdgeKey> blocked_edges;
  std::map<PassengerId, Tick> onboard_since;
  std::optional<double> nearest_assistant_m;
  // Mission context pinned at acceptance; static thereafter.
  NodeId mission_goal;
  NodeId departure_node;
  RouteConstraints constraints;

  bool operator==(const WorldModel &) const = default;
};

struct Hazard
{
  HazardKind kind = HazardKind::MEDICAL_EMERGENCY;
  PassengerId subject;
  int severity = 0;
  std::vector<FeatureKind> evidence;

  bool operator==(const Hazard &) const = default;
};

struct GoalProjection
{
  NodeId goal;
  double travel_time_s = 0.0;
  // Travel time from this goal onward to the mission goal.
  double resume_travel_s = 0.0;
  double distance_m = 0.0;
  std::map<PassengerId, HealthState> arrival_health;
  bool range_feasible = true;
  bool in_horizon = true;
  bool care_facility = false;
  bool stop_allowed = false;

  bool operator==(const GoalProjection &) const = default;
};

struct WorldProjection
{
  Tick tick = 0;
  NodeId mission_goal;
  std::vector<GoalProjection> goals;

  const GoalProjection * find_goal(const NodeId & goal) const;
  bool operator==(const WorldProjection &) const = default;
};

/// Folds a feature set into the situation model. Actors with no fresh
/// features are carried forward unchanged; health bands and sustain
/// windows are re-evaluated only on new evidence.
Result<SituationModel> update_situation_model(
  const SituationModel & prev, const FeatureSet & fs,
  const std::vector<PassengerProfile> & profiles);

/// Abstracts the situation model into the long-horizon world model.
/// Pure and idempotent for identical inputs.
WorldModel update_world_model(
  const WorldModel & prev, const SituationModel & sit,
  const std::vector<PassengerProfile> & profiles, Tick tick);

/// Projects travel time, arrival health, and range feasibility for every
/// stop-allowed node. Unreachable candidates are omitted.
WorldProjection predict_world(const WorldModel & w, double horizon_s);

/// Hazard assessment over the current scene plus detected faults.
/// Output ordered by (severity desc, subject id, kind name).
std::vector<Hazard> assess_hazards(
  const SituationModel & sit, const std::vector<SubsystemFault> & vehicle_faults,
  const std::vector<PassengerProfile> & profiles);

}  // namespace chaperone

#endif  // CHAPERONE__REPRESENTATION_HPP_
