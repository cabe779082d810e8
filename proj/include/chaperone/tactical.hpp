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

#ifndef CHAPERONE__TACTICAL_HPP_
#define CHAPERONE__TACTICAL_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chaperone/actuation.hpp"
#include "chaperone/common.hpp"
#include "chaperone/map.hpp"
#include "chaperone/profile.hpp"
#include "chaperone/representation.hpp"
#include "chaperone/strategic.hpp"

namespace chaperone
{

inline constexpr Tick kClearGapMs = 3000;
inline constexpr Tick kDoorLookaheadMs = 60000;
inline constexpr Tick kGuardTimeoutMs = 120000;
inline constexpr double kBoardingAllowanceS = 120.0;
inline constexpr double kAlignRadiusM = 50.0;
inline constexpr double kRouteSpeedMps = 10.0;
inline constexpr double kCreepSpeedMps = 1.0;

enum class Maneuver { FOLLOW_ROUTE, PULL_OVER, HOLD, ALIGN_TO_STOP };

inline constexpr std::pair<Maneuver, const char *> kManeuverNames[] = {
  {Maneuver::FOLLOW_ROUTE, "FOLLOW_ROUTE"},
  {Maneuver::PULL_OVER, "PULL_OVER"},
  {Maneuver::HOLD, "HOLD"},
  {Maneuver::ALIGN_TO_STOP, "ALIGN_TO_STOP"},
};
CHAPERONE_ENUM_IO(Maneuver, kManeuverNames)

enum class PlatformCmd { NONE, DEPLOY, LIFT, STOW };

inline constexpr std::pair<PlatformCmd, const char *> kPlatformCmdNames[] = {
  {PlatformCmd::NONE, "NONE"},
  {PlatformCmd::DEPLOY, "DEPLOY"},
  {PlatformCmd::LIFT, "LIFT"},
  {PlatformCmd::STOW, "STOW"},
};
CHAPERONE_ENUM_IO(PlatformCmd, kPlatformCmdNames)

struct DoorSchedule
{
  Tick unlock_at = 0;
  Tick open_at = 0;

  bool operator==(const DoorSchedule &) const = default;
};

/// Either a concrete schedule or a deferral with its reason.
struct DoorDecision
{
  std::optional<DoorSchedule> schedule;
  std::optional<ReasonCode> deferred;

  bool ok() const { return schedule.has_value(); }
};

struct TacticalDirective
{
  Maneuver maneuver = Maneuver::HOLD;
  std::optional<StopPoint> target_stop;
  std::optional<DoorSchedule> door_schedule;
  PlatformCmd platform_cmd = PlatformCmd::NONE;
  double speed_limit_mps = 0.0;
  // Context for the operational level and reporting.
  std::vector<NodeId> route;
  bool door_close = false;
  bool lock_engage = false;
  std::optional<double> eta_s;

  bool operator==(const TacticalDirective &) const = default;
};

enum class BoardingMode { NONE, BOARD, DEBOARD };

inline constexpr std::pair<BoardingMode, const char *> kBoardingModeNames[] = {
  {BoardingMode::NONE, "NONE"},
  {BoardingMode::BOARD, "BOARD"},
  {BoardingMode::DEBOARD, "DEBOARD"},
};
CHAPERONE_ENUM_IO(BoardingMode, kBoardingModeNames)

enum class BoardingPhase {
  ALIGN_TO_STOP,
  DOOR_OPENING,
  PLATFORM_DEPLOY,
  PLATFORM_LIFT,
  PASSENGER_SECURING,
  PLATFORM_LOWER,
  PLATFORM_STOW,
  DOOR_CLOSING,
  READY,
  FAILED,
};

inline constexpr std::pair<BoardingPhase, const char *> kBoardingPhaseNames[] = {
  {BoardingPhase::ALIGN_TO_STOP, "ALIGN_TO_STOP"},
  {BoardingPhase::DOOR_OPENING, "DOOR_OPENING"},
  {BoardingPhase::PLATFORM_DEPLOY, "PLATFORM_DEPLOY"},
  {BoardingPhase::PLATFORM_LIFT, "PLATFORM_LIFT"},
  {BoardingPhase::PASSENGER_SECURING, "PASSENGER_SECURING"},
  {BoardingPhase::PLATFORM_LOWER, "PLATFORM_LOWER"},
  {BoardingPhase::PLATFORM_STOW, "PLATFORM_STOW"},
  {BoardingPhase::DOOR_CLOSING, "DOOR_CLOSING"},
  {BoardingPhase::READY, "READY"},
  {BoardingPhase::FAILED, "FAILED"},
};
CHAPERONE_ENUM_IO(BoardingPhase, kBoardingPhaseNames)

/// Guarded transfer sequence for one passenger. PLATFORM_LOWER exists on
/// the deboard path only; the platform is never stowed while the subject
/// stands on it.
struct BoardingState
{
  BoardingMode mode = BoardingMode::NONE;
  BoardingPhase phase = BoardingPhase::READY;
  Tick phase_entered = 0;
  PassengerId subject;
  bool uses_platform = false;
  std::optional<StopPoint> stop;
  std::optional<DoorSchedule> door_schedule;
  std::optional<ReasonCode> failure;

  bool active() const
  {
    return mode != BoardingMode::NONE && phase != BoardingPhase::READY &&
           phase != BoardingPhase::FAILED;
  }
  bool operator==(const BoardingState &) const = default;
};

/// Aggregate inputs for the upward report.
struct TacticalStatus
{
  bool door_deferred = false;
  bool no_suitable_stop = false;
  bool guard_timeout = false;
  bool operational_failed = false;
  bool emergency_stop = false;

  bool operator==(const TacticalStatus &) const = default;
};

/// Stop choice at a goal node: platform users restrict candidates to
/// platform-usable stops; minimum (slope, then slot id) wins.
Result<StopPoint> select_stop(
  const NodeId & goal_node, const std::vector<StopPoint> & candidates,
  const std::vector<PassengerProfile> & manifest_profiles);

/// Earliest opening time at or after `now` with a clear adjacent-lane gap
/// of kClearGapMs, searched over kDoorLookaheadMs. Busy intervals are
/// absolute [start, end) tick pairs.
DoorDecision schedule_door(
  const SituationModel & sit, const std::vector<std::pair<Tick, Tick>> & traffic, Tick now,
  Tick unlock_lead_ms = 0);

/// One guarded step of the boarding state machine.
std::pair<BoardingState, TacticalDirective> step_boarding(
  const BoardingState & state, const SituationModel & sit, const VehicleState & actuator_status,
  const std::vector<PassengerProfile> & profiles, Tick now);

/// Maneuver selection from the strategy plan; fills route, speed, and the
/// reported ETA (platform users add a fixed boarding allowance).
TacticalDirective plan_behavior(
  const StrategyPlan & plan, const SituationModel & sit, const BoardingState & boarding,
  const RoadGraph & graph, const std::vector<PassengerProfile> & profiles,
  const std::optional<StopPoint> & target_stop);

PerformanceReport report_performance(const TacticalStatus & status);

}  // namespace chaperone

#endif  // CHAPERONE__TACTICAL_HPP_
