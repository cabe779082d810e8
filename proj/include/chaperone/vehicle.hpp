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

#ifndef CHAPERONE__VEHICLE_HPP_
#define CHAPERONE__VEHICLE_HPP_

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "chaperone/common.hpp"

namespace chaperone
{

enum class DoorState { CLOSED, OPENING, OPEN, CLOSING };
enum class LockState { LOCKED, UNLOCKED };
enum class PlatformState { STOWED, DEPLOYING, DEPLOYED, LIFTING, LIFTED, STOWING };
enum class Subsystem { DRIVETRAIN, BRAKE, STEERING, DOOR, LOCK, PLATFORM };
enum class FaultMode { STUCK };

inline constexpr std::pair<DoorState, const char *> kDoorStateNames[] = {
  {DoorState::CLOSED, "CLOSED"},
  {DoorState::OPENING, "OPENING"},
  {DoorState::OPEN, "OPEN"},
  {DoorState::CLOSING, "CLOSING"},
};
CHAPERONE_ENUM_IO(DoorState, kDoorStateNames)

inline constexpr std::pair<LockState, const char *> kLockStateNames[] = {
  {LockState::LOCKED, "LOCKED"},
  {LockState::UNLOCKED, "UNLOCKED"},
};
CHAPERONE_ENUM_IO(LockState, kLockStateNames)

inline constexpr std::pair<PlatformState, const char *> kPlatformStateNames[] = {
  {PlatformState::STOWED, "STOWED"},
  {PlatformState::DEPLOYING, "DEPLOYING"},
  {PlatformState::DEPLOYED, "DEPLOYED"},
  {PlatformState::LIFTING, "LIFTING"},
  {PlatformState::LIFTED, "LIFTED"},
  {PlatformState::STOWING, "STOWING"},
};
CHAPERONE_ENUM_IO(PlatformState, kPlatformStateNames)

inline constexpr std::pair<Subsystem, const char *> kSubsystemNames[] = {
  {Subsystem::DRIVETRAIN, "DRIVETRAIN"},
  {Subsystem::BRAKE, "BRAKE"},
  {Subsystem::STEERING, "STEERING"},
  {Subsystem::DOOR, "DOOR"},
  {Subsystem::LOCK, "LOCK"},
  {Subsystem::PLATFORM, "PLATFORM"},
};
CHAPERONE_ENUM_IO(Subsystem, kSubsystemNames)

inline constexpr std::pair<FaultMode, const char *> kFaultModeNames[] = {
  {FaultMode::STUCK, "STUCK"},
};
CHAPERONE_ENUM_IO(FaultMode, kFaultModeNames)

struct SubsystemFault
{
  Subsystem subsystem = Subsystem::DOOR;
  FaultMode mode = FaultMode::STUCK;

  bool operator==(const SubsystemFault &) const = default;
  bool operator<(const SubsystemFault & o) const
  {
    return std::pair(subsystem, mode) < std::pair(o.subsystem, o.mode);
  }
};

/// Location on the road graph: at a node, or on the edge from `at`
/// toward `toward` with progress_m of the edge length covered.
struct Position
{
  NodeId at;
  NodeId toward;
  double progress_m = 0.0;

  bool at_node() const { return toward.empty(); }
  bool operator==(const Position &) const = default;
};

std::string to_string(const Position & p);
std::optional<Position> parse_position(std::string_view text);

inline constexpr double kDoorMotionMs = 2000.0;
inline constexpr double kPlatformMotionMs = 5000.0;
inline constexpr double kDoorMotionMaxSpeedMps = 0.5;
/// Below this speed a braking vehicle settles to a standstill.
inline constexpr double kStandstillMps = 0.05;

struct VehicleState
{
  Position position;
  double speed_mps = 0.0;
  DoorState door = DoorState::CLOSED;
  LockState lock = LockState::LOCKED;
  PlatformState platform = PlatformState::STOWED;
  std::map<Subsystem, bool> subsystem_health = {
    {Subsystem::DRIVETRAIN, true}, {Subsystem::BRAKE, true},  {Subsystem::STEERING, true},
    {Subsystem::DOOR, true},       {Subsystem::LOCK, true},   {Subsystem::PLATFORM, true},
  };
  double range_m = 0.0;
  std::int64_t odometer_mm = 0;
  // Elapsed ms inside the current door/platform transition phase.
  Tick door_phase_ms = 0;
  Tick platform_phase_ms = 0;

  bool stationary() const { return speed_mps == 0.0; }
  bool operator==(const VehicleState &) const = default;
};

inline bool door_in_motion(DoorState d)
{
  return d == DoorState::OPENING || d == DoorState::CLOSING;
}

inline bool platform_in_motion(PlatformState p)
{
  return p == PlatformState::DEPLOYING || p == PlatformState::LIFTING ||
         p == PlatformState::STOWING;
}

}  // namespace chaperone

#endif  // CHAPERONE__VEHICLE_HPP_
