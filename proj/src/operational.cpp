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

#include "chaperone/operational.hpp"

#include <algorithm>
#include <string>

namespace chaperone
{

namespace
{

struct PoseSnapshot
{
  double speed_mps = 0.0;
  Position position;
};

PoseSnapshot pose_from(const FeatureSet & fs)
{
  PoseSnapshot out;
  for (const auto & f : fs.features) {
    if (f.kind == FeatureKind::VEHICLE_POSE) {
      out.speed_mps = f.scalar;
      if (auto pos = parse_position(f.text)) {
        out.position = *pos;
      }
    }
  }
  return out;
}

std::optional<NodeId> steering_target(
  const TacticalDirective & d, const Position & pos)
{
  if (d.route.empty()) {
    return std::nullopt;
  }
  if (!pos.at_node()) {
    return pos.toward;
  }
  if (pos.at == d.route.front()) {
    return d.route.size() >= 2 ? std::optional<NodeId>(d.route[1]) : std::nullopt;
  }
  return d.route.front();
}

}  // namespace

std::vector<ActuatorCommand> execute(
  const TacticalDirective & directive, const FeatureSet & fs, Tick tick)
{
  const PoseSnapshot pose = pose_from(fs);
  std::vector<ActuatorCommand> cmds;

  double target = directive.speed_limit_mps;
  if (directive.maneuver == Maneuver::HOLD || directive.maneuver == Maneuver::PULL_OVER) {
    target = 0.0;
  }
  const double accel =
    std::clamp(kSpeedGain * (target - pose.speed_mps), -kMaxBrakeMps2, kMaxAccelMps2);

  ActuatorCommand drive;
  drive.subsystem = Subsystem::DRIVETRAIN;
  drive.scalar = std::max(accel, 0.0);
  cmds.push_back(drive);

  ActuatorCommand brake;
  brake.subsystem = Subsystem::BRAKE;
  brake.scalar = std::max(-accel, 0.0);
  cmds.push_back(brake);

  if (
    directive.maneuver == Maneuver::FOLLOW_ROUTE ||
    directive.maneuver == Maneuver::ALIGN_TO_STOP) {
    if (auto next = steering_target(directive, pose.position)) {
      ActuatorCommand steer;
      steer.subsystem = Subsystem::STEERING;
      steer.code = *next;
      cmds.push_back(steer);
    }
  }

  // Close beats a stale open schedule; one DOOR command per tick.
  if (directive.door_close) {
    ActuatorCommand door;
    door.subsystem = Subsystem::DOOR;
    door.code = "CLOSE";
    cmds.push_back(door);
  } else if (directive.door_schedule.has_value() && tick >= directive.door_schedule->open_at) {
    ActuatorCommand door;
    door.subsystem = Subsystem::DOOR;
    door.code = "OPEN";
    cmds.push_back(door);
  }

  if (directive.lock_engage) {
    ActuatorCommand lock;
    lock.subsystem = Subsystem::LOCK;
    lock.code = "LOCK";
    cmds.push_back(lock);
  } else if (
    directive.door_schedule.has_value() && tick >= directive.door_schedule->unlock_at) {
    ActuatorCommand lock;
    lock.subsystem = Subsystem::LOCK;
    lock.code = "UNLOCK";
    cmds.push_back(lock);
  }

  if (directive.platform_cmd != PlatformCmd::NONE) {
    ActuatorCommand platform;
    platform.subsystem = Subsystem::PLATFORM;
    platform.code = to_string(directive.platform_cmd);
    cmds.push_back(platform);
  }
  return cmds;
}

std::vector<ActuatorCommand> reflex_check(
  const std::vector<ActuatorCommand> & proposed, const FeatureSet & fs)
{
  bool doorway_occupied = false;
  bool platform_obstructed = false;
  for (const auto & f : fs.features) {
    if (f.kind == FeatureKind::POSTURE && f.code == "DOORWAY") {
      doorway_occupied = true;
    }
    if (f.kind == FeatureKind::PLATFORM_POSITION && f.text == "OBSTRUCTED") {
      platform_obstructed = true;
    }
  }

  std::vector<ActuatorCommand> out = proposed;
  for (auto & cmd : out) {
    if (doorway_occupied && cmd.subsystem == Subsystem::DOOR && cmd.code == "CLOSE") {
      cmd.code = "HOLD";
    }
    if (
      platform_obstructed && cmd.subsystem == Subsystem::PLATFORM && !cmd.code.empty() &&
      cmd.code != "HOLD") {
      cmd.code = "HOLD";
    }
  }
  return out;
}

PerformanceReport report_actuation(
  const std::vector<ActuatorReport> & reports, const std::vector<SubsystemFault> & faults)
{
  (void)reports;
  PerformanceReport r;
  r.level = ReportLevel::OPERATIONAL;
  if (!faults.empty()) {
    r.status = ReportStatus::FAILED;
    r.reasons.push_back(ReasonCode::ACTUATOR_FAULT);
  } else {
    r.status = ReportStatus::NOMINAL;
  }
  return r;
}

}  // namespace chaperone
