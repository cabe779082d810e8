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

#include "chaperone/plant.hpp"

#include <algorithm>
#include <cmath>

#include "chaperone/operational.hpp"

namespace chaperone
{

namespace
{

constexpr double kDtS = kOperationalPeriodMs / 1000.0;

const ActuatorCommand * find_command(
  const std::vector<ActuatorCommand> & commands, Subsystem s)
{
  for (const auto & c : commands) {
    if (c.subsystem == s) {
      return &c;
    }
  }
  return nullptr;
}

bool onboard_zone_truth(Zone z)
{
  return z == Zone::CABIN_SEATED || z == Zone::CABIN_UNSECURED || z == Zone::ON_PLATFORM ||
         z == Zone::DOORWAY;
}

bool matches_subject(const Disturbance & d, const PassengerId & id)
{
  return d.param("subject") == id;
}

// Interval helpers live at namespace scope; declared in the header.

struct MoveRule
{
  bool applies = false;
  Zone target = Zone::ABSENT;
};

MoveRule next_move(const PassengerTruth & p, const VehicleState & v)
{
  MoveRule r;
  if (!p.has_ridden) {
    if (p.zone == Zone::OUTSIDE_NEAR && v.door == DoorState::OPEN) {
      if (!p.needs_platform) {
        r = {true, Zone::DOORWAY};
      } else if (v.platform == PlatformState::DEPLOYED) {
        r = {true, Zone::ON_PLATFORM};
      }
    } else if (p.zone == Zone::DOORWAY && v.door == DoorState::OPEN) {
      r = {true, Zone::CABIN_SEATED};
    } else if (p.zone == Zone::ON_PLATFORM && v.platform == PlatformState::LIFTED) {
      r = {true, Zone::CABIN_SEATED};
    }
    return r;
  }
  if (!v.stationary()) {
    return r;
  }
  if (p.zone == Zone::CABIN_SEATED && v.door == DoorState::OPEN) {
    if (!p.needs_platform) {
      r = {true, Zone::DOORWAY};
    } else if (v.platform == PlatformState::LIFTED) {
      r = {true, Zone::ON_PLATFORM};
    }
  } else if (p.zone == Zone::DOORWAY) {
    r = {true, Zone::OUTSIDE_NEAR};
  } else if (p.zone == Zone::ON_PLATFORM && v.platform == PlatformState::DEPLOYED) {
    r = {true, Zone::OUTSIDE_NEAR};
  }
  return r;
}

}  // namespace

// "12000:30000;40000:52000" -> [{12000,30000},{40000,52000}]
std::vector<std::pair<Tick, Tick>> parse_intervals(const std::string & text)
{
  std::vector<std::pair<Tick, Tick>> out;
  for (const auto & part : split(text, ';')) {
    const auto bounds = split(part, ':');
    if (bounds.size() != 2) {
      continue;
    }
    const auto lo = parse_int(bounds[0]);
    const auto hi = parse_int(bounds[1]);
    if (lo.has_value() && hi.has_value() && *hi > *lo) {
      out.emplace_back(*lo, *hi);
    }
  }
  return out;
}

std::string render_intervals(const std::vector<std::pair<Tick, Tick>> & iv)
{
  std::vector<std::string> parts;
  parts.reserve(iv.size());
  for (const auto & [lo, hi] : iv) {
    parts.push_back(std::to_string(lo) + ":" + std::to_string(hi));
  }
  return join(parts, ';');
}

DisturbanceCategory category_of(DisturbanceSubtype subtype)
{
  switch (subtype) {
    case DisturbanceSubtype::ENV_TRAFFIC:
    case DisturbanceSubtype::ENV_BLOCKED_EDGE:
    case DisturbanceSubtype::ENV_OBSTRUCTION:
    case DisturbanceSubtype::ENV_WEATHER:
      return DisturbanceCategory::ENVIRONMENT;
    case DisturbanceSubtype::VEH_DOOR_ACTUATOR_FAULT:
    case DisturbanceSubtype::VEH_RANGE_LOSS:
      return DisturbanceCategory::VEHICLE;
    case DisturbanceSubtype::PAX_MEDICAL_EVENT:
    case DisturbanceSubtype::PAX_UNSCRIPTED_MOVEMENT:
    default:
      return DisturbanceCategory::PASSENGER;
  }
}

std::vector<Disturbance> activate_disturbances(
  const std::vector<Disturbance> & schedule, Tick tick)
{
  std::vector<Disturbance> active;
  for (const auto & d : schedule) {
    if (d.onset <= tick && tick < d.expiry) {
      active.push_back(d);
    }
  }
  return active;
}

std::vector<std::string> active_env_flags(const std::vector<Disturbance> & active)
{
  std::vector<std::string> flags;
  for (const auto & d : active) {
    if (d.subtype == DisturbanceSubtype::ENV_WEATHER) {
      const std::string flag = d.param("flag");
      if (!flag.empty()) {
        flags.push_back(flag);
      }
    }
  }
  std::sort(flags.begin(), flags.end());
  flags.erase(std::unique(flags.begin(), flags.end()), flags.end());
  return flags;
}

std::vector<PassengerTruth> step_passengers(
  const std::vector<PassengerTruth> & truths, const std::vector<Disturbance> & active,
  const VehicleState & vehicle, Tick tick)
{
  std::vector<PassengerTruth> out = truths;
  for (auto & p : out) {
    const Disturbance * medical = nullptr;
    const Disturbance * movement = nullptr;
    for (const auto & d : active) {
      if (d.subtype == DisturbanceSubtype::PAX_MEDICAL_EVENT && matches_subject(d, p.id)) {
        medical = &d;
      }
      if (d.subtype == DisturbanceSubtype::PAX_UNSCRIPTED_MOVEMENT && matches_subject(d, p.id)) {
        movement = &d;
      }
    }

    if (medical != nullptr) {
      if (auto hr = parse_double(medical->param("hr"))) {
        p.hr_bpm = *hr;
      }
      p.fallen = medical->param("fallen") == "1";
      p.next_move_at = -1;
      continue;
    }
    p.hr_bpm = p.hr_base_bpm;
    p.fallen = false;

    if (movement != nullptr) {
      if (auto z = parse_as<Zone>(movement->param("zone"))) {
        p.zone = *z;
      }
      if (auto dist = parse_double(movement->param("distance"))) {
        p.distance_m = *dist;
      }
      p.next_move_at = -1;
      continue;
    }

    if (p.zone == Zone::CABIN_SEATED && vehicle.speed_mps > 0.0) {
      p.has_ridden = true;
    }

    const MoveRule rule = next_move(p, vehicle);
    if (!rule.applies) {
      p.next_move_at = -1;
      continue;
    }
    if (p.next_move_at < 0) {
      p.next_move_at = tick + kReactionMs;
    }
    if (tick >= p.next_move_at) {
      p.zone = rule.target;
      p.distance_m = (rule.target == Zone::OUTSIDE_NEAR) ? 1.0 : 0.0;
      p.next_move_at = -1;
    }
  }
  return out;
}

PlantStep step_plant(
  const PlantState & state, const RoadGraph & graph,
  const std::vector<ActuatorCommand> & commands, const std::vector<Disturbance> & active,
  Tick tick)
{
  PlantStep out;
  out.state = state;
  PlantState & s = out.state;
  VehicleState & v = s.vehicle;
  s.tick = tick;

  // Disturbance context.
  bool door_fault = false;
  bool obstruction = false;
  std::set<EdgeKey> blocked;
  for (const auto & d : active) {
    switch (d.subtype) {
      case DisturbanceSubtype::VEH_DOOR_ACTUATOR_FAULT:
        door_fault = true;
        break;
      case DisturbanceSubtype::ENV_OBSTRUCTION:
        obstruction = true;
        break;
      case DisturbanceSubtype::ENV_BLOCKED_EDGE: {
        const auto parts = split(d.param("edge"), ':');
        if (parts.size() == 2) {
          blocked.insert(make_edge_key(parts[0], parts[1]));
        }
        break;
      }
      case DisturbanceSubtype::VEH_RANGE_LOSS: {
        if (auto set_m = parse_double(d.param("set_m"))) {
          v.range_m = std::min(v.range_m, *set_m);
        }
        break;
      }
      default:
        break;
    }
  }
  v.subsystem_health[Subsystem::DOOR] = !door_fault;
  v.subsystem_health[Subsystem::LOCK] = !door_fault;
  v.subsystem_health[Subsystem::PLATFORM] = !obstruction;

  // Latch setpoints.
  if (const auto * c = find_command(commands, Subsystem::DOOR)) {
    s.door_goal = c->code;
  }
  if (const auto * c = find_command(commands, Subsystem::PLATFORM)) {
    s.platform_goal_changed = s.platform_goal != c->code;
    s.platform_goal = c->code;
  } else {
    s.platform_goal_changed = false;
  }
  if (const auto * c = find_command(commands, Subsystem::STEERING)) {
    s.steer_target = c->code;
  }

  // Kinematics, gated by the door/platform interlocks (pre-step states).
  const ActuatorCommand * drive = find_command(commands, Subsystem::DRIVETRAIN);
  const ActuatorCommand * brake = find_command(commands, Subsystem::BRAKE);
  double accel = (drive ? drive->scalar : 0.0) - (brake ? brake->scalar : 0.0);
  accel = std::clamp(accel, -kMaxBrakeMps2, kMaxAccelMps2);
  double applied = accel;
  if (v.door != DoorState::CLOSED || v.platform != PlatformState::STOWED) {
    v.speed_mps = 0.0;
    applied = 0.0;
  } else {
    v.speed_mps = std::max(0.0, v.speed_mps + accel * kDtS);
    // Brake hold: under net braking the vehicle settles instead of
    // decaying asymptotically.
    if (accel <= 0.0 && v.speed_mps < kStandstillMps) {
      v.speed_mps = 0.0;
    }
  }

  const double step_m = v.speed_mps * kDtS;
  if (step_m > 0.0) {
    if (v.position.at_node()) {
      if (s.steer_target.has_value() && *s.steer_target != v.position.at) {
        const RoadEdge * edge = graph.find_edge(v.position.at, *s.steer_target);
        const bool edge_blocked =
          blocked.count(make_edge_key(v.position.at, *s.steer_target)) > 0;
        if (edge != nullptr && !edge_blocked) {
          v.position.toward = *s.steer_target;
          v.position.progress_m = 0.0;
        } else {
          v.speed_mps = 0.0;
        }
      } else {
        v.speed_mps = 0.0;
      }
    }
    if (!v.position.at_node()) {
      const RoadEdge * edge = graph.find_edge(v.position.at, v.position.toward);
      const double travel = v.speed_mps * kDtS;
      v.position.progress_m += travel;
      v.odometer_mm += static_cast<std::int64_t>(std::llround(travel * 1000.0));
      v.range_m = std::max(0.0, v.range_m - travel);
      if (edge != nullptr && v.position.progress_m >= edge->length_m) {
        v.position.at = v.position.toward;
        v.position.toward.clear();
        v.position.progress_m = 0.0;
      }
    }
  }

  // Lock: instantaneous when healthy; frozen under a door-unit fault.
  const bool manual_released =
    s.manual_release_since >= 0 && tick - s.manual_release_since >= kManualReleaseMs;
  if (const auto * c = find_command(commands, Subsystem::LOCK)) {
    if (v.subsystem_health[Subsystem::LOCK]) {
      if (c->code == "LOCK") {
        v.lock = LockState::LOCKED;
      } else if (c->code == "UNLOCK") {
        v.lock = LockState::UNLOCKED;
      }
    }
  }

  // Manual release: a capable passenger aboard works the emergency lever
  // for kManualReleaseMs while the faulted door is commanded open.
  bool capable_aboard = false;
  for (const auto & p : s.passengers) {
    if (p.can_release && onboard_zone_truth(p.zone)) {
      capable_aboard = true;
    }
  }
  if (door_fault && s.door_goal == "OPEN" && capable_aboard) {
    if (s.manual_release_since < 0) {
      s.manual_release_since = tick;
    }
  } else if (!door_fault) {
    s.manual_release_since = -1;
  }
  if (manual_released && door_fault) {
    v.lock = LockState::UNLOCKED;
  }

  // Door dynamics: 2 s phases, motion only near standstill, reversal allowed.
  const bool door_motion_ok =
    (v.subsystem_health[Subsystem::DOOR] || manual_released) &&
    v.speed_mps <= kDoorMotionMaxSpeedMps;
  if (door_motion_ok) {
    if (s.door_goal == "OPEN") {
      if (v.door == DoorState::CLOSED && v.lock == LockState::UNLOCKED) {
        v.door = DoorState::OPENING;
        v.door_phase_ms = 0;
      } else if (v.door == DoorState::CLOSING) {
        v.door = DoorState::OPENING;
        v.door_phase_ms = static_cast<Tick>(kDoorMotionMs) - v.door_phase_ms;
      }
    } else if (s.door_goal == "CLOSE") {
      if (v.door == DoorState::OPEN) {
        v.door = DoorState::CLOSING;
        v.door_phase_ms = 0;
      } else if (v.door == DoorState::OPENING) {
        v.door = DoorState::CLOSING;
        v.door_phase_ms = static_cast<Tick>(kDoorMotionMs) - v.door_phase_ms;
      }
    }
    if (door_in_motion(v.door) && s.door_goal != "HOLD") {
      v.door_phase_ms += kOperationalPeriodMs;
      if (v.door_phase_ms >= static_cast<Tick>(kDoorMotionMs)) {
        v.door = (v.door == DoorState::OPENING) ? DoorState::OPEN : DoorState::CLOSED;
        v.door_phase_ms = 0;
      }
    }
  }

  // Platform dynamics: 5 s phases, only behind an open door at standstill,
  // never stowing under a passenger.
  bool passenger_on_platform = false;
  for (const auto & p : s.passengers) {
    if (p.zone == Zone::ON_PLATFORM) {
      passenger_on_platform = true;
    }
  }
  // A lift setpoint with no live command expires once motion stops. LIFT is
  // the one verb whose endpoint permits re-triggering, so a stale latch
  // would bounce the platform back the way it came.
  if (
    s.platform_goal == "LIFT" && !platform_in_motion(v.platform) &&
    find_command(commands, Subsystem::PLATFORM) == nullptr) {
    s.platform_goal.clear();
  }
  const bool platform_motion_ok = v.subsystem_health[Subsystem::PLATFORM] &&
                                  v.door == DoorState::OPEN && v.stationary();
  if (platform_motion_ok) {
    if (s.platform_goal == "DEPLOY" && v.platform == PlatformState::STOWED) {
      v.platform = PlatformState::DEPLOYING;
      v.platform_phase_ms = 0;
    } else if (s.platform_goal == "LIFT" && v.platform == PlatformState::DEPLOYED) {
      v.platform = PlatformState::LIFTING;
      v.platform_phase_ms = 0;
      s.platform_lowering = false;
    } else if (
      s.platform_goal == "LIFT" && v.platform == PlatformState::LIFTED &&
      s.platform_goal_changed) {
      // Endpoint toggle fires on a fresh command only; a stream that kept
      // the lift rising must not bounce it back down.
      v.platform = PlatformState::LIFTING;
      v.platform_phase_ms = 0;
      s.platform_lowering = true;
    } else if (
      s.platform_goal == "STOW" && v.platform == PlatformState::DEPLOYED &&
      !passenger_on_platform) {
      v.platform = PlatformState::STOWING;
      v.platform_phase_ms = 0;
    }
    if (platform_in_motion(v.platform) && s.platform_goal != "HOLD") {
      v.platform_phase_ms += kOperationalPeriodMs;
      if (v.platform_phase_ms >= static_cast<Tick>(kPlatformMotionMs)) {
        if (v.platform == PlatformState::DEPLOYING) {
          v.platform = PlatformState::DEPLOYED;
        } else if (v.platform == PlatformState::STOWING) {
          v.platform = PlatformState::STOWED;
        } else {
          v.platform =
            s.platform_lowering ? PlatformState::DEPLOYED : PlatformState::LIFTED;
        }
        v.platform_phase_ms = 0;
        s.platform_lowering = false;
      }
    }
  }
  // Latched goals are consumed at phase completion so a stale setpoint
  // does not re-trigger the toggle.
  if (
    !platform_in_motion(v.platform) &&
    ((s.platform_goal == "DEPLOY" && v.platform == PlatformState::DEPLOYED) ||
     (s.platform_goal == "STOW" && v.platform == PlatformState::STOWED))) {
    s.platform_goal.clear();
  }

  // Arrival bookkeeping for traffic anchoring.
  if (v.position.at_node() && v.stationary()) {
    if (s.arrival_tick < 0) {
      s.arrival_tick = tick;
    }
  } else {
    s.arrival_tick = -1;
    s.traffic_broadcast_done.clear();
  }

  // Reports answer this tick's commands with post-step truth.
  for (const auto & c : commands) {
    ActuatorReport r;
    r.subsystem = c.subsystem;
    r.tick = tick;
    switch (c.subsystem) {
      case Subsystem::DRIVETRAIN:
        r.commanded = format_fixed(c.scalar);
        r.achieved = format_fixed(std::max(applied, 0.0));
        break;
      case Subsystem::BRAKE:
        r.commanded = format_fixed(c.scalar);
        r.achieved = format_fixed(std::max(-applied, 0.0));
        break;
      case Subsystem::STEERING:
        r.commanded = c.code;
        r.achieved = v.position.at_node() ? v.position.at : v.position.toward;
        break;
      case Subsystem::DOOR:
        r.commanded = c.code;
        r.achieved = to_string(v.door);
        break;
      case Subsystem::LOCK:
        r.commanded = c.code;
        r.achieved = to_string(v.lock);
        break;
      case Subsystem::PLATFORM:
        r.commanded = c.code;
        r.achieved = to_string(v.platform);
        break;
    }
    out.reports.push_back(r);
  }

  // Sensor frame reflects post-step ground truth.
  SensorFrame & frame = out.frame;
  frame.tick = tick;
  {
    SensorReading pose;
    pose.sensor_id = "pose";
    pose.channel = FeatureKind::VEHICLE_POSE;
    pose.subject = "vehicle";
    pose.scalar = v.speed_mps;
    pose.text = to_string(v.position);
    pose.code = std::to_string(v.odometer_mm);
    frame.readings.push_back(pose);

    SensorReading door;
    door.sensor_id = "door";
    door.channel = FeatureKind::DOOR_POSITION;
    door.subject = "door";
    door.code = to_string(v.door);
    frame.readings.push_back(door);

    SensorReading lock;
    lock.sensor_id = "door";
    lock.channel = FeatureKind::LOCK_STATE;
    lock.subject = "lock";
    lock.code = to_string(v.lock);
    frame.readings.push_back(lock);

    SensorReading platform;
    platform.sensor_id = "platform";
    platform.channel = FeatureKind::PLATFORM_POSITION;
    platform.subject = "platform";
    platform.code = to_string(v.platform);
    if (obstruction) {
      platform.text = "OBSTRUCTED";
    }
    frame.readings.push_back(platform);

    SensorReading energy;
    energy.sensor_id = "energy";
    energy.channel = FeatureKind::SUBSYSTEM_HEALTH;
    energy.subject = "energy";
    energy.scalar = v.range_m;
    frame.readings.push_back(energy);
  }

  // Physiology jitter refreshes at 1 Hz; the rng is consumed only here.
  if (tick % 1000 == 0) {
    for (const auto & p : s.passengers) {
      if (onboard_zone_truth(p.zone)) {
        s.hr_jitter_bpm[p.id] =
          static_cast<double>(static_cast<int>(s.rng.next_below(3)) - 1);
      }
    }
  }

  for (const auto & p : s.passengers) {
    const bool onboard = onboard_zone_truth(p.zone);
    const bool visible =
      p.zone != Zone::ABSENT && (onboard || p.distance_m <= kSensorRangeM);
    if (visible) {
      SensorReading posture;
      posture.sensor_id = "cabin_cam";
      posture.channel = FeatureKind::POSTURE;
      posture.subject = p.id;
      posture.code = to_string(p.zone);
      posture.scalar = onboard ? 0.0 : p.distance_m;
      frame.readings.push_back(posture);
      if (p.fallen) {
        SensorReading fallen;
        fallen.sensor_id = "cabin_cam";
        fallen.channel = FeatureKind::FALLEN;
        fallen.subject = p.id;
        fallen.scalar = 1.0;
        frame.readings.push_back(fallen);
      }
    }
    if (onboard) {
      SensorReading hr;
      hr.sensor_id = "wearable";
      hr.channel = FeatureKind::HEART_RATE;
      hr.subject = p.id;
      auto it = s.hr_jitter_bpm.find(p.id);
      hr.scalar = p.hr_bpm + (it == s.hr_jitter_bpm.end() ? 0.0 : it->second);
      frame.readings.push_back(hr);
    }
  }

  // Traffic at the current stop: occupancy feature every parked tick plus
  // a one-shot infrastructure broadcast per disturbance activation.
  if (v.position.at_node() && v.stationary() && s.arrival_tick >= 0) {
    for (const auto & d : active) {
      if (d.subtype != DisturbanceSubtype::ENV_TRAFFIC || d.param("node") != v.position.at) {
        continue;
      }
      auto intervals = parse_intervals(d.param("intervals"));
      if (d.param("anchor", "from_arrival") == "from_arrival") {
        for (auto & [lo, hi] : intervals) {
          lo += s.arrival_tick;
          hi += s.arrival_tick;
        }
      }
      const std::string rendered = render_intervals(intervals);

      SensorReading traffic;
      traffic.sensor_id = "door_cam";
      traffic.channel = FeatureKind::TRAFFIC_OCCUPANCY;
      traffic.subject = v.position.at;
      traffic.text = rendered;
      frame.readings.push_back(traffic);

      const auto key = std::make_pair(v.position.at, d.onset);
      if (s.traffic_broadcast_done.insert(key).second) {
        ExternalMessage msg;
        msg.tick = tick;
        msg.origin = Origin::INFRASTRUCTURE;
        Feature f;
        f.kind = FeatureKind::TRAFFIC_OCCUPANCY;
        f.subject = v.position.at;
        f.text = rendered;
        f.tick = tick;
        msg.payload.push_back(f);
        out.broadcasts.push_back(msg);
      }
    }
  }

  // Blocked-edge notice goes out once, at onset.
  for (const auto & d : active) {
    if (d.subtype == DisturbanceSubtype::ENV_BLOCKED_EDGE && d.onset == tick &&
        s.edge_broadcast_done.insert(d.onset).second) {
      ExternalMessage msg;
      msg.tick = tick;
      msg.origin = Origin::INFRASTRUCTURE;
      Feature f;
      f.kind = FeatureKind::EXTERNAL_INFO;
      f.subject = d.param("edge");
      f.code = "BLOCKED_EDGE";
      f.tick = tick;
      msg.payload.push_back(f);
      out.broadcasts.push_back(msg);
    }
  }

  return out;
}

}  // namespace chaperone
