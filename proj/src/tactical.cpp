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

#include "chaperone/tactical.hpp"

#include <algorithm>
#include <cmath>

namespace chaperone
{

namespace
{

bool manifest_needs_platform(const std::vector<PassengerProfile> & profiles)
{
  for (const auto & p : profiles) {
    if (p.needs_platform) {
      return true;
    }
  }
  return false;
}

Zone subject_zone(const SituationModel & sit, const PassengerId & subject)
{
  const ActorContext * actor = sit.find_actor(subject);
  return actor ? actor->zone : Zone::ABSENT;
}

bool anyone_on_platform(const SituationModel & sit)
{
  for (const auto & a : sit.actors) {
    if (a.zone == Zone::ON_PLATFORM) {
      return true;
    }
  }
  return false;
}

bool anyone_in_doorway(const SituationModel & sit)
{
  for (const auto & a : sit.actors) {
    if (a.zone == Zone::DOORWAY) {
      return true;
    }
  }
  return false;
}

bool at_stop_node(const VehicleState & v, const std::optional<StopPoint> & stop)
{
  if (!stop.has_value()) {
    return v.position.at_node();
  }
  return v.position.at_node() && v.position.at == stop->node;
}

struct RemainingPath
{
  std::vector<NodeId> nodes;
  double travel_s = 0.0;
  double length_m = 0.0;
};

// Suffix of the planned route ahead of the current position, with the
// unfinished part of the current edge included in the totals.
RemainingPath remaining_route(
  const RoadGraph & graph, const std::vector<NodeId> & route, const Position & pos)
{
  RemainingPath out;
  if (route.empty()) {
    return out;
  }
  const NodeId anchor = pos.at_node() ? pos.at : pos.toward;
  auto it = std::find(route.begin(), route.end(), anchor);
  if (it == route.end()) {
    return out;
  }
  out.nodes.assign(it, route.end());
  if (!pos.at_node()) {
    const RoadEdge * edge = graph.find_edge(pos.at, pos.toward);
    if (edge != nullptr && edge->length_m > 0.0) {
      const double left_m = std::max(0.0, edge->length_m - pos.progress_m);
      out.length_m += left_m;
      out.travel_s += edge->travel_s * (left_m / edge->length_m);
    }
  }
  for (std::size_t i = 0; i + 1 < out.nodes.size(); ++i) {
    const RoadEdge * edge = graph.find_edge(out.nodes[i], out.nodes[i + 1]);
    if (edge != nullptr) {
      out.length_m += edge->length_m;
      out.travel_s += edge->travel_s;
    }
  }
  return out;
}

TacticalDirective hold_directive(const BoardingState & state)
{
  TacticalDirective d;
  d.maneuver = Maneuver::HOLD;
  d.speed_limit_mps = 0.0;
  d.target_stop = state.stop;
  return d;
}

}  // namespace

Result<StopPoint> select_stop(
  const NodeId & goal_node, const std::vector<StopPoint> & candidates,
  const std::vector<PassengerProfile> & manifest_profiles)
{
  const bool need_platform = manifest_needs_platform(manifest_profiles);
  std::optional<StopPoint> best;
  for (const auto & s : candidates) {
    if (s.node != goal_node) {
      continue;
    }
    if (need_platform && !platform_usable(s)) {
      continue;
    }
    if (
      !best.has_value() || s.slope_deg < best->slope_deg ||
      (s.slope_deg == best->slope_deg && s.id < best->id)) {
      best = s;
    }
  }
  if (!best.has_value()) {
    return fail<StopPoint>(
      ErrorCode::NO_SUITABLE_STOP, "no usable stop at node " + goal_node);
  }
  return Result<StopPoint>(*best);
}

DoorDecision schedule_door(
  const SituationModel & sit, const std::vector<std::pair<Tick, Tick>> & traffic, Tick now,
  Tick unlock_lead_ms)
{
  (void)sit;
  std::vector<std::pair<Tick, Tick>> busy = traffic;
  std::sort(busy.begin(), busy.end());

  Tick t = now;
  bool moved = true;
  while (moved) {
    moved = false;
    for (const auto & [start, end] : busy) {
      // Interval blocks the gap [t, t + kClearGapMs).
      if (start < t + kClearGapMs && end > t) {
        t = std::max(t, end);
        moved = true;
      }
    }
  }

  DoorDecision out;
  if (t > now + kDoorLookaheadMs) {
    out.deferred = ReasonCode::DOOR_BLOCKED_BY_TRAFFIC;
    return out;
  }
  DoorSchedule sched;
  sched.open_at = t;
  sched.unlock_at = std::max(now, t - unlock_lead_ms);
  out.schedule = sched;
  return out;
}

std::pair<BoardingState, TacticalDirective> step_boarding(
  const BoardingState & state, const SituationModel & sit, const VehicleState & actuator_status,
  const std::vector<PassengerProfile> & profiles, Tick now)
{
  (void)profiles;
  BoardingState next = state;
  TacticalDirective d = hold_directive(state);

  if (!state.active()) {
    return {next, d};
  }

  // Stuck guard: no phase may wait longer than the transfer timeout.
  if (now - state.phase_entered >= kGuardTimeoutMs) {
    next.phase = BoardingPhase::FAILED;
    next.phase_entered = now;
    next.failure = ReasonCode::GUARD_TIMEOUT;
    d.door_close = true;
    return {next, d};
  }

  const Zone zone = subject_zone(sit, state.subject);
  const bool boarding = state.mode == BoardingMode::BOARD;
  const auto enter = [&next, now](BoardingPhase p) {
    next.phase = p;
    next.phase_entered = now;
  };

  switch (state.phase) {
    case BoardingPhase::ALIGN_TO_STOP:
      d.maneuver = Maneuver::ALIGN_TO_STOP;
      d.speed_limit_mps = kCreepSpeedMps;
      if (actuator_status.stationary() && at_stop_node(actuator_status, state.stop)) {
        enter(BoardingPhase::DOOR_OPENING);
      }
      break;

    case BoardingPhase::DOOR_OPENING:
      d.door_schedule = state.door_schedule;
      if (actuator_status.door == DoorState::OPEN) {
        enter(
          state.uses_platform ? BoardingPhase::PLATFORM_DEPLOY
                              : BoardingPhase::PASSENGER_SECURING);
      }
      break;

    case BoardingPhase::PLATFORM_DEPLOY:
      // Interlock: platform moves only behind a fully open door, standing still.
      if (actuator_status.door == DoorState::OPEN && actuator_status.stationary()) {
        d.platform_cmd = PlatformCmd::DEPLOY;
      }
      if (actuator_status.platform == PlatformState::DEPLOYED) {
        enter(BoardingPhase::PLATFORM_LIFT);
      }
      break;

    case BoardingPhase::PLATFORM_LIFT:
      if (actuator_status.platform == PlatformState::DEPLOYED) {
        // Boarding raises the subject; deboarding raises the empty platform
        // up to the sill first.
        const bool ready =
          boarding ? zone == Zone::ON_PLATFORM : zone != Zone::ON_PLATFORM;
        if (ready) {
          d.platform_cmd = PlatformCmd::LIFT;
        }
      } else if (actuator_status.platform == PlatformState::LIFTING) {
        // Keep the intent on the wire so the reflex layer can hold and
        // later resume the motion.
        d.platform_cmd = PlatformCmd::LIFT;
      }
      if (actuator_status.platform == PlatformState::LIFTED) {
        enter(BoardingPhase::PASSENGER_SECURING);
      }
      break;

    case BoardingPhase::PASSENGER_SECURING:
      if (boarding) {
        if (zone == Zone::CABIN_SEATED) {
          enter(
            state.uses_platform ? BoardingPhase::PLATFORM_STOW : BoardingPhase::DOOR_CLOSING);
        }
      } else if (state.uses_platform) {
        if (zone == Zone::ON_PLATFORM) {
          enter(BoardingPhase::PLATFORM_LOWER);
        }
      } else if (zone == Zone::OUTSIDE_NEAR || zone == Zone::ABSENT) {
        enter(BoardingPhase::DOOR_CLOSING);
      }
      break;

    case BoardingPhase::PLATFORM_LOWER:
      if (
        actuator_status.platform == PlatformState::LIFTED ||
        actuator_status.platform == PlatformState::LIFTING) {
        d.platform_cmd = PlatformCmd::LIFT;
      }
      if (actuator_status.platform == PlatformState::DEPLOYED && zone != Zone::ON_PLATFORM) {
        enter(BoardingPhase::PLATFORM_STOW);
      }
      break;

    case BoardingPhase::PLATFORM_STOW:
      // Never stow under a standing passenger.
      if (!anyone_on_platform(sit)) {
        // A raised lift lowers back to DEPLOYED before it can fold away;
        // the wire keeps saying LIFT until the descent finishes.
        d.platform_cmd = actuator_status.platform == PlatformState::LIFTED ||
                             actuator_status.platform == PlatformState::LIFTING
                           ? PlatformCmd::LIFT
                           : PlatformCmd::STOW;
      }
      if (actuator_status.platform == PlatformState::STOWED) {
        enter(BoardingPhase::DOOR_CLOSING);
      }
      break;

    case BoardingPhase::DOOR_CLOSING:
      if (anyone_in_doorway(sit)) {
        // Re-open edge: a body in the doorway aborts the close.
        enter(BoardingPhase::DOOR_OPENING);
        next.door_schedule = DoorSchedule{now, now};
        d.door_schedule = next.door_schedule;
        break;
      }
      d.door_close = true;
      if (actuator_status.door == DoorState::CLOSED) {
        enter(BoardingPhase::READY);
        d.lock_engage = true;
      }
      break;

    case BoardingPhase::READY:
    case BoardingPhase::FAILED:
      break;
  }
  return {next, d};
}

TacticalDirective plan_behavior(
  const StrategyPlan & plan, const SituationModel & sit, const BoardingState & boarding,
  const RoadGraph & graph, const std::vector<PassengerProfile> & profiles,
  const std::optional<StopPoint> & target_stop)
{
  TacticalDirective d;
  d.target_stop = target_stop;

  if (plan.action == StrategyAction::STOP_IMMEDIATELY) {
    d.maneuver = Maneuver::PULL_OVER;
    d.speed_limit_mps = 0.0;
    return d;
  }
  if (boarding.active()) {
    d.maneuver = Maneuver::HOLD;
    d.speed_limit_mps = 0.0;
    return d;
  }

  const Position & pos = sit.self_representation.position;
  const RemainingPath rest = remaining_route(graph, plan.route.nodes, pos);
  const bool at_goal =
    pos.at_node() && pos.at == plan.goal_node && rest.length_m <= 0.0;

  if (rest.nodes.empty() || at_goal) {
    d.maneuver = Maneuver::HOLD;
    d.speed_limit_mps = 0.0;
    return d;
  }

  d.route = rest.nodes;
  if (rest.length_m <= kAlignRadiusM) {
    d.maneuver = Maneuver::ALIGN_TO_STOP;
    d.speed_limit_mps = kCreepSpeedMps;
  } else {
    d.maneuver = Maneuver::FOLLOW_ROUTE;
    d.speed_limit_mps = kRouteSpeedMps;
  }
  double eta = rest.travel_s;
  if (manifest_needs_platform(profiles)) {
    eta += kBoardingAllowanceS;
  }
  d.eta_s = eta;
  return d;
}

PerformanceReport report_performance(const TacticalStatus & status)
{
  PerformanceReport r;
  r.level = ReportLevel::TACTICAL;
  if (status.door_deferred) {
    r.reasons.push_back(ReasonCode::DOOR_BLOCKED_BY_TRAFFIC);
  }
  if (status.no_suitable_stop) {
    r.reasons.push_back(ReasonCode::NO_SUITABLE_STOP);
  }
  if (status.operational_failed) {
    r.reasons.push_back(ReasonCode::ACTUATOR_FAULT);
  }
  if (status.guard_timeout) {
    r.reasons.push_back(ReasonCode::GUARD_TIMEOUT);
  }
  if (status.emergency_stop) {
    r.reasons.push_back(ReasonCode::USER_EMERGENCY_STOP);
  }
  if (status.guard_timeout || status.operational_failed) {
    r.status = ReportStatus::FAILED;
  } else if (!r.reasons.empty()) {
    r.status = ReportStatus::DEGRADED;
  } else {
    r.status = ReportStatus::NOMINAL;
  }
  return r;
}

}  // namespace chaperone
