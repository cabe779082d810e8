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

#include "chaperone/representation.hpp"

#include <algorithm>
#include <queue>

namespace chaperone
{

const ActorContext * SituationModel::find_actor(const PassengerId & id) const
{
  for (const auto & a : actors) {
    if (a.id == id) {
      return &a;
    }
  }
  return nullptr;
}

const GoalProjection * WorldProjection::find_goal(const NodeId & goal) const
{
  for (const auto & g : goals) {
    if (g.goal == goal) {
      return &g;
    }
  }
  return nullptr;
}

namespace
{

bool person_kind(FeatureKind k)
{
  switch (k) {
    case FeatureKind::SPEECH:
    case FeatureKind::IDENTITY:
    case FeatureKind::GESTURE:
    case FeatureKind::POSTURE:
    case FeatureKind::FALLEN:
    case FeatureKind::BODY_TEMP:
    case FeatureKind::HEART_RATE:
    case FeatureKind::BREATH_RATE:
      return true;
    default:
      return false;
  }
}

ActorContext * find_mut(std::vector<ActorContext> & actors, const PassengerId & id)
{
  for (auto & a : actors) {
    if (a.id == id) {
      return &a;
    }
  }
  return nullptr;
}

void clamp_zone_distance(ActorContext & a)
{
  if (cabin_zone(a.zone) || a.zone == Zone::DOORWAY || a.zone == Zone::ON_PLATFORM) {
    a.distance_to_vehicle_m = 0.0;
  } else if (a.zone == Zone::OUTSIDE_NEAR) {
    a.distance_to_vehicle_m = std::min(a.distance_to_vehicle_m, kOutsideNearMaxM);
  }
}

void refresh_health(ActorContext & a, Tick now)
{
  const bool hard =
    (a.hr_hard_out_since >= 0 && now - a.hr_hard_out_since >= kHrSustainMs) ||
    (a.fallen_since >= 0 && now - a.fallen_since >= kFallenSustainMs);
  const bool soft = a.hr_soft_out_since >= 0 && now - a.hr_soft_out_since >= kHrSustainMs;
  a.health = hard ? HealthState::EMERGENCY
                  : (soft ? HealthState::ELEVATED : HealthState::NORMAL);
}

/// Shortest physical distance (meters) from `position` to each node.
std::map<NodeId, double> length_costs(const RoadGraph & graph, const Position & position)
{
  using Entry = std::pair<double, NodeId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> open;
  if (position.at_node()) {
    open.push({0.0, position.at});
  } else {
    const RoadEdge * e = graph.find_edge(position.at, position.toward);
    const double len = e != nullptr ? e->length_m : 0.0;
    open.push({position.progress_m, position.at});
    open.push({std::max(0.0, len - position.progress_m), position.toward});
  }
  std::map<NodeId, double> out;
  while (!open.empty()) {
    auto [cost, at] = open.top();
    open.pop();
    if (out.count(at) != 0) {
      continue;
    }
    out[at] = cost;
    for (const RoadEdge * e : graph.edges_at(at)) {
      const NodeId & next = e->a == at ? e->b : e->a;
      if (out.count(next) == 0) {
        open.push({cost + e->length_m, next});
      }
    }
  }
  return out;
}

}  // namespace

Result<SituationModel> update_situation_model(
  const SituationModel & prev, const FeatureSet & fs,
  const std::vector<PassengerProfile> & profiles)
{
  SituationModel sit = prev;
  sit.tick = fs.tick;

  // Declared passengers always appear exactly once, even before their
  // first feature arrives.
  for (const auto & p : profiles) {
    if (find_mut(sit.actors, p.id) == nullptr) {
      ActorContext a;
      a.id = p.id;
      a.role = ActorRole::PASSENGER;
      a.zone = Zone::ABSENT;
      sit.actors.push_back(a);
    }
  }

  std::set<PassengerId> touched;
  for (const auto & f : fs.features) {
    if (person_kind(f.kind)) {
      ActorContext * actor = find_mut(sit.actors, f.subject);
      if (actor == nullptr) {
        // External persons announce themselves through POSTURE features
        // carrying their scripted role.
        if (f.kind != FeatureKind::POSTURE || f.text.empty()) {
          return fail<SituationModel>(
            ErrorCode::UNKNOWN_SUBJECT, "feature subject " + f.subject + " not declared");
        }
        ActorContext a;
        a.id = f.subject;
        a.role = parse_as<ActorRole>(f.text).value_or(ActorRole::EXTERNAL_OTHER);
        sit.actors.push_back(a);
        actor = &sit.actors.back();
      }
      touched.insert(f.subject);
      switch (f.kind) {
        case FeatureKind::POSTURE: {
          if (const auto z = parse_as<Zone>(f.code)) {
            actor->zone = *z;
          }
          actor->distance_to_vehicle_m = f.scalar;
          if (!f.text.empty() && actor->role != ActorRole::PASSENGER) {
            actor->role = parse_as<ActorRole>(f.text).value_or(actor->role);
          }
          clamp_zone_distance(*actor);
          break;
        }
        case FeatureKind::FALLEN: {
          const bool fallen = f.scalar > 0.0;
          if (fallen && actor->fallen_since < 0) {
            actor->fallen_since = f.tick;
          }
          if (!fallen) {
            actor->fallen_since = -1;
          }
          if (fallen && actor->zone == Zone::CABIN_SEATED) {
            actor->zone = Zone::CABIN_UNSECURED;
          }
          break;
        }
        case FeatureKind::HEART_RATE: {
          actor->last_hr_bpm = f.scalar;
          const bool soft_out = f.scalar < kHrSoftLow || f.scalar > kHrSoftHigh;
          const bool hard_out = f.scalar < kHrHardLow || f.scalar > kHrHardHigh;
          if (soft_out && actor->hr_soft_out_since < 0) {
            actor->hr_soft_out_since = f.tick;
          }
          if (!soft_out) {
            actor->hr_soft_out_since = -1;
          }
          if (hard_out && actor->hr_hard_out_since < 0) {
            actor->hr_hard_out_since = f.tick;
          }
          if (!hard_out) {
            actor->hr_hard_out_since = -1;
          }
          break;
        }
        default:
          break;
      }
      continue;
    }
    switch (f.kind) {
      case FeatureKind::VEHICLE_POSE: {
        if (const auto pos = parse_position(f.text)) {
          sit.self_representation.position = *pos;
        }
        sit.self_representation.speed_mps = f.scalar;
        if (const auto odo = parse_int(f.code)) {
          sit.self_representation.odometer_mm = *odo;
        }
        sit.scenery.clear();
        sit.scenery.push_back(to_string(sit.self_representation.position));
        break;
      }
      case FeatureKind::DOOR_POSITION:
        if (const auto d = parse_as<DoorState>(f.code)) {
          sit.self_representation.door = *d;
        }
        break;
      case FeatureKind::LOCK_STATE:
        if (const auto l = parse_as<LockState>(f.code)) {
          sit.self_representation.lock = *l;
        }
        break;
      case FeatureKind::PLATFORM_POSITION:
        if (f.subject == "platform") {
          if (const auto p = parse_as<PlatformState>(f.code)) {
            sit.self_representation.platform = *p;
          }
        }
        break;
      case FeatureKind::SUBSYSTEM_HEALTH:
        if (f.subject == "energy") {
          sit.self_representation.range_m = f.scalar;
        }
        break;
      default:
        break;
    }
  }

  for (auto & a : sit.actors) {
    if (touched.count(a.id) != 0) {
      refresh_health(a, sit.tick);
    }
  }

  // Deterministic actor order: declared passengers first, externals by id.
  std::vector<ActorContext> ordered;
  for (const auto & p : profiles) {
    if (const ActorContext * a = sit.find_actor(p.id)) {
      ordered.push_back(*a);
    }
  }
  std::vector<ActorContext> externals;
  for (const auto & a : sit.actors) {
    if (find_profile(profiles, a.id) == nullptr) {
      externals.push_back(a);
    }
  }
  std::sort(externals.begin(), externals.end(), [](const auto & x, const auto & y) {
    return x.id < y.id;
  });
  ordered.insert(ordered.end(), externals.begin(), externals.end());
  sit.actors = std::move(ordered);

  sit.dynamic_elements.clear();
  for (const auto & a : sit.actors) {
    if (a.role != ActorRole::PASSENGER) {
      sit.dynamic_elements.push_back({a.id, a.distance_to_vehicle_m, 0.0});
    }
  }
  return sit;
}

WorldModel update_world_model(
  const WorldModel & prev, const SituationModel & sit,
  const std::vector<PassengerProfile> & profiles, Tick tick)
{
  WorldModel w = prev;
  w.tick = tick;

  w.known_to.clear();
  for (const auto & n : w.map.nodes) {
    auto & who = w.known_to[n.id];
    for (const auto & p : profiles) {
      if (p.known_nodes.count(n.id) != 0) {
        who.insert(p.id);
      }
    }
    bool suitable = false;
    for (const auto & s : w.map.stops) {
      if (s.node == n.id && platform_usable(s)) {
        suitable = true;
      }
    }
    w.suitable_for_platform[n.id] = suitable;
  }

  w.range_remaining_m = sit.self_representation.range_m;
  w.vehicle_position = sit.self_representation.position;
  w.odometer_mm = sit.self_representation.odometer_mm;

  w.passenger_projection.clear();
  for (const auto & a : sit.actors) {
    if (a.role != ActorRole::PASSENGER) {
      continue;
    }
    const bool onboard = onboard_zone(a.zone);
    if (!onboard) {
      w.onboard_since.erase(a.id);
      continue;
    }
    if (w.onboard_since.count(a.id) == 0) {
      w.onboard_since[a.id] = tick;
    }
    const PassengerProfile * p = find_profile(profiles, a.id);
    const std::int64_t max_ride_s = p != nullptr ? p->max_ride_duration_s : 3600;
    const std::int64_t elapsed_s = (tick - w.onboard_since[a.id]) / 1000;
    PassengerProjection proj;
    switch (a.health) {
      case HealthState::EMERGENCY:
        proj.health_trend = HealthTrend::CRITICAL;
        proj.max_remaining_onboard_s = 0;
        break;
      case HealthState::ELEVATED:
        proj.health_trend = HealthTrend::DEGRADING;
        proj.max_remaining_onboard_s = std::max<std::int64_t>(0, max_ride_s - elapsed_s);
        break;
      case HealthState::NORMAL:
        proj.health_trend = HealthTrend::STABLE;
        proj.max_remaining_onboard_s = std::max<std::int64_t>(0, max_ride_s - elapsed_s);
        break;
    }
    w.passenger_projection[a.id] = proj;
  }

  std::optional<double> nearest;
  const auto dist = length_costs(w.map, w.vehicle_position);
  for (const auto & n : w.map.nodes) {
    if (!n.assistant_present) {
      continue;
    }
    const auto it = dist.find(n.id);
    if (it != dist.end() && (!nearest || it->second < *nearest)) {
      nearest = it->second;
    }
  }
  w.nearest_assistant_m = nearest;
  return w;
}

WorldProjection predict_world(const WorldModel & w, double horizon_s)
{
  WorldProjection proj;
  proj.tick = w.tick;
  proj.mission_goal = w.mission_goal;

  RouteConstraints constraints = w.constraints;
  for (const auto & e : w.blocked_edges) {
    constraints.excluded_edges.insert(e);
  }
  constraints.max_duration_s.reset();

  NodeId start;
  double offset_s = 0.0;
  double offset_m = 0.0;
  if (w.vehicle_position.at_node()) {
    start = w.vehicle_position.at;
  } else {
    start = w.vehicle_position.toward;
    if (const RoadEdge * e = w.map.find_edge(w.vehicle_position.at, w.vehicle_position.toward)) {
      const double frac =
        e->length_m > 0.0 ? std::clamp(w.vehicle_position.progress_m / e->length_m, 0.0, 1.0)
                          : 1.0;
      offset_s = e->travel_s * (1.0 - frac);
      offset_m = std::max(0.0, e->length_m - w.vehicle_position.progress_m);
    }
  }

  std::vector<NodeId> candidates;
  for (const auto & n : w.map.nodes) {
    if (n.stop_allowed || n.id == w.mission_goal) {
      candidates.push_back(n.id);
    }
  }
  std::sort(candidates.begin(), candidates.end());

  for (const auto & goal : candidates) {
    const auto route = plan_route(w.map, start, goal, constraints);
    if (!route.ok()) {
      continue;
    }
    GoalProjection g;
    g.goal = goal;
    if (const RoadNode * n = w.map.find_node(goal)) {
      g.care_facility = n->care_facility;
      g.stop_allowed = n->stop_allowed;
    }
    g.travel_time_s = offset_s + route.value().travel_s;
    g.distance_m = offset_m + route.value().length_m;
    if (goal == start && w.vehicle_position.at_node()) {
      g.travel_time_s = 0.0;
      g.distance_m = 0.0;
    }
    if (!w.mission_goal.empty()) {
      const auto resume = plan_route(w.map, goal, w.mission_goal, constraints);
      g.resume_travel_s = resume.ok() ? resume.value().travel_s : 0.0;
    }
    for (const auto & [pid, pp] : w.passenger_projection) {
      HealthState arrival = HealthState::NORMAL;
      switch (pp.health_trend) {
        case HealthTrend::CRITICAL:
          arrival = HealthState::EMERGENCY;
          break;
        case HealthTrend::DEGRADING:
          arrival = g.travel_time_s > static_cast<double>(pp.max_remaining_onboard_s)
                      ? HealthState::EMERGENCY
                      : HealthState::ELEVATED;
          break;
        case HealthTrend::STABLE:
          arrival = g.travel_time_s > static_cast<double>(pp.max_remaining_onboard_s)
                      ? HealthState::ELEVATED
                      : HealthState::NORMAL;
          break;
      }
      g.arrival_health[pid] = arrival;
    }
    g.range_feasible = g.distance_m <= w.range_remaining_m;
    g.in_horizon = g.travel_time_s <= horizon_s;
    proj.goals.push_back(std::move(g));
  }
  return proj;
}

std::vector<Hazard> assess_hazards(
  const SituationModel & sit, const std::vector<SubsystemFault> & vehicle_faults,
  const std::vector<PassengerProfile> & profiles)
{
  std::vector<Hazard> out;

  bool door_fault = false;
  for (const auto & f : vehicle_faults) {
    if (f.subsystem == Subsystem::DOOR) {
      door_fault = true;
    }
  }

  std::vector<const ActorContext *> onboard;
  bool any_release_capable = false;
  for (const auto & a : sit.actors) {
    if (a.role == ActorRole::PASSENGER && onboard_zone(a.zone)) {
      onboard.push_back(&a);
      const PassengerProfile * p = find_profile(profiles, a.id);
      if (p != nullptr && p->has(Capability::CAN_OPERATE_MANUAL_RELEASE)) {
        any_release_capable = true;
      }
    }
  }

  if (door_fault && sit.self_representation.lock == LockState::LOCKED && !any_release_capable) {
    for (const ActorContext * a : onboard) {
      Hazard h;
      h.kind = HazardKind::TRAPPED_RISK;
      h.subject = a->id;
      h.severity = 2;
      h.evidence = {FeatureKind::DOOR_POSITION, FeatureKind::LOCK_STATE};
      out.push_back(std::move(h));
    }
  }

  for (const auto & a : sit.actors) {
    if (a.role == ActorRole::PASSENGER && a.health == HealthState::EMERGENCY) {
      Hazard h;
      h.kind = HazardKind::MEDICAL_EMERGENCY;
      h.subject = a.id;
      h.severity = 3;
      h.evidence = {FeatureKind::HEART_RATE};
      if (a.fallen_since >= 0) {
        h.evidence.push_back(FeatureKind::FALLEN);
      }
      out.push_back(std::move(h));
    }
  }

  std::sort(out.begin(), out.end(), [](const Hazard & x, const Hazard & y) {
    if (x.severity != y.severity) {
      return x.severity > y.severity;
    }
    if (x.subject != y.subject) {
      return x.subject < y.subject;
    }
    return std::string(to_string(x.kind)) < to_string(y.kind);
  });
  return out;
}

}  // namespace chaperone
