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

#include "chaperone/strategic.hpp"

#include <algorithm>
#include <limits>

namespace chaperone
{

namespace
{

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPredictHorizonS = 86400.0;

NodeId start_node(const WorldModel & w)
{
  return w.vehicle_position.at_node() ? w.vehicle_position.at : w.vehicle_position.toward;
}

const Hazard * dominant_hazard(const std::vector<Hazard> & hazards)
{
  const Hazard * best = nullptr;
  for (const auto & h : hazards) {
    if (best == nullptr || h.severity > best->severity) {
      best = &h;
    }
  }
  return best;
}

bool resolves(const Hazard & hazard, const GoalProjection & gp)
{
  switch (hazard.kind) {
    case HazardKind::MEDICAL_EMERGENCY:
      return gp.care_facility;
    case HazardKind::EXPOSURE_RISK:
    case HazardKind::STRANDING_RISK:
      // Reaching any legitimate stop ends the exposure.
      return gp.stop_allowed;
    default:
      return false;
  }
}

}  // namespace

AcceptOutcome accept_mission(
  const MissionObjective & obj, const std::vector<PassengerProfile> & profiles,
  const OddSpec & odd, const WorldModel & w)
{
  AcceptOutcome out;

  RouteConstraints constraints;
  constraints.excluded_nodes = odd.excluded_nodes;
  constraints.max_duration_s = static_cast<double>(odd.max_trip_duration_s);
  for (const auto & n : w.map.nodes) {
    switch (odd.allowed_nodes_mode) {
      case AllowedNodesMode::ALL:
        break;
      case AllowedNodesMode::KNOWN_TO_ALL_PASSENGERS:
        for (const auto & id : obj.manifest) {
          const PassengerProfile * p = find_profile(profiles, id);
          if (p != nullptr && p->known_nodes.count(n.id) == 0) {
            constraints.excluded_nodes.insert(n.id);
          }
        }
        break;
      case AllowedNodesMode::EXPLICIT_LIST:
        if (odd.allowed_nodes.count(n.id) == 0) {
          constraints.excluded_nodes.insert(n.id);
        }
        break;
    }
  }
  // The departure node is never excluded; the vehicle is already there.
  constraints.excluded_nodes.erase(start_node(w));

  const auto planned = plan_route(w.map, start_node(w), obj.goal_node, constraints);
  const Route route = planned.ok() ? planned.value() : Route{};
  const OddVerdict verdict = check_mission(odd, obj, profiles, route);
  if (!verdict.ok) {
    out.violations = verdict.violations;
    return out;
  }
  if (!planned.ok()) {
    out.error = planned.error();
    return out;
  }

  StrategyPlan plan;
  plan.action = StrategyAction::CONTINUE;
  plan.goal_node = obj.goal_node;
  plan.route = route;
  plan.mission_goal = obj.goal_node;
  plan.departure_node = start_node(w);
  plan.constraints = constraints;
  out.plan = std::move(plan);
  return out;
}

HarmScore score_option(
  const ActionCandidate & candidate, const WorldProjection & proj,
  const std::vector<Hazard> & hazards)
{
  HarmScore score;
  const Hazard * dominant = dominant_hazard(hazards);

  const GoalProjection * gp =
    candidate.action == StrategyAction::STOP_IMMEDIATELY ? nullptr
                                                         : proj.find_goal(candidate.goal);
  const GoalProjection * mission_gp = proj.find_goal(proj.mission_goal);
  const double mission_travel = mission_gp != nullptr ? mission_gp->travel_time_s : kInf;

  switch (candidate.action) {
    case StrategyAction::CONTINUE:
      score.mission_delay_s = 0.0;
      break;
    case StrategyAction::DIVERT:
    case StrategyAction::RETURN:
      score.mission_delay_s =
        gp != nullptr ? gp->travel_time_s + gp->resume_travel_s - mission_travel : kInf;
      break;
    case StrategyAction::STOP_IMMEDIATELY:
      score.mission_delay_s = kInf;
      break;
  }

  if (dominant == nullptr) {
    score.severity = 0;
    score.time_to_resolution_s = 0.0;
    return score;
  }

  const bool resolved = gp != nullptr && resolves(*dominant, *gp);
  score.severity = resolved ? 0 : dominant->severity;
  score.time_to_resolution_s = resolved ? gp->travel_time_s : kInf;
  return score;
}

StrategyPlan replan(
  const StrategyPlan & current, const WorldModel & w, const std::vector<Hazard> & hazards,
  const PerformanceReport & perf)
{
  if (hazards.empty() && perf.nominal()) {
    // Unchanged, except a stale alert never outlives its hazard.
    StrategyPlan out = current;
    out.alert.reset();
    return out;
  }

  const NodeId here = start_node(w);
  const Hazard * dominant = dominant_hazard(hazards);

  StrategyPlan plan = current;
  plan.alert.reset();
  plan.rationale.clear();
  if (dominant != nullptr && dominant->severity >= 2) {
    AlertRequest alert;
    alert.recipient = dominant->kind == HazardKind::MEDICAL_EMERGENCY ? AlertRecipient::RESCUE
                                                                      : AlertRecipient::CONTROL_ROOM;
    alert.hazard = *dominant;
    plan.alert = alert;
  }

  if (perf.has(ReasonCode::USER_EMERGENCY_STOP)) {
    plan.action = StrategyAction::STOP_IMMEDIATELY;
    plan.route = Route{};
    return plan;
  }

  const WorldProjection proj = predict_world(w, kPredictHorizonS);

  RouteConstraints constraints = current.constraints;
  for (const auto & e : w.blocked_edges) {
    constraints.excluded_edges.insert(e);
  }
  constraints.max_duration_s.reset();
  constraints.excluded_nodes.erase(here);

  std::vector<ScoredOption> options;

  const auto feasible = [&proj](const NodeId & goal) {
    const GoalProjection * gp = proj.find_goal(goal);
    return gp != nullptr && gp->range_feasible;
  };

  if (feasible(current.goal_node)) {
    ActionCandidate c{StrategyAction::CONTINUE, current.goal_node};
    options.push_back({c, score_option(c, proj, hazards)});
  }

  // DIVERT evaluates every projected goal and keeps the best one.
  std::optional<ScoredOption> best_divert;
  for (const auto & gp : proj.goals) {
    if (gp.goal == current.goal_node || gp.goal == current.departure_node ||
        !gp.range_feasible || !gp.stop_allowed) {
      continue;
    }
    ActionCandidate c{StrategyAction::DIVERT, gp.goal};
    ScoredOption scored{c, score_option(c, proj, hazards)};
    if (!best_divert || scored.score < best_divert->score ||
        (scored.score == best_divert->score && c.goal < best_divert->candidate.goal)) {
      best_divert = scored;
    }
  }
  if (best_divert) {
    options.push_back(*best_divert);
  }

  if (current.departure_node != current.goal_node && feasible(current.departure_node)) {
    ActionCandidate c{StrategyAction::RETURN, current.departure_node};
    options.push_back({c, score_option(c, proj, hazards)});
  }

  {
    ActionCandidate c{StrategyAction::STOP_IMMEDIATELY, here};
    options.push_back({c, score_option(c, proj, hazards)});
  }

  // Options are already in action declaration order, which settles ties.
  const ScoredOption * winner = &options.front();
  for (const auto & o : options) {
    if (o.score < winner->score) {
      winner = &o;
    }
  }

  plan.rationale = options;
  plan.action = winner->candidate.action;
  if (plan.action == StrategyAction::STOP_IMMEDIATELY) {
    plan.goal_node = current.goal_node;
    plan.route = Route{};
    return plan;
  }
  plan.goal_node = winner->candidate.goal;
  const auto route = plan_route(w.map, here, plan.goal_node, constraints);
  if (!route.ok()) {
    plan.action = StrategyAction::STOP_IMMEDIATELY;
    plan.route = Route{};
    return plan;
  }
  plan.route = route.value();
  return plan;
}

}  // namespace chaperone
