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

// Test-side oracles and log audits. Everything here is implemented
// independently from the production code paths it checks: brute-force
// enumeration instead of Dijkstra, linear scans instead of jump chains,
// and literal replays of the documented rules. Expected values frozen in
// the test files were produced by these oracles.

#ifndef TESTS_SUPPORT__ORACLES_HPP_
#define TESTS_SUPPORT__ORACLES_HPP_

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "chaperone/actuation.hpp"
#include "chaperone/event_log.hpp"
#include "chaperone/map.hpp"
#include "chaperone/perception.hpp"
#include "chaperone/representation.hpp"
#include "chaperone/runtime.hpp"
#include "chaperone/scenario.hpp"
#include "chaperone/strategic.hpp"
#include "chaperone/tactical.hpp"
#include "chaperone/vehicle.hpp"

namespace chaperone::testing
{

// ---------------------------------------------------------------------------
// Fixtures

/// Five-node reference graph: A-B 300s, B-C 300s, A-D 600s, D-C 600s,
/// B-H 120s. H is the care facility. Lengths follow the 10 m/s route speed.
inline RoadGraph g0()
{
  RoadGraph g;
  for (const char * id : {"A", "B", "C", "D", "H"}) {
    RoadNode n;
    n.id = id;
    n.care_facility = n.id == "H";
    g.nodes.push_back(n);
  }
  const auto edge = [](const char * a, const char * b, double travel_s) {
    RoadEdge e;
    e.a = a;
    e.b = b;
    e.travel_s = travel_s;
    e.length_m = travel_s * 10.0;
    return e;
  };
  g.edges = {
    edge("A", "B", 300), edge("B", "C", 300), edge("A", "D", 600), edge("D", "C", 600),
    edge("B", "H", 120),
  };
  g.stops = {
    StopPoint{"A1", "A", 1.0, 12.0},
    StopPoint{"C1", "C", 0.5, 10.0},
    StopPoint{"H1", "H", 0.0, 8.0},
  };
  return g;
}

inline std::string scenario_path(const std::string & name)
{
  return std::string(CHAPERONE_SCENARIO_DIR) + "/" + name;
}

inline std::string golden_path(const std::string & name)
{
  return std::string(CHAPERONE_GOLDEN_DIR) + "/" + name;
}

// ---------------------------------------------------------------------------
// Route oracle: exhaustive simple-path enumeration.

struct OraclePath
{
  std::vector<NodeId> nodes;
  double cost = 0.0;
};

namespace detail
{

inline void enumerate_paths(
  const RoadGraph & g, const RouteConstraints & c, const NodeId & to,
  std::vector<NodeId> & path, std::set<NodeId> & visited, double cost,
  std::optional<OraclePath> & best)
{
  const NodeId & at = path.back();
  if (at == to) {
    const bool better = !best || cost < best->cost ||
                        (cost == best->cost && path < best->nodes);
    if (better) {
      best = OraclePath{path, cost};
    }
    return;
  }
  for (const RoadEdge * e : g.edges_at(at)) {
    const NodeId & next = e->a == at ? e->b : e->a;
    if (visited.count(next) || c.excluded_nodes.count(next) ||
        c.excluded_edges.count(make_edge_key(e->a, e->b))) {
      continue;
    }
    visited.insert(next);
    path.push_back(next);
    enumerate_paths(g, c, to, path, visited, cost + e->travel_s, best);
    path.pop_back();
    visited.erase(next);
  }
}

}  // namespace detail

/// Minimum-cost simple path honoring exclusions; equal costs resolve to
/// the lexicographically smallest node sequence. nullopt when no path
/// survives the exclusions (or the best one exceeds max_duration_s).
inline std::optional<OraclePath> brute_force_route(
  const RoadGraph & g, const NodeId & from, const NodeId & to, const RouteConstraints & c = {})
{
  if (g.find_node(from) == nullptr || g.find_node(to) == nullptr) {
    return std::nullopt;
  }
  std::vector<NodeId> path{from};
  std::set<NodeId> visited{from};
  std::optional<OraclePath> best;
  detail::enumerate_paths(g, c, to, path, visited, 0.0, best);
  if (best && c.max_duration_s && best->cost > *c.max_duration_s) {
    return std::nullopt;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Random routing cases.

struct RandomRouteCase
{
  RoadGraph graph;
  NodeId from;
  NodeId to;
  RouteConstraints constraints;
};

/// Up to 10 nodes and 20 edges, random positive integer costs, random
/// node/edge exclusions that never cover the endpoints. Disconnected
/// graphs are allowed; both sides must then agree on NO_ROUTE.
inline RandomRouteCase random_route_case(std::mt19937_64 & rng)
{
  RandomRouteCase out;
  const int n = 2 + static_cast<int>(rng() % 9);  // 2..10 nodes
  for (int i = 0; i < n; ++i) {
    RoadNode node;
    node.id = "N" + std::to_string(i);
    out.graph.nodes.push_back(node);
  }
  const int m = 1 + static_cast<int>(rng() % 20);  // 1..20 edges
  std::set<std::pair<int, int>> used;
  for (int i = 0; i < m; ++i) {
    const int a = static_cast<int>(rng() % n);
    const int b = static_cast<int>(rng() % n);
    if (a == b || used.count(std::minmax(a, b))) {
      continue;
    }
    used.insert(std::minmax(a, b));
    RoadEdge e;
    e.a = "N" + std::to_string(a);
    e.b = "N" + std::to_string(b);
    e.travel_s = static_cast<double>(1 + rng() % 999);
    e.length_m = e.travel_s * 10.0;
    out.graph.edges.push_back(e);
  }
  out.from = "N" + std::to_string(rng() % n);
  out.to = "N" + std::to_string(rng() % n);
  for (const auto & node : out.graph.nodes) {
    if (node.id != out.from && node.id != out.to && rng() % 5 == 0) {
      out.constraints.excluded_nodes.insert(node.id);
    }
  }
  for (const auto & e : out.graph.edges) {
    if (rng() % 7 == 0) {
      out.constraints.excluded_edges.insert(make_edge_key(e.a, e.b));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Door scheduling oracle: linear scan at operational resolution.

/// Earliest t in [now, now+lookahead] with [t, t+gap) clear of every busy
/// interval; nullopt when the whole window is blocked.
inline std::optional<Tick> scan_door_open(
  const std::vector<std::pair<Tick, Tick>> & busy, Tick now, Tick gap = kClearGapMs,
  Tick lookahead = kDoorLookaheadMs)
{
  for (Tick t = now; t <= now + lookahead; t += kOperationalPeriodMs) {
    bool clear = true;
    for (const auto & [lo, hi] : busy) {
      if (lo < t + gap && t < hi) {
        clear = false;
        break;
      }
    }
    if (clear) {
      return t;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Health banding oracle: literal replay of the documented hysteresis.

struct HealthSample
{
  Tick tick = 0;
  double hr_bpm = 75.0;
  bool fallen = false;
};

/// NORMAL unless the heart rate sat outside the soft band for >= 10 s
/// (ELEVATED) or outside the hard band for >= 10 s, or the subject lay
/// fallen for >= 5 s (both EMERGENCY). Samples must be tick-ascending.
inline HealthState health_replay(const std::vector<HealthSample> & samples)
{
  Tick soft_since = -1;
  Tick hard_since = -1;
  Tick fallen_since = -1;
  HealthState state = HealthState::NORMAL;
  for (const auto & s : samples) {
    const bool soft_out = s.hr_bpm < kHrSoftLow || s.hr_bpm > kHrSoftHigh;
    const bool hard_out = s.hr_bpm < kHrHardLow || s.hr_bpm > kHrHardHigh;
    soft_since = soft_out ? (soft_since < 0 ? s.tick : soft_since) : -1;
    hard_since = hard_out ? (hard_since < 0 ? s.tick : hard_since) : -1;
    fallen_since = s.fallen ? (fallen_since < 0 ? s.tick : fallen_since) : -1;
    state = HealthState::NORMAL;
    if (soft_since >= 0 && s.tick - soft_since >= kHrSustainMs) {
      state = HealthState::ELEVATED;
    }
    if (hard_since >= 0 && s.tick - hard_since >= kHrSustainMs) {
      state = HealthState::EMERGENCY;
    }
    if (fallen_since >= 0 && s.tick - fallen_since >= kFallenSustainMs) {
      state = HealthState::EMERGENCY;
    }
  }
  return state;
}

// ---------------------------------------------------------------------------
// Fault detection oracle: verb table plus consecutive-window replay.

/// Achieved states that satisfy a commanded verb: the target itself or a
/// transit state toward it. Unknown verbs never diverge.
inline bool oracle_consistent(
  Subsystem subsystem, const std::string & commanded, const std::string & achieved)
{
  static const std::map<std::pair<Subsystem, std::string>, std::set<std::string>> table = {
    {{Subsystem::DOOR, "OPEN"}, {"OPEN", "OPENING"}},
    {{Subsystem::DOOR, "CLOSE"}, {"CLOSED", "CLOSING"}},
    {{Subsystem::LOCK, "LOCK"}, {"LOCKED"}},
    {{Subsystem::LOCK, "UNLOCK"}, {"UNLOCKED"}},
    {{Subsystem::PLATFORM, "DEPLOY"}, {"DEPLOYED", "DEPLOYING"}},
    {{Subsystem::PLATFORM, "LIFT"}, {"LIFTED", "LIFTING"}},
    {{Subsystem::PLATFORM, "STOW"}, {"STOWED", "STOWING"}},
  };
  const auto it = table.find({subsystem, commanded});
  return it == table.end() || it->second.count(achieved) != 0;
}

/// Faults after >= `window` consecutive divergent ticks per subsystem.
inline std::vector<SubsystemFault> fault_replay(
  const std::vector<std::vector<ActuatorReport>> & history, int window = kFaultWindowTicks)
{
  std::map<Subsystem, int> runs;
  for (const auto & tick_reports : history) {
    std::set<Subsystem> divergent;
    for (const auto & r : tick_reports) {
      if (!oracle_consistent(r.subsystem, r.commanded, r.achieved)) {
        divergent.insert(r.subsystem);
      }
    }
    for (auto & [sub, run] : runs) {
      if (!divergent.count(sub)) {
        run = 0;
      }
    }
    for (const auto sub : divergent) {
      runs[sub] += 1;
    }
  }
  std::vector<SubsystemFault> out;
  for (const auto & [sub, run] : runs) {
    if (run >= window) {
      out.push_back({sub, FaultMode::STUCK});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Course-of-action oracle: candidate enumeration plus lexicographic
// minimization, reimplemented from the scoring contract.

struct OracleChoice
{
  StrategyAction action = StrategyAction::CONTINUE;
  NodeId goal;
  HarmScore score;
};

namespace detail
{

inline const Hazard * dominant_of(const std::vector<Hazard> & hazards)
{
  const Hazard * best = nullptr;
  for (const auto & h : hazards) {
    if (best == nullptr || h.severity > best->severity) {
      best = &h;
    }
  }
  return best;
}

inline bool goal_resolves(const Hazard & h, const GoalProjection & gp)
{
  switch (h.kind) {
    case HazardKind::MEDICAL_EMERGENCY:
      return gp.care_facility;
    case HazardKind::EXPOSURE_RISK:
    case HazardKind::STRANDING_RISK:
      return gp.stop_allowed;
    default:
      return false;
  }
}

inline HarmScore oracle_score(
  StrategyAction action, const GoalProjection * gp, const WorldProjection & proj,
  const std::vector<Hazard> & hazards)
{
  constexpr double inf = 1e18;
  const GoalProjection * mission = proj.find_goal(proj.mission_goal);
  const double mission_travel = mission != nullptr ? mission->travel_time_s : inf;
  HarmScore s;
  switch (action) {
    case StrategyAction::CONTINUE:
      s.mission_delay_s = 0.0;
      break;
    case StrategyAction::DIVERT:
    case StrategyAction::RETURN:
      s.mission_delay_s =
        gp != nullptr ? gp->travel_time_s + gp->resume_travel_s - mission_travel : inf;
      break;
    case StrategyAction::STOP_IMMEDIATELY:
      s.mission_delay_s = inf;
      break;
  }
  const Hazard * dom = dominant_of(hazards);
  if (dom == nullptr) {
    return s;
  }
  const bool resolved = gp != nullptr && goal_resolves(*dom, *gp);
  s.severity = resolved ? 0 : dom->severity;
  s.time_to_resolution_s = resolved ? gp->travel_time_s : inf;
  return s;
}

}  // namespace detail

/// Scores CONTINUE, the best DIVERT over all projected goals, RETURN, and
/// STOP_IMMEDIATELY, then takes the lexicographic minimum; declaration
/// order settles score ties. Independent of the production replan.
inline OracleChoice enumerate_options(
  const WorldProjection & proj, const std::vector<Hazard> & hazards, const NodeId & goal,
  const NodeId & departure, const NodeId & here)
{
  std::vector<OracleChoice> options;
  if (const GoalProjection * gp = proj.find_goal(goal); gp != nullptr && gp->range_feasible) {
    options.push_back(
      {StrategyAction::CONTINUE, goal,
       detail::oracle_score(StrategyAction::CONTINUE, gp, proj, hazards)});
  }
  std::optional<OracleChoice> divert;
  for (const auto & gp : proj.goals) {
    if (gp.goal == goal || gp.goal == departure || !gp.range_feasible || !gp.stop_allowed) {
      continue;
    }
    OracleChoice c{
      StrategyAction::DIVERT, gp.goal,
      detail::oracle_score(StrategyAction::DIVERT, &gp, proj, hazards)};
    if (!divert || c.score < divert->score ||
        (c.score == divert->score && c.goal < divert->goal)) {
      divert = c;
    }
  }
  if (divert) {
    options.push_back(*divert);
  }
  if (departure != goal) {
    if (const GoalProjection * gp = proj.find_goal(departure);
        gp != nullptr && gp->range_feasible) {
      options.push_back(
        {StrategyAction::RETURN, departure,
         detail::oracle_score(StrategyAction::RETURN, gp, proj, hazards)});
    }
  }
  options.push_back(
    {StrategyAction::STOP_IMMEDIATELY, here,
     detail::oracle_score(StrategyAction::STOP_IMMEDIATELY, nullptr, proj, hazards)});

  OracleChoice best = options.front();
  for (const auto & o : options) {
    if (o.score < best.score) {
      best = o;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Log audits. Each returns human-readable findings; empty means clean.

inline std::map<std::string, std::string> payload_map(const Record & r)
{
  std::map<std::string, std::string> out;
  for (const auto & [k, v] : r.payload) {
    out[k] = v;
  }
  return out;
}

/// (tick, module-priority) must never decrease.
inline std::vector<std::string> audit_order(const EventLog & log)
{
  std::vector<std::string> findings;
  if (!log.ordered()) {
    for (std::size_t i = 1; i < log.records.size(); ++i) {
      const auto & a = log.records[i - 1];
      const auto & b = log.records[i];
      if (std::pair(a.tick, a.module) > std::pair(b.tick, b.module)) {
        findings.push_back(
          "order violation at index " + std::to_string(i) + ": " + to_line(a) + " before " +
          to_line(b));
      }
    }
  }
  return findings;
}

/// Command records may only descend one level; report records may only
/// ascend one level.
inline std::vector<std::string> audit_hierarchy(const EventLog & log)
{
  static const std::map<std::string, std::string> down = {
    {"strategic", "tactical"}, {"tactical", "operational"}, {"operational", "plant"}};
  static const std::map<std::string, std::string> up = {
    {"plant", "operational"}, {"operational", "tactical"}, {"tactical", "strategic"}};
  std::vector<std::string> findings;
  for (const auto & r : log.records) {
    const std::string flow = r.find("flow");
    if (flow.empty()) {
      continue;
    }
    const std::string src = to_string(r.module);
    const std::string dst = r.find("dst");
    const auto & table = flow == "cmd" ? down : up;
    const auto it = table.find(src);
    if (it == table.end() || it->second != dst) {
      findings.push_back("illegal " + flow + " edge " + src + "->" + dst + ": " + to_line(r));
    }
  }
  return findings;
}

/// Door-speed and platform-door interlocks over every plant state record.
inline std::vector<std::string> audit_interlocks(const EventLog & log)
{
  std::vector<std::string> findings;
  for (const auto & r : log.records) {
    if (r.module != Module::PLANT || r.type != "state") {
      continue;
    }
    const double v = parse_double(r.find("v")).value_or(0.0);
    const std::string door = r.find("door");
    const std::string platform = r.find("platform");
    if (door != "CLOSED" && v > 0.5) {
      findings.push_back("moving with open door: " + to_line(r));
    }
    const bool platform_moving =
      platform == "DEPLOYING" || platform == "LIFTING" || platform == "STOWING";
    if (platform_moving && door != "OPEN") {
      findings.push_back("platform motion behind unopened door: " + to_line(r));
    }
  }
  return findings;
}

/// Replan actions stay in the four-option set; an alert rides on a replan
/// iff its hazard field carries severity >= 2.
inline std::vector<std::string> audit_replans(const EventLog & log)
{
  static const std::set<std::string> actions = {
    "CONTINUE", "DIVERT", "RETURN", "STOP_IMMEDIATELY"};
  std::vector<std::string> findings;
  for (const auto & r : log.records) {
    if (r.type != "replan") {
      continue;
    }
    if (!actions.count(r.find("action"))) {
      findings.push_back("action outside closed world: " + to_line(r));
    }
    int max_severity = 0;
    const std::string hazards = r.find("hazards");
    if (hazards != "none") {
      for (const auto & item : split(hazards, ';')) {
        const auto parts = split(item, ':');
        if (parts.size() == 3) {
          max_severity = std::max<int>(
            max_severity, static_cast<int>(parse_int(parts[2]).value_or(0)));
        }
      }
    }
    const bool has_alert = r.find("alert") != "none";
    if (has_alert != (max_severity >= 2)) {
      findings.push_back("alert/severity mismatch: " + to_line(r));
    }
  }
  return findings;
}

/// Every scripted user event appears in the log exactly once, routed or
/// denied.
inline std::vector<std::string> audit_events(const EventLog & log, const ScenarioSpec & spec)
{
  std::vector<std::string> findings;
  for (const auto & ev : spec.events) {
    int seen = 0;
    for (const auto & r : log.records) {
      if (r.type == "event" && r.tick == ev.tick && r.find("actor") == ev.actor &&
          r.find("kind") == to_string(ev.kind)) {
        ++seen;
        const std::string disp = r.find("disposition");
        if (disp != "routed" && disp != "denied") {
          findings.push_back("unaccounted disposition: " + to_line(r));
        }
      }
    }
    if (seen != 1) {
      findings.push_back(
        "event " + std::string(to_string(ev.kind)) + "@" + std::to_string(ev.tick) + " logged " +
        std::to_string(seen) + " times");
    }
  }
  return findings;
}

/// Differing-seed runs may disagree only in seed-derived physiology
/// records (and the header seed line).
inline std::vector<std::string> diff_excluding_physio(const EventLog & a, const EventLog & b)
{
  const auto strip = [](const EventLog & log) {
    std::vector<std::string> out;
    for (const auto & r : log.records) {
      if (r.type != "physio") {
        out.push_back(to_line(r));
      }
    }
    return out;
  };
  const auto la = strip(a);
  const auto lb = strip(b);
  std::vector<std::string> findings;
  if (la.size() != lb.size()) {
    findings.push_back(
      "non-physio record counts differ: " + std::to_string(la.size()) + " vs " +
      std::to_string(lb.size()));
    return findings;
  }
  for (std::size_t i = 0; i < la.size(); ++i) {
    if (la[i] != lb[i]) {
      findings.push_back("non-physio divergence: " + la[i] + " vs " + lb[i]);
      if (findings.size() >= 5) {
        break;
      }
    }
  }
  return findings;
}

// ---------------------------------------------------------------------------
// Scenario helpers.

inline ScenarioSpec must_load(const std::string & name)
{
  auto r = load_scenario(scenario_path(name));
  if (!r.ok()) {
    throw std::runtime_error("scenario " + name + " failed to load: " + r.error().message);
  }
  return std::move(r).value();
}

inline RunResult run_scenario(const std::string & name, RunOverrides overrides = {})
{
  const ScenarioSpec spec = must_load(name);
  if (overrides.scenario_path.empty()) {
    overrides.scenario_path = scenario_path(name);
  }
  return run(spec, overrides);
}

inline const Record * find_record(
  const EventLog & log, const std::string & type,
  const std::function<bool(const Record &)> & pred = nullptr)
{
  for (const auto & r : log.records) {
    if (r.type == type && (!pred || pred(r))) {
      return &r;
    }
  }
  return nullptr;
}

inline std::vector<const Record *> find_records(const EventLog & log, const std::string & type)
{
  std::vector<const Record *> out;
  for (const auto & r : log.records) {
    if (r.type == type) {
      out.push_back(&r);
    }
  }
  return out;
}

}  // namespace chaperone::testing

#endif  // TESTS_SUPPORT__ORACLES_HPP_
