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

#include "chaperone/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace chaperone
{

namespace
{

std::string trim(const std::string & s)
{
  std::size_t b = s.find_first_not_of(" \t\r");
  std::size_t e = s.find_last_not_of(" \t\r");
  if (b == std::string::npos) {
    return "";
  }
  return s.substr(b, e - b + 1);
}

struct EntryLine
{
  std::vector<std::string> positional;
  std::map<std::string, std::string> attrs;
};

EntryLine split_entry(const std::string & rest)
{
  EntryLine out;
  std::istringstream in(rest);
  std::string token;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) {
      out.positional.push_back(token);
    } else {
      out.attrs[token.substr(0, eq)] = token.substr(eq + 1);
    }
  }
  return out;
}

std::optional<bool> parse_bool(const std::string & s)
{
  if (s == "1" || s == "true") {
    return true;
  }
  if (s == "0" || s == "false") {
    return false;
  }
  return std::nullopt;
}

struct ParseCtx
{
  int line_no = 0;
  std::vector<std::string> problems;

  void flag(const std::string & what)
  {
    problems.push_back("line " + std::to_string(line_no) + ": " + what);
  }
};

bool known_role(const std::string & role)
{
  return role == kRoleAdult || role == kRoleChild || role == "CONTROL_ROOM" ||
         role == "GUARDIAN_REMOTE" || role == "INFRASTRUCTURE" || role == "OTHER_VEHICLE";
}

bool origin_actor(const std::string & actor)
{
  const auto o = parse_as<Origin>(actor);
  return o.has_value() && *o != Origin::ONBOARD;
}

}  // namespace

EventLevel natural_level(UserEventKind kind)
{
  switch (kind) {
    case UserEventKind::SET_MISSION:
    case UserEventKind::CHANGE_DESTINATION:
      return EventLevel::STRATEGIC;
    case UserEventKind::REQUEST_STOP:
    case UserEventKind::EMERGENCY_STOP:
      return EventLevel::TACTICAL;
    case UserEventKind::EXTERNAL_MESSAGE:
    default:
      return EventLevel::STRATEGIC;
  }
}

bool PermissionMatrix::allowed(
  const std::string & role, EventLevel level, UserEventKind kind) const
{
  // EXTERNAL_MESSAGE is level-free; everything else binds to its level.
  if (kind != UserEventKind::EXTERNAL_MESSAGE && level != natural_level(kind)) {
    return false;
  }
  // Last explicit rule wins over the default matrix.
  std::optional<bool> explicit_rule;
  for (const auto & r : rules) {
    if (r.role == role && r.level == level && r.kind == kind) {
      explicit_rule = r.allow;
    }
  }
  if (explicit_rule.has_value()) {
    return *explicit_rule;
  }
  if (role == kRoleAdult) {
    return kind != UserEventKind::EXTERNAL_MESSAGE;
  }
  if (role == kRoleChild) {
    return kind == UserEventKind::REQUEST_STOP || kind == UserEventKind::EMERGENCY_STOP;
  }
  if (role == "GUARDIAN_REMOTE" || role == "CONTROL_ROOM") {
    return true;
  }
  if (role == "INFRASTRUCTURE" || role == "OTHER_VEHICLE") {
    return kind == UserEventKind::EXTERNAL_MESSAGE;
  }
  return false;
}

std::string actor_role(const ScenarioSpec & spec, const ActorId & actor)
{
  if (const auto * p = find_profile(spec.profiles, actor)) {
    return p->adult() ? kRoleAdult : kRoleChild;
  }
  if (origin_actor(actor)) {
    return actor;
  }
  return "";
}

Result<ScenarioSpec> parse_scenario(const std::string & text, const std::string & name_hint)
{
  ScenarioSpec spec;
  spec.name = name_hint;
  ParseCtx ctx;
  std::string section;
  bool profiles_seen = false;

  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    ++ctx.line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') {
      continue;
    }
    if (line.front() == '[' && line.back() == ']') {
      section = line.substr(1, line.size() - 2);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      return fail<ScenarioSpec>(
        ErrorCode::PARSE_ERROR,
        "line " + std::to_string(ctx.line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string rest = trim(line.substr(eq + 1));
    const EntryLine entry = split_entry(rest);

    if (section == "meta") {
      if (key == "name") {
        spec.name = rest;
      } else if (key == "seed") {
        if (auto v = parse_int(rest)) {
          spec.seed = static_cast<std::uint64_t>(*v);
        } else {
          return fail<ScenarioSpec>(
            ErrorCode::PARSE_ERROR, "line " + std::to_string(ctx.line_no) + ": bad seed");
        }
      } else if (key == "horizon_s") {
        if (auto v = parse_double(rest)) {
          spec.horizon_s = *v;
        } else {
          return fail<ScenarioSpec>(
            ErrorCode::PARSE_ERROR, "line " + std::to_string(ctx.line_no) + ": bad horizon_s");
        }
      } else {
        ctx.flag("unknown meta key '" + key + "'");
      }
    } else if (section == "map") {
      if (key == "node") {
        if (entry.positional.size() != 1) {
          return fail<ScenarioSpec>(
            ErrorCode::PARSE_ERROR,
            "line " + std::to_string(ctx.line_no) + ": node needs exactly one id");
        }
        RoadNode n;
        n.id = entry.positional[0];
        for (const auto & [k, v] : entry.attrs) {
          const auto b = parse_bool(v);
          if (!b.has_value()) {
            ctx.flag("node flag '" + k + "' not boolean");
            continue;
          }
          if (k == "known_area") {
            n.known_area = *b;
          } else if (k == "stop_allowed") {
            n.stop_allowed = *b;
          } else if (k == "assistant_present") {
            n.assistant_present = *b;
          } else if (k == "care_facility") {
            n.care_facility = *b;
          } else {
            ctx.flag("unknown node attribute '" + k + "'");
          }
        }
        spec.map.nodes.push_back(n);
      } else if (key == "edge") {
        if (entry.positional.size() != 2) {
          return fail<ScenarioSpec>(
            ErrorCode::PARSE_ERROR,
            "line " + std::to_string(ctx.line_no) + ": edge needs two node ids");
        }
        RoadEdge e;
        e.a = entry.positional[0];
        e.b = entry.positional[1];
        for (const auto & [k, v] : entry.attrs) {
          const auto d = parse_double(v);
          if (!d.has_value()) {
            ctx.flag("edge attribute '" + k + "' not numeric");
            continue;
          }
          if (k == "travel_s") {
            e.travel_s = *d;
          } else if (k == "length_m") {
            e.length_m = *d;
          } else {
            ctx.flag("unknown edge attribute '" + k + "'");
          }
        }
        if (e.length_m == 0.0) {
          // Default length assumes the nominal cruise speed.
          e.length_m = e.travel_s * 10.0;
        }
        spec.map.edges.push_back(e);
      } else {
        ctx.flag("unknown map key '" + key + "'");
      }
    } else if (section == "stops") {
      if (key != "stop" || entry.positional.size() != 1) {
        return fail<ScenarioSpec>(
          ErrorCode::PARSE_ERROR,
          "line " + std::to_string(ctx.line_no) + ": expected stop = <id> attrs");
      }
      StopPoint s;
      s.id = entry.positional[0];
      for (const auto & [k, v] : entry.attrs) {
        if (k == "node") {
          s.node = v;
        } else if (k == "slope_deg") {
          if (auto d = parse_double(v)) {
            s.slope_deg = *d;
          } else {
            ctx.flag("bad slope_deg");
          }
        } else if (k == "curb_height_cm") {
          if (auto d = parse_double(v)) {
            s.curb_height_cm = *d;
          } else {
            ctx.flag("bad curb_height_cm");
          }
        } else {
          ctx.flag("unknown stop attribute '" + k + "'");
        }
      }
      spec.map.stops.push_back(s);
    } else if (section == "profiles") {
      if (key != "passenger" || entry.positional.size() != 1) {
        return fail<ScenarioSpec>(
          ErrorCode::PARSE_ERROR,
          "line " + std::to_string(ctx.line_no) + ": expected passenger = <id> attrs");
      }
      profiles_seen = true;
      PassengerProfile p;
      p.id = entry.positional[0];
      bool known_given = false;
      for (const auto & [k, v] : entry.attrs) {
        if (k == "age") {
          if (auto d = parse_int(v)) {
            p.age = static_cast<int>(*d);
          } else {
            ctx.flag("bad age");
          }
        } else if (k == "capabilities") {
          for (const auto & cap : split(v, ',')) {
            if (auto c = parse_as<Capability>(cap)) {
              p.capabilities.insert(*c);
            } else {
              ctx.flag("unknown capability '" + cap + "'");
            }
          }
        } else if (k == "needs_platform") {
          if (auto b = parse_bool(v)) {
            p.needs_platform = *b;
          } else {
            ctx.flag("bad needs_platform");
          }
        } else if (k == "known_nodes") {
          known_given = true;
          for (const auto & n : split(v, ',')) {
            p.known_nodes.insert(n);
          }
        } else if (k == "max_ride_duration_s") {
          if (auto d = parse_int(v)) {
            p.max_ride_duration_s = *d;
          } else {
            ctx.flag("bad max_ride_duration_s");
          }
        } else if (k == "guardian") {
          if (auto o = parse_as<Origin>(v)) {
            p.guardian = *o;
          } else {
            ctx.flag("unknown guardian origin '" + v + "'");
          }
        } else if (k == "start_zone") {
          if (auto z = parse_as<Zone>(v)) {
            spec.start_zones[p.id] = *z;
          } else {
            ctx.flag("unknown start_zone '" + v + "'");
          }
        } else if (k == "hr_base_bpm") {
          if (auto d = parse_double(v)) {
            spec.hr_base_bpm[p.id] = *d;
          } else {
            ctx.flag("bad hr_base_bpm");
          }
        } else {
          ctx.flag("unknown passenger attribute '" + k + "'");
        }
      }
      if (!known_given) {
        // Canonical default: the whole map is familiar.
        for (const auto & n : spec.map.nodes) {
          p.known_nodes.insert(n.id);
        }
      }
      spec.profiles.push_back(p);
    } else if (section == "odd") {
      if (key == "min_solo_age") {
        if (auto d = parse_int(rest)) {
          spec.odd.min_solo_age = static_cast<int>(*d);
        } else {
          ctx.flag("bad min_solo_age");
        }
      } else if (key == "required_capabilities_solo") {
        for (const auto & cap : split(rest, ',')) {
          if (auto c = parse_as<Capability>(cap)) {
            spec.odd.required_capabilities_solo.insert(*c);
          } else {
            ctx.flag("unknown capability '" + cap + "'");
          }
        }
      } else if (key == "allowed_nodes_mode") {
        if (auto m = parse_as<AllowedNodesMode>(rest)) {
          spec.odd.allowed_nodes_mode = *m;
        } else {
          ctx.flag("unknown allowed_nodes_mode '" + rest + "'");
        }
      } else if (key == "allowed_nodes") {
        for (const auto & n : split(rest, ',')) {
          spec.odd.allowed_nodes.insert(n);
        }
      } else if (key == "excluded_nodes") {
        for (const auto & n : split(rest, ',')) {
          spec.odd.excluded_nodes.insert(n);
        }
      } else if (key == "max_trip_duration_s") {
        if (auto d = parse_int(rest)) {
          spec.odd.max_trip_duration_s = *d;
        } else {
          ctx.flag("bad max_trip_duration_s");
        }
      } else if (key == "max_trip_distance_m") {
        if (auto d = parse_int(rest)) {
          spec.odd.max_trip_distance_m = *d;
        } else {
          ctx.flag("bad max_trip_distance_m");
        }
      } else if (key == "env_conditions") {
        spec.odd.env_conditions.clear();
        for (const auto & f : split(rest, ',')) {
          spec.odd.env_conditions.insert(f);
        }
      } else if (key == "assistant_max_distance_m") {
        if (auto d = parse_double(rest)) {
          spec.odd.assistant_max_distance_m = *d;
        } else {
          ctx.flag("bad assistant_max_distance_m");
        }
      } else {
        ctx.flag("unknown odd key '" + key + "'");
      }
    } else if (section == "mission") {
      if (key == "goal_node") {
        spec.mission.goal_node = rest;
      } else if (key == "manifest") {
        for (const auto & id : split(rest, ',')) {
          spec.mission.manifest.push_back(id);
        }
      } else if (key == "urgency") {
        if (auto u = parse_as<Urgency>(rest)) {
          spec.mission.urgency = *u;
        } else {
          ctx.flag("unknown urgency '" + rest + "'");
        }
      } else if (key == "requester") {
        if (auto o = parse_as<Origin>(rest)) {
          spec.mission.requester = *o;
        } else {
          ctx.flag("unknown requester '" + rest + "'");
        }
      } else if (key == "deadline_s") {
        if (auto d = parse_int(rest)) {
          spec.mission.deadline_s = *d;
        } else {
          ctx.flag("bad deadline_s");
        }
      } else {
        ctx.flag("unknown mission key '" + key + "'");
      }
    } else if (section == "disturbances") {
      if (key != "disturbance" || entry.positional.size() != 1) {
        return fail<ScenarioSpec>(
          ErrorCode::PARSE_ERROR,
          "line " + std::to_string(ctx.line_no) + ": expected disturbance = <subtype> attrs");
      }
      Disturbance d;
      const auto st = parse_as<DisturbanceSubtype>(entry.positional[0]);
      if (!st.has_value()) {
        return fail<ScenarioSpec>(
          ErrorCode::PARSE_ERROR, "line " + std::to_string(ctx.line_no) +
                                    ": unknown disturbance subtype '" + entry.positional[0] + "'");
      }
      d.subtype = *st;
      for (const auto & [k, v] : entry.attrs) {
        if (k == "onset") {
          if (auto t = parse_int(v)) {
            d.onset = *t;
          } else {
            ctx.flag("bad onset");
          }
        } else if (k == "expiry") {
          if (auto t = parse_int(v)) {
            d.expiry = *t;
          } else {
            ctx.flag("bad expiry");
          }
        } else {
          d.params[k] = v;
        }
      }
      spec.disturbances.push_back(d);
    } else if (section == "events") {
      if (key != "event") {
        return fail<ScenarioSpec>(
          ErrorCode::PARSE_ERROR, "line " + std::to_string(ctx.line_no) + ": expected event =");
      }
      UserEvent ev;
      for (const auto & [k, v] : entry.attrs) {
        if (k == "tick") {
          if (auto t = parse_int(v)) {
            ev.tick = *t;
          } else {
            ctx.flag("bad event tick");
          }
        } else if (k == "actor") {
          ev.actor = v;
        } else if (k == "level") {
          if (auto l = parse_as<EventLevel>(v)) {
            ev.level = *l;
          } else {
            ctx.flag("unknown event level '" + v + "'");
          }
        } else if (k == "kind") {
          if (auto kd = parse_as<UserEventKind>(v)) {
            ev.kind = *kd;
          } else {
            ctx.flag("unknown event kind '" + v + "'");
          }
        } else {
          ev.payload[k] = v;
        }
      }
      spec.events.push_back(ev);
    } else if (section == "permissions") {
      if ((key != "allow" && key != "deny") || entry.positional.size() != 3) {
        return fail<ScenarioSpec>(
          ErrorCode::PARSE_ERROR,
          "line " + std::to_string(ctx.line_no) + ": expected allow|deny = ROLE LEVEL KIND");
      }
      PermissionRule rule;
      rule.role = entry.positional[0];
      rule.allow = key == "allow";
      if (auto l = parse_as<EventLevel>(entry.positional[1])) {
        rule.level = *l;
      } else {
        ctx.flag("unknown permission level '" + entry.positional[1] + "'");
      }
      if (auto kd = parse_as<UserEventKind>(entry.positional[2])) {
        rule.kind = *kd;
      } else {
        ctx.flag("unknown permission kind '" + entry.positional[2] + "'");
      }
      if (!known_role(rule.role)) {
        ctx.flag("unknown permission role '" + rule.role + "'");
      }
      spec.permissions.rules.push_back(rule);
    } else if (section == "externals") {
      if (key != "message") {
        return fail<ScenarioSpec>(
          ErrorCode::PARSE_ERROR, "line " + std::to_string(ctx.line_no) + ": expected message =");
      }
      ExternalMessage msg;
      Feature f;
      for (const auto & [k, v] : entry.attrs) {
        if (k == "tick") {
          if (auto t = parse_int(v)) {
            msg.tick = *t;
            f.tick = *t;
          } else {
            ctx.flag("bad message tick");
          }
        } else if (k == "origin") {
          if (auto o = parse_as<Origin>(v)) {
            msg.origin = *o;
          } else {
            ctx.flag("unknown origin '" + v + "'");
          }
        } else if (k == "kind") {
          if (auto kd = parse_as<FeatureKind>(v)) {
            f.kind = *kd;
          } else {
            ctx.flag("unknown feature kind '" + v + "'");
          }
        } else if (k == "subject") {
          f.subject = v;
        } else if (k == "code") {
          f.code = v;
        } else if (k == "text") {
          f.text = v;
        } else if (k == "scalar") {
          if (auto d = parse_double(v)) {
            f.scalar = *d;
          } else {
            ctx.flag("bad scalar");
          }
        } else {
          ctx.flag("unknown message attribute '" + k + "'");
        }
      }
      msg.payload.push_back(f);
      spec.externals.push_back(msg);
    } else if (section == "environment") {
      if (key == "vehicle_start") {
        spec.vehicle_start = rest;
      } else if (key == "initial_range_m") {
        if (auto d = parse_double(rest)) {
          spec.initial_range_m = *d;
        } else {
          ctx.flag("bad initial_range_m");
        }
      } else if (key == "door_unlock_lead_ms") {
        if (auto t = parse_int(rest)) {
          spec.door_unlock_lead_ms = *t;
        } else {
          ctx.flag("bad door_unlock_lead_ms");
        }
      } else {
        ctx.flag("unknown environment key '" + key + "'");
      }
    } else {
      return fail<ScenarioSpec>(
        ErrorCode::PARSE_ERROR,
        "line " + std::to_string(ctx.line_no) + ": content outside a known section");
    }
  }

  if (!ctx.problems.empty()) {
    return fail<ScenarioSpec>(ErrorCode::PARSE_ERROR, join(ctx.problems, ';'));
  }

  // Structural validation.
  std::vector<std::string> bad;
  if (spec.map.nodes.empty()) {
    bad.push_back("map declares no nodes");
  }
  for (std::size_t i = 0; i < spec.map.nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < spec.map.nodes.size(); ++j) {
      if (spec.map.nodes[i].id == spec.map.nodes[j].id) {
        bad.push_back("duplicate node id " + spec.map.nodes[i].id);
      }
    }
  }
  for (const auto & e : spec.map.edges) {
    if (spec.map.find_node(e.a) == nullptr || spec.map.find_node(e.b) == nullptr) {
      bad.push_back("edge " + e.a + ":" + e.b + " references undeclared node");
    }
    if (e.travel_s <= 0.0) {
      bad.push_back("edge " + e.a + ":" + e.b + " needs travel_s > 0");
    }
  }
  for (const auto & s : spec.map.stops) {
    if (spec.map.find_node(s.node) == nullptr) {
      bad.push_back("stop " + s.id + " references undeclared node " + s.node);
    }
  }
  for (const auto & p : spec.profiles) {
    if (auto err = validate_profile(p)) {
      bad.push_back("passenger " + p.id + ": " + *err);
    }
    for (const auto & n : p.known_nodes) {
      if (spec.map.find_node(n) == nullptr) {
        bad.push_back("passenger " + p.id + " knows undeclared node " + n);
      }
    }
  }
  if (profiles_seen && spec.mission.manifest.empty()) {
    bad.push_back("mission manifest is empty");
  }
  if (spec.map.find_node(spec.mission.goal_node) == nullptr) {
    bad.push_back("mission goal_node '" + spec.mission.goal_node + "' not on map");
  }
  for (const auto & id : spec.mission.manifest) {
    if (find_profile(spec.profiles, id) == nullptr) {
      bad.push_back("manifest passenger '" + id + "' has no profile");
    }
  }
  for (const auto & n : spec.odd.allowed_nodes) {
    if (spec.map.find_node(n) == nullptr) {
      bad.push_back("odd allowed node '" + n + "' not on map");
    }
  }
  if (
    spec.odd.allowed_nodes_mode == AllowedNodesMode::EXPLICIT_LIST &&
    spec.odd.allowed_nodes.empty()) {
    bad.push_back("EXPLICIT_LIST mode requires allowed_nodes");
  }
  const Tick horizon_ms = static_cast<Tick>(spec.horizon_s * 1000.0);
  for (const auto & d : spec.disturbances) {
    if (d.onset < 0 || d.onset > horizon_ms) {
      bad.push_back(std::string(to_string(d.subtype)) + " onset outside horizon");
    }
    if (d.expiry <= d.onset) {
      bad.push_back(std::string(to_string(d.subtype)) + " expiry precedes onset");
    }
    const DisturbanceCategory cat = category_of(d.subtype);
    if (cat == DisturbanceCategory::PASSENGER) {
      const std::string subject = d.param("subject");
      if (find_profile(spec.profiles, subject) == nullptr) {
        bad.push_back(
          std::string(to_string(d.subtype)) + " targets undeclared passenger '" + subject + "'");
      }
    }
    if (d.subtype == DisturbanceSubtype::ENV_TRAFFIC &&
        spec.map.find_node(d.param("node")) == nullptr) {
      bad.push_back("ENV_TRAFFIC at undeclared node '" + d.param("node") + "'");
    }
    if (d.subtype == DisturbanceSubtype::ENV_BLOCKED_EDGE) {
      const auto parts = split(d.param("edge"), ':');
      if (parts.size() != 2 || spec.map.find_edge(parts[0], parts[1]) == nullptr) {
        bad.push_back("ENV_BLOCKED_EDGE names no declared edge");
      }
    }
  }
  for (const auto & ev : spec.events) {
    if (ev.tick < 0 || ev.tick > horizon_ms) {
      bad.push_back("event at t=" + std::to_string(ev.tick) + " outside horizon");
    }
    if (find_profile(spec.profiles, ev.actor) == nullptr && !origin_actor(ev.actor)) {
      bad.push_back("event references undeclared actor '" + ev.actor + "'");
    }
    if (
      (ev.kind == UserEventKind::SET_MISSION || ev.kind == UserEventKind::CHANGE_DESTINATION) &&
      spec.map.find_node(ev.payload_value("goal_node")) == nullptr) {
      bad.push_back("mission event needs a goal_node on the map");
    }
  }
  for (const auto & m : spec.externals) {
    if (m.origin == Origin::ONBOARD) {
      bad.push_back("external message cannot originate ONBOARD");
    }
  }
  if (spec.vehicle_start.empty() && !spec.map.nodes.empty()) {
    spec.vehicle_start = spec.map.nodes.front().id;
  }
  if (spec.map.find_node(spec.vehicle_start) == nullptr) {
    bad.push_back("vehicle_start '" + spec.vehicle_start + "' not on map");
  }

  if (!bad.empty()) {
    return fail<ScenarioSpec>(ErrorCode::VALIDATION_ERROR, join(bad, ';'));
  }
  return Result<ScenarioSpec>(std::move(spec));
}

Result<ScenarioSpec> load_scenario(const std::string & path)
{
  std::ifstream in(path);
  if (!in) {
    return fail<ScenarioSpec>(ErrorCode::PARSE_ERROR, "cannot open scenario file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string hint = path;
  const auto slash = hint.find_last_of('/');
  if (slash != std::string::npos) {
    hint = hint.substr(slash + 1);
  }
  const auto dot = hint.find_last_of('.');
  if (dot != std::string::npos) {
    hint = hint.substr(0, dot);
  }
  return parse_scenario(buf.str(), hint);
}

}  // namespace chaperone
