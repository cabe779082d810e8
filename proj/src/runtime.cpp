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

#include "chaperone/runtime.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "chaperone/odd.hpp"
#include "chaperone/operational.hpp"
#include "chaperone/perception.hpp"
#include "chaperone/plant.hpp"
#include "chaperone/tactical.hpp"

namespace chaperone
{

namespace
{

const std::set<SensorId> & runtime_sensors()
{
  static const std::set<SensorId> sensors = {
    "pose", "door", "platform", "energy", "cabin_cam", "wearable", "door_cam",
  };
  return sensors;
}

const std::set<Origin> & external_origins()
{
  static const std::set<Origin> origins = {
    Origin::CONTROL_ROOM,
    Origin::GUARDIAN_REMOTE,
    Origin::INFRASTRUCTURE,
    Origin::OTHER_VEHICLE,
  };
  return origins;
}

enum class MissionPhase { BOARDING, TRAVEL, DEBOARD, STOPPING, DONE };

const char * phase_name(MissionPhase p)
{
  switch (p) {
    case MissionPhase::BOARDING:
      return "BOARDING";
    case MissionPhase::TRAVEL:
      return "TRAVEL";
    case MissionPhase::DEBOARD:
      return "DEBOARD";
    case MissionPhase::STOPPING:
      return "STOPPING";
    case MissionPhase::DONE:
    default:
      return "DONE";
  }
}

std::string csv(const std::vector<std::string> & parts)
{
  return parts.empty() ? "none" : join(parts, ',');
}

std::string route_csv(const std::vector<NodeId> & nodes)
{
  return csv(nodes);
}

std::string reasons_csv(const PerformanceReport & r)
{
  std::vector<std::string> parts;
  parts.reserve(r.reasons.size());
  for (const auto c : r.reasons) {
    parts.emplace_back(to_string(c));
  }
  return csv(parts);
}

std::string hazard_sig(const std::vector<Hazard> & hazards)
{
  if (hazards.empty()) {
    return "none";
  }
  std::vector<std::string> parts;
  parts.reserve(hazards.size());
  for (const auto & h : hazards) {
    parts.push_back(
      std::string(to_string(h.kind)) + ":" + h.subject + ":" + std::to_string(h.severity));
  }
  return join(parts, ';');
}

std::string fault_sig(const std::vector<SubsystemFault> & faults)
{
  if (faults.empty()) {
    return "none";
  }
  std::vector<std::string> parts;
  parts.reserve(faults.size());
  for (const auto & f : faults) {
    parts.push_back(std::string(to_string(f.subsystem)) + ":" + to_string(f.mode));
  }
  return join(parts, ';');
}

std::string violations_csv(const std::vector<OddViolation> & violations)
{
  if (violations.empty()) {
    return "none";
  }
  std::vector<std::string> parts;
  parts.reserve(violations.size());
  for (const auto & v : violations) {
    parts.push_back(std::string(to_string(v.dimension)) + (v.subject.empty() ? "" : ":" + v.subject));
  }
  return join(parts, ';');
}

std::string payload_sig(const Record & r)
{
  std::string sig = r.type;
  for (const auto & [k, v] : r.payload) {
    sig += '|';
    sig += k;
    sig += '=';
    sig += v;
  }
  return sig;
}

/// Per-tick simulation driver; owns every module's state for one run.
class Runner
{
public:
  Runner(const ScenarioSpec & spec, std::uint64_t seed, Tick end_tick, std::string scenario_path)
  : spec_(spec), seed_(seed), end_tick_(end_tick), scenario_path_(std::move(scenario_path))
  {
  }

  RunResult take()
  {
    if (init()) {
      loop();
    }
    out_.final_tick = now_;
    out_.final_node = current_node();
    out_.verdict = verdict_;
    return std::move(out_);
  }

private:
  // ---- logging helpers ----

  Record make(Module m, const std::string & type)
  {
    Record r;
    r.tick = now_;
    r.module = m;
    r.type = type;
    return r;
  }

  void emit(Record r) { buffer_.push_back(std::move(r)); }

  /// Emits `r` only when its payload changed since the last emission
  /// under `slot`; returns true when it was logged.
  bool emit_delta(const std::string & slot, Record r)
  {
    const std::string sig = payload_sig(r);
    auto it = delta_.find(slot);
    if (it != delta_.end() && it->second == sig) {
      return false;
    }
    delta_[slot] = sig;
    emit(std::move(r));
    return true;
  }

  /// Records of one tick leave in fixed module priority order, whatever
  /// the computation order was.
  void flush()
  {
    std::stable_sort(buffer_.begin(), buffer_.end(), [](const Record & a, const Record & b) {
      return static_cast<int>(a.module) < static_cast<int>(b.module);
    });
    for (auto & r : buffer_) {
      out_.log.add(std::move(r));
    }
    buffer_.clear();
  }

  // ---- small state queries ----

  NodeId current_node() const
  {
    const Position & p = plant_.vehicle.position;
    return p.at_node() ? p.at : p.toward;
  }

  std::vector<PassengerProfile> manifest_profiles() const
  {
    std::vector<PassengerProfile> out;
    for (const auto & id : mission_.manifest) {
      if (const PassengerProfile * p = find_profile(spec_.profiles, id)) {
        out.push_back(*p);
      }
    }
    return out;
  }

  bool onboard_in_sit(const PassengerId & id) const
  {
    const ActorContext * a = sit_.find_actor(id);
    return a != nullptr && onboard_zone(a->zone);
  }

  std::vector<PassengerId> manifest_not_onboard() const
  {
    std::vector<PassengerId> out;
    for (const auto & id : mission_.manifest) {
      if (!onboard_in_sit(id)) {
        out.push_back(id);
      }
    }
    return out;
  }

  std::vector<PassengerId> manifest_onboard() const
  {
    std::vector<PassengerId> out;
    for (const auto & id : mission_.manifest) {
      if (onboard_in_sit(id)) {
        out.push_back(id);
      }
    }
    return out;
  }

  std::optional<StopPoint> stop_for(const NodeId & node)
  {
    const auto picked = select_stop(node, spec_.map.stops, manifest_profiles());
    if (picked.ok()) {
      return picked.value();
    }
    bool any_here = false;
    for (const auto & s : spec_.map.stops) {
      if (s.node == node) {
        any_here = true;
      }
    }
    if (!any_here) {
      // Bare curb: flat, no slot registered for the node.
      return StopPoint{node + "_stop", node, 0.0, 0.0};
    }
    tstatus_.no_suitable_stop = true;
    return std::nullopt;
  }

  Verdict judge(const NodeId & node) const
  {
    if (node == mission_.goal_node) {
      return Verdict::COMPLETED;
    }
    if (node == plan_.departure_node) {
      return Verdict::RETURNED;
    }
    return Verdict::DIVERTED;
  }

  void set_phase(MissionPhase p)
  {
    if (phase_ == p) {
      return;
    }
    phase_ = p;
    emit(make(Module::HARNESS, "phase").with("value", phase_name(p)));
  }

  void finish(Verdict v, const std::string & reason)
  {
    verdict_ = v;
    done_ = true;
    set_phase(MissionPhase::DONE);
    emit(
      make(Module::HARNESS, "verdict")
        .with("value", to_string(v))
        .with("reason", reason)
        .with("node", current_node())
        .with("exit", static_cast<Tick>(verdict_exit_code(v))));
  }

  void fatal(const Error & e)
  {
    emit(make(Module::HARNESS, "error").with("code", to_string(e.code)).with("detail", e.message));
    finish(Verdict::STOPPED, "internal_error");
  }

  // ---- initialization ----

  bool init()
  {
    out_.log.header.emplace_back("name", spec_.name);
    out_.log.header.emplace_back("scenario", scenario_path_);
    out_.log.header.emplace_back("seed", std::to_string(seed_));
    out_.log.header.emplace_back("until_s", std::to_string(end_tick_ / 1000));

    mission_ = spec_.mission;
    plant_.vehicle.position = Position{spec_.vehicle_start, "", 0.0};
    plant_.vehicle.range_m = spec_.initial_range_m;

    // Pre-mission world: map knowledge and the parked pose only.
    world_.map = spec_.map;
    SituationModel boot;
    boot.self_representation.position = Position{spec_.vehicle_start, "", 0.0};
    boot.self_representation.range_m = spec_.initial_range_m;
    world_ = update_world_model(world_, boot, spec_.profiles, 0);

    const AcceptOutcome outcome = accept_mission(mission_, spec_.profiles, spec_.odd, world_);
    emit(
      make(Module::ODD, "gate")
        .with("ok", outcome.accepted() ? "1" : "0")
        .with("violations", violations_csv(outcome.violations)));
    if (!outcome.accepted()) {
      emit(
        make(Module::STRATEGIC, "mission")
          .with("disposition", "rejected")
          .with("goal", mission_.goal_node)
          .with("violations", violations_csv(outcome.violations)));
      finish(Verdict::REJECTED, "odd_gate");
      flush();
      return false;
    }

    plan_ = *outcome.plan;
    world_.mission_goal = plan_.mission_goal;
    world_.departure_node = plan_.departure_node;
    world_.constraints = plan_.constraints;
    emit(
      make(Module::STRATEGIC, "mission")
        .with("disposition", "accepted")
        .with("goal", plan_.goal_node)
        .with("route", route_csv(plan_.route.nodes))
        .with("manifest", csv(mission_.manifest)));
    delta_["plan"] = plan_sig();

    plant_.rng = SplitMix64{seed_};
    for (const auto & p : spec_.profiles) {
      PassengerTruth t;
      t.id = p.id;
      const auto z = spec_.start_zones.find(p.id);
      t.zone = z == spec_.start_zones.end() ? Zone::OUTSIDE_NEAR : z->second;
      t.distance_m = onboard_zone(t.zone) ? 0.0 : 1.0;
      const auto hr = spec_.hr_base_bpm.find(p.id);
      t.hr_base_bpm = hr == spec_.hr_base_bpm.end() ? 75.0 : hr->second;
      t.hr_bpm = t.hr_base_bpm;
      t.needs_platform = p.needs_platform;
      t.can_release = p.has(Capability::CAN_OPERATE_MANUAL_RELEASE);
      plant_.passengers.push_back(t);
    }

    op_report_.level = ReportLevel::OPERATIONAL;
    tact_report_.level = ReportLevel::TACTICAL;
    emit(make(Module::HARNESS, "phase").with("value", phase_name(phase_)));
    return true;
  }

  // ---- per-tick stages ----

  void stage_plant()
  {
    active_ = activate_disturbances(spec_.disturbances, now_);
    plant_.passengers = step_passengers(plant_.passengers, active_, plant_.vehicle, now_);
    PlantStep step = step_plant(plant_, spec_.map, pending_, active_, now_);
    plant_ = step.state;
    frame_ = std::move(step.frame);
    reports_ = std::move(step.reports);
    broadcasts_ = std::move(step.broadcasts);

    const VehicleState & v = plant_.vehicle;
    emit(
      make(Module::PLANT, "state")
        .with("p", to_string(v.position))
        .with("v", v.speed_mps)
        .with("door", to_string(v.door))
        .with("lock", to_string(v.lock))
        .with("platform", to_string(v.platform))
        .with("range", v.range_m));

    for (const auto & truth : plant_.passengers) {
      auto it = logged_zone_.find(truth.id);
      if (it == logged_zone_.end() || it->second != truth.zone) {
        logged_zone_[truth.id] = truth.zone;
        emit(
          make(Module::PLANT, "zone").with("subject", truth.id).with("zone", to_string(truth.zone)));
      }
    }

    if (now_ % kTacticalPeriodMs == 0) {
      for (const auto & r : frame_.readings) {
        if (r.channel == FeatureKind::HEART_RATE) {
          emit(make(Module::PLANT, "physio").with("subject", r.subject).with("hr", r.scalar));
        }
      }
    }

    // Upward honesty: divergent answers to the last command batch.
    std::vector<std::string> divergent;
    for (const auto & r : reports_) {
      const bool discrete = r.subsystem == Subsystem::DOOR || r.subsystem == Subsystem::LOCK ||
                            r.subsystem == Subsystem::PLATFORM;
      if (discrete && !FaultMonitor::consistent(r.subsystem, r.commanded, r.achieved)) {
        divergent.push_back(
          std::string(to_string(r.subsystem)) + ":" + r.commanded + ">" + r.achieved);
      }
    }
    emit_delta(
      "plant_report", make(Module::PLANT, "report")
                        .with("flow", "rep")
                        .with("dst", "operational")
                        .with("ok", divergent.empty() ? "1" : "0")
                        .with("divergent", csv(divergent)));
  }

  void stage_events()
  {
    while (next_event_ < events_.size() && events_[next_event_].tick <= now_) {
      const UserEvent & ev = events_[next_event_++];
      const RouteDecision decision = route_user_event(ev, spec_);
      Record r = make(Module::HARNESS, "event");
      r.with("kind", to_string(ev.kind))
        .with("actor", ev.actor)
        .with("level", to_string(ev.level))
        .with("role", decision.role.empty() ? "none" : decision.role)
        .with("disposition", decision.allowed ? "routed" : "rejected");
      if (!decision.allowed) {
        r.with("reason", to_string(ErrorCode::PERMISSION_DENIED));
        emit(std::move(r));
        continue;
      }
      emit(std::move(r));
      apply_event(ev);
    }
  }

  void apply_event(const UserEvent & ev)
  {
    switch (ev.kind) {
      case UserEventKind::EMERGENCY_STOP:
        // Reaches the actuators only through the level chain: tactical
        // reports USER_EMERGENCY_STOP upward and strategy stops the run.
        emergency_flag_ = true;
        force_strategic_ = true;
        force_tactical_ = true;
        user_trigger_ = true;
        break;
      case UserEventKind::REQUEST_STOP:
        emit(make(Module::HARNESS, "ack").with("kind", "REQUEST_STOP").with("actor", ev.actor));
        break;
      case UserEventKind::SET_MISSION:
      case UserEventKind::CHANGE_DESTINATION:
        apply_mission_event(ev);
        break;
      case UserEventKind::EXTERNAL_MESSAGE: {
        ExternalMessage msg;
        msg.tick = now_;
        const auto origin = parse_as<Origin>(ev.actor);
        msg.origin = origin.value_or(Origin::ONBOARD);
        Feature f;
        const auto kind = parse_as<FeatureKind>(ev.payload_value("kind"));
        f.kind = kind.value_or(FeatureKind::EXTERNAL_INFO);
        f.subject = ev.payload_value("subject");
        f.code = ev.payload_value("code");
        f.text = ev.payload_value("text");
        if (const auto scalar = parse_double(ev.payload_value("scalar"))) {
          f.scalar = *scalar;
        }
        f.tick = now_;
        msg.payload.push_back(std::move(f));
        event_messages_.push_back(std::move(msg));
        break;
      }
    }
  }

  void apply_mission_event(const UserEvent & ev)
  {
    MissionObjective obj = mission_;
    obj.goal_node = ev.payload_value("goal_node");
    if (const auto manifest = ev.payload.find("manifest"); manifest != ev.payload.end()) {
      obj.manifest = split(manifest->second, ',');
    }
    if (const auto urgency = parse_as<Urgency>(ev.payload_value("urgency"))) {
      obj.urgency = *urgency;
    }
    const PassengerProfile * p = find_profile(spec_.profiles, ev.actor);
    if (p != nullptr) {
      obj.requester = Origin::ONBOARD;
    } else if (const auto origin = parse_as<Origin>(ev.actor)) {
      obj.requester = *origin;
    }
    if (const auto deadline = parse_int(ev.payload_value("deadline_s"))) {
      obj.deadline_s = *deadline;
    }

    const AcceptOutcome outcome = accept_mission(obj, spec_.profiles, spec_.odd, world_);
    emit(
      make(Module::ODD, "gate")
        .with("ok", outcome.accepted() ? "1" : "0")
        .with("violations", violations_csv(outcome.violations)));
    if (!outcome.accepted()) {
      // The current mission stands.
      emit(
        make(Module::STRATEGIC, "mission")
          .with("disposition", "rejected")
          .with("goal", obj.goal_node)
          .with("violations", violations_csv(outcome.violations)));
      return;
    }
    mission_ = obj;
    plan_ = *outcome.plan;
    world_.mission_goal = plan_.mission_goal;
    world_.departure_node = plan_.departure_node;
    world_.constraints = plan_.constraints;
    emit(
      make(Module::STRATEGIC, "mission")
        .with("disposition", "accepted")
        .with("goal", plan_.goal_node)
        .with("route", route_csv(plan_.route.nodes))
        .with("manifest", csv(mission_.manifest)));
    force_tactical_ = true;
    note_plan_outputs();
  }

  void stage_perception()
  {
    auto extracted = extract_features(frame_, runtime_sensors());
    if (!extracted.ok()) {
      fatal(extracted.error());
      return;
    }
    fs_ = std::move(extracted.value());

    auto ingest = [this](const ExternalMessage & msg) {
      auto r = ingest_external(msg, external_origins());
      Record rec = make(Module::PERCEPTION, "external");
      rec.with("origin", to_string(msg.origin));
      if (r.ok()) {
        rec.with("count", static_cast<Tick>(r.value().features.size()))
          .with("disposition", "ingested");
        for (auto & f : r.value().features) {
          fs_.features.push_back(std::move(f));
        }
      } else {
        rec.with("disposition", "rejected").with("reason", to_string(r.error().code));
      }
      emit(std::move(rec));
    };
    while (next_external_ < externals_.size() && externals_[next_external_].tick <= now_) {
      ingest(externals_[next_external_++]);
    }
    for (const auto & msg : event_messages_) {
      ingest(msg);
    }
    event_messages_.clear();
    for (const auto & msg : broadcasts_) {
      ingest(msg);
    }

    faults_ = monitor_.observe(reports_);
    emit_delta("faults", make(Module::PERCEPTION, "fault").with("set", fault_sig(faults_)));

    for (const auto & f : fs_.features) {
      if (f.kind == FeatureKind::TRAFFIC_OCCUPANCY) {
        traffic_[f.subject] = parse_intervals(f.text);
      }
      if (f.kind == FeatureKind::EXTERNAL_INFO && f.code == "BLOCKED_EDGE") {
        const auto parts = split(f.subject, ':');
        if (parts.size() == 2) {
          blocked_edges_.insert(make_edge_key(parts[0], parts[1]));
        }
      }
    }
  }

  void stage_representation()
  {
    auto next = update_situation_model(sit_, fs_, spec_.profiles);
    if (!next.ok()) {
      fatal(next.error());
      return;
    }
    sit_ = std::move(next.value());

    world_ = update_world_model(world_, sit_, spec_.profiles, now_);
    world_.blocked_edges = blocked_edges_;
    world_.eta_current_goal_s = directive_.eta_s;

    hazards_ = assess_hazards(sit_, faults_, spec_.profiles);

    for (const auto & a : sit_.actors) {
      auto it = logged_health_.find(a.id);
      if (it == logged_health_.end() || it->second != a.health) {
        logged_health_[a.id] = a.health;
        emit(
          make(Module::REPRESENTATION, "health")
            .with("subject", a.id)
            .with("state", to_string(a.health)));
      }
    }
    emit_delta(
      "hazards", make(Module::REPRESENTATION, "hazards").with("set", hazard_sig(hazards_)));
  }

  void stage_odd()
  {
    const bool boundary = now_ % kStrategicPeriodMs == 0;
    if (!boundary && !force_strategic_) {
      return;
    }
    std::set<std::string> flags;
    for (const auto & f : active_env_flags(active_)) {
      flags.insert(f);
    }
    const OddVerdict v = check_runtime(spec_.odd, world_, now_ / 1000, flags);
    synthetic_.clear();
    for (const auto & violation : v.violations) {
      Hazard h;
      h.severity = 2;
      if (violation.dimension == OddDimension::ENV) {
        h.kind = HazardKind::EXPOSURE_RISK;
        h.subject = violation.subject.empty() ? "environment" : violation.subject;
      } else {
        h.kind = HazardKind::STRANDING_RISK;
        h.subject = "trip";
      }
      synthetic_.push_back(std::move(h));
    }
    odd_violated_ = !v.ok;
    emit_delta(
      "odd_check", make(Module::ODD, "check")
                     .with("ok", v.ok ? "1" : "0")
                     .with("violations", violations_csv(v.violations)));
  }

  std::string plan_sig() const
  {
    return std::string(to_string(plan_.action)) + "|" + plan_.goal_node + "|" +
           route_csv(plan_.route.nodes);
  }

  void note_plan_outputs()
  {
    const std::string sig = plan_sig();
    if (delta_["plan"] == sig) {
      return;
    }
    delta_["plan"] = sig;
    force_tactical_ = true;
    const std::string detail =
      std::string(to_string(plan_.action)) + ":" + plan_.goal_node;
    info(EventLevel::STRATEGIC, Audience::ONBOARD, "plan", detail);
    for (const auto & p : manifest_profiles()) {
      if (p.guardian.has_value()) {
        info(EventLevel::STRATEGIC, Audience::REMOTE, "plan", detail);
        break;
      }
    }
  }

  void info(EventLevel level, Audience audience, const std::string & content,
            const std::string & detail)
  {
    out_.infos.push_back(InfoOutput{now_, level, audience, content, detail});
    emit(
      make(Module::HARNESS, "info")
        .with("level", to_string(level))
        .with("audience", to_string(audience))
        .with("content", content)
        .with("detail", detail));
  }

  void stage_strategic()
  {
    std::vector<std::string> triggers;
    if (now_ % kStrategicPeriodMs == 0) {
      triggers.emplace_back("period");
    }
    if (user_trigger_) {
      triggers.emplace_back("user_event");
    }
    if (odd_violated_) {
      triggers.emplace_back("odd_violation");
    }
    std::vector<Hazard> all = hazards_;
    all.insert(all.end(), synthetic_.begin(), synthetic_.end());
    if (hazard_sig(all) != hazard_sig(hazards_at_replan_)) {
      triggers.emplace_back("hazard");
    }
    if (tact_report_.status != perf_at_replan_) {
      triggers.emplace_back("performance");
    }
    if (triggers.empty()) {
      return;
    }

    plan_ = replan(plan_, world_, all, tact_report_);
    hazards_at_replan_ = all;
    perf_at_replan_ = tact_report_.status;
    user_trigger_ = false;
    odd_violated_ = false;
    force_strategic_ = false;

    emit(
      make(Module::STRATEGIC, "replan")
        .with("trigger", join(triggers, ','))
        .with("flow", "cmd")
        .with("dst", "tactical")
        .with("action", to_string(plan_.action))
        .with("goal", plan_.goal_node)
        .with("route", route_csv(plan_.route.nodes))
        .with("hazards", hazard_sig(all))
        .with("perf", to_string(tact_report_.status))
        .with("alert", plan_.alert ? to_string(plan_.alert->recipient) : "none"));

    if (plan_.alert.has_value()) {
      const AlertRequest & req = *plan_.alert;
      const std::string key = std::string(to_string(req.recipient)) + "|" +
                              to_string(req.hazard.kind) + "|" + req.hazard.subject;
      if (alert_keys_.insert(key).second) {
        const NodeId node = current_node();
        out_.alerts.push_back(alert_wire_line(now_, req, node));
        emit(
          make(Module::HARNESS, "alert")
            .with("recipient", to_string(req.recipient))
            .with("hazard_kind", to_string(req.hazard.kind))
            .with("subject", req.hazard.subject)
            .with("node", node));
      }
    }

    if (plan_.action == StrategyAction::STOP_IMMEDIATELY && phase_ != MissionPhase::DONE) {
      if (boarding_.active()) {
        boarding_ = BoardingState{};
      }
      stop_reason_ = emergency_flag_ ? "emergency_stop" : "strategy_stop";
      set_phase(MissionPhase::STOPPING);
      force_tactical_ = true;
    }
    note_plan_outputs();
  }

  void start_boarding(BoardingMode mode, const PassengerId & subject)
  {
    const PassengerProfile * p = find_profile(spec_.profiles, subject);
    const auto stop = stop_for(current_node());
    if (!stop.has_value()) {
      return;
    }
    boarding_ = BoardingState{};
    boarding_.mode = mode;
    boarding_.phase = BoardingPhase::ALIGN_TO_STOP;
    boarding_.phase_entered = now_;
    boarding_.subject = subject;
    boarding_.uses_platform = p != nullptr && p->needs_platform;
    boarding_.stop = stop;
    emit(
      make(Module::TACTICAL, "boarding")
        .with("mode", to_string(mode))
        .with("phase", to_string(boarding_.phase))
        .with("subject", subject));
  }

  void run_phase_machine()
  {
    // A timed-out transfer ends the mission wherever it happened.
    if (boarding_.phase == BoardingPhase::FAILED && phase_ != MissionPhase::STOPPING &&
        phase_ != MissionPhase::DONE) {
      set_phase(MissionPhase::STOPPING);
      stop_reason_ = "boarding_failed";
      return;
    }

    switch (phase_) {
      case MissionPhase::BOARDING: {
        if (boarding_.active()) {
          break;
        }
        const auto waiting = manifest_not_onboard();
        if (waiting.empty()) {
          boarding_ = BoardingState{};
          set_phase(MissionPhase::TRAVEL);
        } else {
          start_boarding(BoardingMode::BOARD, waiting.front());
        }
        break;
      }
      case MissionPhase::TRAVEL: {
        const Position & pos = sit_.self_representation.position;
        if (pos.at_node() && pos.at == plan_.goal_node && sit_.self_representation.speed_mps == 0.0) {
          set_phase(MissionPhase::DEBOARD);
          boarding_ = BoardingState{};
        }
        break;
      }
      case MissionPhase::DEBOARD: {
        // Rescue handover: an open door at a care facility closes the
        // mission for a passenger who cannot leave unaided.
        if (sit_.self_representation.door == DoorState::OPEN) {
          const RoadNode * node = spec_.map.find_node(current_node());
          bool medical = false;
          for (const auto & h : hazards_) {
            if (h.kind == HazardKind::MEDICAL_EMERGENCY && h.severity >= 2) {
              medical = true;
            }
          }
          if (node != nullptr && node->care_facility && medical) {
            emit(
              make(Module::HARNESS, "handover")
                .with("node", node->id)
                .with("subject", hazards_.front().subject));
            finish(judge(node->id), "care_handover");
            return;
          }
        }
        if (boarding_.active()) {
          break;
        }
        const auto onboard = manifest_onboard();
        if (onboard.empty()) {
          finish(judge(current_node()), "deboard_complete");
          return;
        }
        start_boarding(BoardingMode::DEBOARD, onboard.front());
        break;
      }
      case MissionPhase::STOPPING: {
        if (sit_.self_representation.speed_mps == 0.0) {
          finish(Verdict::STOPPED, stop_reason_);
        }
        break;
      }
      case MissionPhase::DONE:
        break;
    }
  }

  void stage_tactical()
  {
    if (now_ % kTacticalPeriodMs != 0 && !force_tactical_) {
      return;
    }
    force_tactical_ = false;
    tstatus_.no_suitable_stop = false;

    run_phase_machine();
    if (done_) {
      return;
    }

    const auto profiles = manifest_profiles();
    if (boarding_.active()) {
      if (boarding_.phase == BoardingPhase::DOOR_OPENING && !boarding_.door_schedule.has_value()) {
        const NodeId node = current_node();
        auto it = traffic_.find(node);
        const std::vector<std::pair<Tick, Tick>> empty;
        const auto & busy = it == traffic_.end() ? empty : it->second;
        const DoorDecision decision = schedule_door(sit_, busy, now_, spec_.door_unlock_lead_ms);
        if (decision.ok()) {
          boarding_.door_schedule = decision.schedule;
          tstatus_.door_deferred = false;
          emit_delta(
            "door", make(Module::TACTICAL, "door")
                      .with("node", node)
                      .with("disposition", "scheduled")
                      .with("unlock_at", decision.schedule->unlock_at)
                      .with("open_at", decision.schedule->open_at));
        } else {
          tstatus_.door_deferred = true;
          emit_delta(
            "door", make(Module::TACTICAL, "door")
                      .with("node", node)
                      .with("disposition", "deferred")
                      .with("reason", to_string(*decision.deferred)));
        }
      }

      auto [next, dir] = step_boarding(boarding_, sit_, sit_.self_representation, profiles, now_);
      if (next.phase != boarding_.phase) {
        emit(
          make(Module::TACTICAL, "boarding")
            .with("mode", to_string(next.mode))
            .with("phase", to_string(next.phase))
            .with("subject", next.subject));
      }
      boarding_ = next;
      directive_ = dir;
    } else {
      StrategyPlan effective = plan_;
      if (phase_ == MissionPhase::STOPPING) {
        effective.action = StrategyAction::STOP_IMMEDIATELY;
      }
      directive_ =
        plan_behavior(effective, sit_, boarding_, spec_.map, profiles, stop_for(plan_.goal_node));
    }

    tstatus_.guard_timeout = boarding_.phase == BoardingPhase::FAILED &&
                             boarding_.failure == ReasonCode::GUARD_TIMEOUT;
    tstatus_.operational_failed = op_report_.status == ReportStatus::FAILED;
    tstatus_.emergency_stop = emergency_flag_;
    tact_report_ = report_performance(tstatus_);

    Record dir = make(Module::TACTICAL, "directive");
    dir.with("flow", "cmd")
      .with("dst", "operational")
      .with("maneuver", to_string(directive_.maneuver))
      .with("speed", directive_.speed_limit_mps)
      .with("route", route_csv(directive_.route));
    if (directive_.door_schedule.has_value()) {
      dir.with("unlock_at", directive_.door_schedule->unlock_at)
        .with("open_at", directive_.door_schedule->open_at);
    }
    if (directive_.platform_cmd != PlatformCmd::NONE) {
      dir.with("platform", to_string(directive_.platform_cmd));
    }
    if (directive_.door_close) {
      dir.with("door", "CLOSE");
    }
    if (directive_.lock_engage) {
      dir.with("lock", "LOCK");
    }
    emit_delta("directive", std::move(dir));
    emit_delta(
      "tact_report", make(Module::TACTICAL, "report")
                       .with("flow", "rep")
                       .with("dst", "strategic")
                       .with("status", to_string(tact_report_.status))
                       .with("reasons", reasons_csv(tact_report_)));

    const std::string maneuver = to_string(directive_.maneuver);
    if (delta_["maneuver"] != maneuver) {
      delta_["maneuver"] = maneuver;
      info(EventLevel::TACTICAL, Audience::OTHER_ROAD_USERS, "maneuver", maneuver);
    }
  }

  void stage_operational()
  {
    std::vector<ActuatorCommand> proposed = execute(directive_, fs_, now_);
    std::vector<ActuatorCommand> guarded = reflex_check(proposed, fs_);
    if (guarded != proposed) {
      std::vector<std::string> overrides;
      for (std::size_t i = 0; i < proposed.size() && i < guarded.size(); ++i) {
        if (!(guarded[i] == proposed[i])) {
          overrides.push_back(
            std::string(to_string(proposed[i].subsystem)) + ":" + proposed[i].code + ">" +
            guarded[i].code);
        }
      }
      emit_delta("reflex", make(Module::OPERATIONAL, "reflex").with("overrides", csv(overrides)));
    } else {
      delta_.erase("reflex");
    }
    pending_ = guarded;

    Record cmd = make(Module::OPERATIONAL, "cmd");
    cmd.with("flow", "cmd").with("dst", "plant");
    for (const auto & c : pending_) {
      switch (c.subsystem) {
        case Subsystem::DRIVETRAIN:
          cmd.with("drive", c.scalar);
          break;
        case Subsystem::BRAKE:
          cmd.with("brake", c.scalar);
          break;
        case Subsystem::STEERING:
          cmd.with("steer", c.code);
          break;
        case Subsystem::DOOR:
          cmd.with("door", c.code);
          break;
        case Subsystem::LOCK:
          cmd.with("lock", c.code);
          break;
        case Subsystem::PLATFORM:
          cmd.with("platform", c.code);
          break;
      }
    }
    emit_delta("op_cmd", std::move(cmd));

    op_report_ = report_actuation(reports_, faults_);
    emit_delta(
      "op_report", make(Module::OPERATIONAL, "report")
                     .with("flow", "rep")
                     .with("dst", "tactical")
                     .with("status", to_string(op_report_.status))
                     .with("reasons", reasons_csv(op_report_)));
  }

  void loop()
  {
    events_ = spec_.events;
    std::stable_sort(events_.begin(), events_.end(), [](const UserEvent & a, const UserEvent & b) {
      return a.tick < b.tick;
    });
    externals_ = spec_.externals;
    std::stable_sort(
      externals_.begin(), externals_.end(),
      [](const ExternalMessage & a, const ExternalMessage & b) { return a.tick < b.tick; });

    // Ticks run strictly below the horizon; the horizon verdict is stamped
    // at end_tick_, so a zero horizon yields only the setup records.
    for (now_ = 0; now_ < end_tick_; now_ += kOperationalPeriodMs) {
      stage_plant();
      stage_events();
      if (!done_) {
        stage_perception();
      }
      if (!done_) {
        stage_representation();
      }
      if (!done_) {
        stage_odd();
        stage_strategic();
        stage_tactical();
      }
      if (!done_) {
        stage_operational();
      }
      flush();
      if (done_) {
        return;
      }
    }
    now_ = end_tick_;
    finish(Verdict::STOPPED, "horizon");
    flush();
  }

  // ---- members ----

  const ScenarioSpec & spec_;
  std::uint64_t seed_;
  Tick end_tick_;
  std::string scenario_path_;

  RunResult out_;
  Tick now_ = 0;
  bool done_ = false;
  Verdict verdict_ = Verdict::STOPPED;
  std::string stop_reason_ = "strategy_stop";

  PlantState plant_;
  std::vector<Disturbance> active_;
  SensorFrame frame_;
  std::vector<ActuatorReport> reports_;
  std::vector<ExternalMessage> broadcasts_;
  std::vector<ActuatorCommand> pending_;

  FaultMonitor monitor_;
  std::vector<SubsystemFault> faults_;
  FeatureSet fs_;
  SituationModel sit_;
  WorldModel world_;
  std::vector<Hazard> hazards_;
  std::vector<Hazard> synthetic_;
  bool odd_violated_ = false;

  MissionObjective mission_;
  StrategyPlan plan_;
  std::vector<Hazard> hazards_at_replan_;
  ReportStatus perf_at_replan_ = ReportStatus::NOMINAL;
  bool user_trigger_ = false;
  bool force_strategic_ = false;
  bool force_tactical_ = false;
  bool emergency_flag_ = false;

  MissionPhase phase_ = MissionPhase::BOARDING;
  BoardingState boarding_;
  TacticalDirective directive_;
  TacticalStatus tstatus_;
  PerformanceReport op_report_;
  PerformanceReport tact_report_;

  std::map<NodeId, std::vector<std::pair<Tick, Tick>>> traffic_;
  std::set<EdgeKey> blocked_edges_;
  std::set<std::string> alert_keys_;

  std::vector<UserEvent> events_;
  std::size_t next_event_ = 0;
  std::vector<ExternalMessage> externals_;
  std::size_t next_external_ = 0;
  std::vector<ExternalMessage> event_messages_;

  std::vector<Record> buffer_;
  std::map<std::string, std::string> delta_;
  std::map<PassengerId, Zone> logged_zone_;
  std::map<PassengerId, HealthState> logged_health_;
};

}  // namespace

int verdict_exit_code(Verdict v)
{
  switch (v) {
    case Verdict::COMPLETED:
      return 0;
    case Verdict::DIVERTED:
      return 10;
    case Verdict::RETURNED:
      return 11;
    case Verdict::STOPPED:
      return 12;
    case Verdict::REJECTED:
    default:
      return 13;
  }
}

RouteDecision route_user_event(const UserEvent & ev, const ScenarioSpec & spec)
{
  RouteDecision out;
  out.role = actor_role(spec, ev.actor);
  out.allowed = !out.role.empty() && spec.permissions.allowed(out.role, ev.level, ev.kind);
  return out;
}

std::string alert_wire_line(Tick tick, const AlertRequest & req, const NodeId & node)
{
  std::string line = "tick=" + std::to_string(tick);
  line += " recipient=";
  line += to_string(req.recipient);
  line += " hazard_kind=";
  line += to_string(req.hazard.kind);
  line += " subject=";
  line += req.hazard.subject;
  line += " node=";
  line += node;
  return line;
}

RunResult run(const ScenarioSpec & spec, const RunOverrides & overrides)
{
  const std::uint64_t seed = overrides.seed.value_or(spec.seed);
  double until_s = spec.horizon_s;
  if (overrides.until_s.has_value()) {
    until_s = std::min(until_s, *overrides.until_s);
  }
  Tick end_tick = static_cast<Tick>(until_s * 1000.0);
  end_tick -= end_tick % kOperationalPeriodMs;
  Runner runner(spec, seed, end_tick, overrides.scenario_path);
  return runner.take();
}

Result<ReplayReport> replay_log_text(const std::string & log_text)
{
  auto parsed = EventLog::from_text(log_text);
  if (!parsed.ok()) {
    return parsed.error();
  }
  const EventLog & recorded = parsed.value();

  const std::string path = recorded.header_value("scenario");
  if (path.empty()) {
    return Error{ErrorCode::LOG_FORMAT_ERROR, "log header lacks a scenario path"};
  }
  auto spec = load_scenario(path);
  if (!spec.ok()) {
    return spec.error();
  }

  RunOverrides overrides;
  overrides.scenario_path = path;
  const std::string seed = recorded.header_value("seed");
  if (!seed.empty()) {
    overrides.seed = std::strtoull(seed.c_str(), nullptr, 10);
  }
  const std::string until = recorded.header_value("until_s");
  if (const auto until_v = parse_int(until)) {
    overrides.until_s = static_cast<double>(*until_v);
  }

  const RunResult rerun = run(spec.value(), overrides);

  ReplayReport report;
  const std::size_t n = std::min(recorded.records.size(), rerun.log.records.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (!(recorded.records[i] == rerun.log.records[i])) {
      report.match = false;
      report.compared = i;
      report.tick = recorded.records[i].tick;
      report.module = to_string(recorded.records[i].module);
      report.expected = to_line(recorded.records[i]);
      report.actual = to_line(rerun.log.records[i]);
      return report;
    }
  }
  if (recorded.records.size() != rerun.log.records.size()) {
    report.match = false;
    report.compared = n;
    const bool recorded_longer = recorded.records.size() > n;
    const Record & extra =
      recorded_longer ? recorded.records[n] : rerun.log.records[n];
    report.tick = extra.tick;
    report.module = to_string(extra.module);
    report.expected = recorded_longer ? to_line(extra) : "<end of log>";
    report.actual = recorded_longer ? "<end of log>" : to_line(extra);
    return report;
  }
  report.match = true;
  report.compared = n;
  return report;
}

Result<ReplayReport> replay_file(const std::string & path)
{
  std::ifstream in(path);
  if (!in) {
    return Error{ErrorCode::VALIDATION_ERROR, "cannot open log: " + path};
  }
  std::ostringstream text;
  text << in.rdbuf();
  return replay_log_text(text.str());
}

}  // namespace chaperone
