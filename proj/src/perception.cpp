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

#include "chaperone/perception.hpp"

#include <algorithm>

namespace chaperone
{

namespace
{

bool cabin_zone_code(const std::string & code)
{
  return code == "CABIN_SEATED" || code == "CABIN_UNSECURED";
}

bool outside_zone_code(const std::string & code)
{
  return code == "OUTSIDE_NEAR" || code == "DOORWAY" || code == "ON_PLATFORM";
}

}  // namespace

Result<FeatureSet> extract_features(
  const SensorFrame & frame, const std::set<SensorId> & declared_sensors)
{
  FeatureSet fs;
  fs.tick = frame.tick;
  for (const auto & r : frame.readings) {
    if (declared_sensors.count(r.sensor_id) == 0) {
      return fail<FeatureSet>(ErrorCode::UNKNOWN_SENSOR, "sensor " + r.sensor_id + " undeclared");
    }
    Feature f;
    f.kind = r.channel;
    f.subject = r.subject;
    f.scalar = r.scalar;
    f.code = r.code;
    f.text = r.text;
    f.source = r.sensor_id;
    f.tick = frame.tick;
    fs.features.push_back(std::move(f));

    // A temperature reading is multi-use: it also contextualizes every
    // passenger sharing the sensed zone.
    if (r.channel == FeatureKind::CABIN_TEMP || r.channel == FeatureKind::AMBIENT_TEMP) {
      const bool cabin = r.channel == FeatureKind::CABIN_TEMP;
      for (const auto & posture : frame.readings) {
        if (posture.channel != FeatureKind::POSTURE) {
          continue;
        }
        const bool matches =
          cabin ? cabin_zone_code(posture.code) : outside_zone_code(posture.code);
        if (!matches) {
          continue;
        }
        Feature ctx;
        ctx.kind = FeatureKind::BODY_TEMP;
        ctx.subject = posture.subject;
        ctx.scalar = r.scalar;
        ctx.code = "ambient_context";
        ctx.source = r.sensor_id;
        ctx.tick = frame.tick;
        fs.features.push_back(std::move(ctx));
      }
    }
  }
  return fs;
}

Result<FeatureSet> ingest_external(
  const ExternalMessage & msg, const std::set<Origin> & authorized_origins)
{
  if (authorized_origins.count(msg.origin) == 0) {
    return fail<FeatureSet>(
      ErrorCode::UNAUTHORIZED_ORIGIN, std::string("origin ") + to_string(msg.origin) +
        " not authorized in this scenario");
  }
  FeatureSet fs;
  fs.tick = msg.tick;
  for (Feature f : msg.payload) {
    f.source = to_string(msg.origin);
    f.tick = msg.tick;
    fs.features.push_back(std::move(f));
  }
  return fs;
}

bool FaultMonitor::consistent(
  Subsystem subsystem, const std::string & commanded, const std::string & achieved)
{
  if (commanded == "HOLD" || commanded.empty()) {
    return true;
  }
  switch (subsystem) {
    case Subsystem::DOOR:
      if (commanded == "OPEN") {
        return achieved == "OPEN" || achieved == "OPENING";
      }
      if (commanded == "CLOSE") {
        return achieved == "CLOSED" || achieved == "CLOSING";
      }
      return true;
    case Subsystem::LOCK:
      if (commanded == "LOCK") {
        return achieved == "LOCKED";
      }
      if (commanded == "UNLOCK") {
        return achieved == "UNLOCKED";
      }
      return true;
    case Subsystem::PLATFORM:
      // LIFT runs the platform toward the opposite endpoint, so both
      // motion directions are consistent with it.
      if (commanded == "DEPLOY") {
        return achieved == "DEPLOYING" || achieved == "DEPLOYED";
      }
      if (commanded == "LIFT") {
        return achieved == "LIFTING" || achieved == "LIFTED" || achieved == "DEPLOYING" ||
               achieved == "DEPLOYED";
      }
      if (commanded == "STOW") {
        return achieved == "STOWING" || achieved == "STOWED";
      }
      return true;
    default:
      return true;
  }
}

std::vector<SubsystemFault> FaultMonitor::observe(const std::vector<ActuatorReport> & reports)
{
  const Subsystem discrete[] = {Subsystem::DOOR, Subsystem::LOCK, Subsystem::PLATFORM};
  for (const Subsystem s : discrete) {
    const ActuatorReport * found = nullptr;
    for (const auto & r : reports) {
      if (r.subsystem == s) {
        found = &r;
      }
    }
    if (found == nullptr) {
      divergent_run_[s] = 0;
      continue;
    }
    if (consistent(s, found->commanded, found->achieved)) {
      divergent_run_[s] = 0;
    } else {
      divergent_run_[s] += 1;
    }
  }
  return faults();
}

std::vector<SubsystemFault> FaultMonitor::faults() const
{
  std::vector<SubsystemFault> out;
  for (const auto & [subsystem, run] : divergent_run_) {
    if (run >= kFaultWindowTicks) {
      out.push_back({subsystem, FaultMode::STUCK});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SubsystemFault> detect_subsystem_faults(
  const std::vector<std::vector<ActuatorReport>> & report_history)
{
  FaultMonitor monitor;
  std::vector<SubsystemFault> last;
  for (const auto & tick_reports : report_history) {
    last = monitor.observe(tick_reports);
  }
  return last;
}

}  // namespace chaperone
