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

#ifndef CHAPERONE__PERCEPTION_HPP_
#define CHAPERONE__PERCEPTION_HPP_

#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "chaperone/actuation.hpp"
#include "chaperone/common.hpp"
#include "chaperone/feature.hpp"
#include "chaperone/vehicle.hpp"

namespace chaperone
{

struct SensorReading
{
  SensorId sensor_id;
  FeatureKind channel = FeatureKind::EXTERNAL_INFO;
  std::string subject;
  double scalar = 0.0;
  std::string code;
  std::string text;

  bool operator==(const SensorReading &) const = default;
};

struct SensorFrame
{
  Tick tick = 0;
  std::vector<SensorReading> readings;

  bool operator==(const SensorFrame &) const = default;
};

struct ExternalMessage
{
  Tick tick = 0;
  Origin origin = Origin::CONTROL_ROOM;
  std::vector<Feature> payload;

  bool operator==(const ExternalMessage &) const = default;
};

/// One feature per reading, plus multi-use expansion: a cabin or ambient
/// temperature reading also yields a body-temperature context feature for
/// every passenger currently in the matching zone (zones are taken from
/// POSTURE readings of the same frame).
Result<FeatureSet> extract_features(
  const SensorFrame & frame, const std::set<SensorId> & declared_sensors);

/// Features from an external channel, tagged with their origin.
Result<FeatureSet> ingest_external(
  const ExternalMessage & msg, const std::set<Origin> & authorized_origins);

inline constexpr int kFaultWindowTicks = 3;

/// Divergence detector over commanded-vs-achieved report streams for the
/// discrete subsystems (DOOR, LOCK, PLATFORM). A fault is declared after
/// kFaultWindowTicks consecutive ticks in which the achieved state is
/// neither the commanded target nor a transit state toward it.
class FaultMonitor
{
public:
  /// Feed all reports of one operational tick; returns current faults.
  std::vector<SubsystemFault> observe(const std::vector<ActuatorReport> & reports);

  std::vector<SubsystemFault> faults() const;

  /// True when `achieved` satisfies a report commanding `commanded`.
  static bool consistent(Subsystem subsystem, const std::string & commanded,
                         const std::string & achieved);

private:
  std::map<Subsystem, int> divergent_run_;
};

/// Stateless window check used by tests and by FaultMonitor internally:
/// faults over exactly the given per-tick report history.
std::vector<SubsystemFault> detect_subsystem_faults(
  const std::vector<std::vector<ActuatorReport>> & report_history);

}  // namespace chaperone

#endif  // CHAPERONE__PERCEPTION_HPP_
