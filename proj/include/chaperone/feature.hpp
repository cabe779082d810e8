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

#ifndef CHAPERONE__FEATURE_HPP_
#define CHAPERONE__FEATURE_HPP_

#include <string>
#include <utility>
#include <vector>

#include "chaperone/common.hpp"

namespace chaperone
{

enum class FeatureKind {
  SPEECH,
  IDENTITY,
  GESTURE,
  POSTURE,
  FALLEN,
  BODY_TEMP,
  HEART_RATE,
  BREATH_RATE,
  CABIN_TEMP,
  AMBIENT_TEMP,
  DOOR_POSITION,
  LOCK_STATE,
  PLATFORM_POSITION,
  VEHICLE_POSE,
  TRAFFIC_OCCUPANCY,
  SUBSYSTEM_HEALTH,
  EXTERNAL_INFO,
};

inline constexpr std::pair<FeatureKind, const char *> kFeatureKindNames[] = {
  {FeatureKind::SPEECH, "SPEECH"},
  {FeatureKind::IDENTITY, "IDENTITY"},
  {FeatureKind::GESTURE, "GESTURE"},
  {FeatureKind::POSTURE, "POSTURE"},
  {FeatureKind::FALLEN, "FALLEN"},
  {FeatureKind::BODY_TEMP, "BODY_TEMP"},
  {FeatureKind::HEART_RATE, "HEART_RATE"},
  {FeatureKind::BREATH_RATE, "BREATH_RATE"},
  {FeatureKind::CABIN_TEMP, "CABIN_TEMP"},
  {FeatureKind::AMBIENT_TEMP, "AMBIENT_TEMP"},
  {FeatureKind::DOOR_POSITION, "DOOR_POSITION"},
  {FeatureKind::LOCK_STATE, "LOCK_STATE"},
  {FeatureKind::PLATFORM_POSITION, "PLATFORM_POSITION"},
  {FeatureKind::VEHICLE_POSE, "VEHICLE_POSE"},
  {FeatureKind::TRAFFIC_OCCUPANCY, "TRAFFIC_OCCUPANCY"},
  {FeatureKind::SUBSYSTEM_HEALTH, "SUBSYSTEM_HEALTH"},
  {FeatureKind::EXTERNAL_INFO, "EXTERNAL_INFO"},
};
CHAPERONE_ENUM_IO(FeatureKind, kFeatureKindNames)

/// Message and request origins. ONBOARD covers in-vehicle requesters;
/// external channels are restricted to the remaining values.
enum class Origin {
  ONBOARD,
  CONTROL_ROOM,
  GUARDIAN_REMOTE,
  INFRASTRUCTURE,
  OTHER_VEHICLE,
};

inline constexpr std::pair<Origin, const char *> kOriginNames[] = {
  {Origin::ONBOARD, "ONBOARD"},
  {Origin::CONTROL_ROOM, "CONTROL_ROOM"},
  {Origin::GUARDIAN_REMOTE, "GUARDIAN_REMOTE"},
  {Origin::INFRASTRUCTURE, "INFRASTRUCTURE"},
  {Origin::OTHER_VEHICLE, "OTHER_VEHICLE"},
};
CHAPERONE_ENUM_IO(Origin, kOriginNames)

/// Atomic perceived or externally supplied fact. The payload is a scalar
/// plus optional code/text channels; which channels are meaningful is
/// fixed per kind (see docs/scenario_format.md).
struct Feature
{
  FeatureKind kind = FeatureKind::EXTERNAL_INFO;
  std::string subject;
  double scalar = 0.0;
  std::string code;
  std::string text;
  std::string source;
  Tick tick = 0;

  bool operator==(const Feature &) const = default;
};

struct FeatureSet
{
  Tick tick = 0;
  std::vector<Feature> features;

  bool operator==(const FeatureSet &) const = default;
};

}  // namespace chaperone

#endif  // CHAPERONE__FEATURE_HPP_
