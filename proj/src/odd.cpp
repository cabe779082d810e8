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

#include "chaperone/odd.hpp"

#include <algorithm>

namespace chaperone
{

namespace
{

void add(OddVerdict & v, OddDimension dim, std::string subject)
{
  v.ok = false;
  v.violations.push_back({dim, std::move(subject)});
}

}  // namespace

bool solo_mission(const MissionObjective & obj, const std::vector<PassengerProfile> & profiles)
{
  for (const auto & id : obj.manifest) {
    const PassengerProfile * p = find_profile(profiles, id);
    if (p != nullptr && p->adult()) {
      return false;
    }
  }
  return true;
}

OddVerdict check_mission(
  const OddSpec & spec, const MissionObjective & obj,
  const std::vector<PassengerProfile> & profiles, const Route & route)
{
  OddVerdict v;
  const bool solo = solo_mission(obj, profiles);

  if (solo) {
    for (const auto & id : obj.manifest) {
      const PassengerProfile * p = find_profile(profiles, id);
      if (p != nullptr && p->age < spec.min_solo_age) {
        add(v, OddDimension::MIN_AGE, id);
      }
    }
    // Capabilities must be covered collectively by the manifest.
    std::set<Capability> present;
    for (const auto & id : obj.manifest) {
      if (const PassengerProfile * p = find_profile(profiles, id)) {
        present.insert(p->capabilities.begin(), p->capabilities.end());
      }
    }
    for (const auto c : spec.required_capabilities_solo) {
      if (present.count(c) == 0) {
        add(v, OddDimension::CAPABILITY, to_string(c));
      }
    }
  }

  for (const auto & node : route.nodes) {
    switch (spec.allowed_nodes_mode) {
      case AllowedNodesMode::ALL:
        break;
      case AllowedNodesMode::KNOWN_TO_ALL_PASSENGERS:
        for (const auto & id : obj.manifest) {
          const PassengerProfile * p = find_profile(profiles, id);
          if (p != nullptr && p->known_nodes.count(node) == 0) {
            add(v, OddDimension::UNKNOWN_AREA, node);
            break;
          }
        }
        break;
      case AllowedNodesMode::EXPLICIT_LIST:
        if (spec.allowed_nodes.count(node) == 0) {
          add(v, OddDimension::UNKNOWN_AREA, node);
        }
        break;
    }
    if (spec.excluded_nodes.count(node) != 0) {
      add(v, OddDimension::EXCLUDED_NODE, node);
    }
  }

  if (route.travel_s > static_cast<double>(spec.max_trip_duration_s)) {
    add(v, OddDimension::DURATION, "trip");
  }
  if (route.length_m > static_cast<double>(spec.max_trip_distance_m)) {
    add(v, OddDimension::DISTANCE, "trip");
  }
  return v;
}

OddVerdict check_runtime(
  const OddSpec & spec, const WorldModel & w, std::int64_t elapsed_s,
  const std::set<std::string> & env_flags)
{
  OddVerdict v;
  if (elapsed_s > spec.max_trip_duration_s) {
    add(v, OddDimension::DURATION, "trip");
  }
  if (w.odometer_mm / 1000 > spec.max_trip_distance_m) {
    add(v, OddDimension::DISTANCE, "trip");
  }
  for (const auto & flag : env_flags) {
    if (spec.env_conditions.count(flag) == 0) {
      add(v, OddDimension::ENV, flag);
    }
  }
  if (spec.assistant_max_distance_m) {
    if (!w.nearest_assistant_m || *w.nearest_assistant_m > *spec.assistant_max_distance_m) {
      add(v, OddDimension::ASSISTANT, "assistant");
    }
  }
  return v;
}

}  // namespace chaperone
