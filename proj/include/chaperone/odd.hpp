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

#ifndef CHAPERONE__ODD_HPP_
#define CHAPERONE__ODD_HPP_

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "chaperone/common.hpp"
#include "chaperone/map.hpp"
#include "chaperone/mission.hpp"
#include "chaperone/profile.hpp"
#include "chaperone/representation.hpp"

namespace chaperone
{

enum class OddDimension {
  MIN_AGE,
  CAPABILITY,
  UNKNOWN_AREA,
  EXCLUDED_NODE,
  DURATION,
  DISTANCE,
  ENV,
  ASSISTANT,
};

inline constexpr std::pair<OddDimension, const char *> kOddDimensionNames[] = {
  {OddDimension::MIN_AGE, "MIN_AGE"},
  {OddDimension::CAPABILITY, "CAPABILITY"},
  {OddDimension::UNKNOWN_AREA, "UNKNOWN_AREA"},
  {OddDimension::EXCLUDED_NODE, "EXCLUDED_NODE"},
  {OddDimension::DURATION, "DURATION"},
  {OddDimension::DISTANCE, "DISTANCE"},
  {OddDimension::ENV, "ENV"},
  {OddDimension::ASSISTANT, "ASSISTANT"},
};
CHAPERONE_ENUM_IO(OddDimension, kOddDimensionNames)

enum class AllowedNodesMode { ALL, KNOWN_TO_ALL_PASSENGERS, EXPLICIT_LIST };

inline constexpr std::pair<AllowedNodesMode, const char *> kAllowedNodesModeNames[] = {
  {AllowedNodesMode::ALL, "ALL"},
  {AllowedNodesMode::KNOWN_TO_ALL_PASSENGERS, "KNOWN_TO_ALL_PASSENGERS"},
  {AllowedNodesMode::EXPLICIT_LIST, "EXPLICIT_LIST"},
};
CHAPERONE_ENUM_IO(AllowedNodesMode, kAllowedNodesModeNames)

struct OddSpec
{
  int min_solo_age = 0;
  std::set<Capability> required_capabilities_solo;
  AllowedNodesMode allowed_nodes_mode = AllowedNodesMode::ALL;
  std::set<NodeId> allowed_nodes;
  std::set<NodeId> excluded_nodes;
  std::int64_t max_trip_duration_s = 3600;
  std::int64_t max_trip_distance_m = 100000;
  std::set<std::string> env_conditions = {"CLEAR"};
  std::optional<double> assistant_max_distance_m;

  bool operator==(const OddSpec &) const = default;
};

struct OddViolation
{
  OddDimension dimension = OddDimension::MIN_AGE;
  std::string subject;

  bool operator==(const OddViolation &) const = default;
};

struct OddVerdict
{
  bool ok = true;
  std::vector<OddViolation> violations;

  bool operator==(const OddVerdict &) const = default;
};

/// Mission-time gate over the age, capability, area, and planned
/// duration/distance dimensions.
OddVerdict check_mission(
  const OddSpec & spec, const MissionObjective & obj,
  const std::vector<PassengerProfile> & profiles, const Route & route);

/// Runtime re-check of the duration, distance, environment, and
/// assistant dimensions; any violation must trigger a strategic replan.
OddVerdict check_runtime(
  const OddSpec & spec, const WorldModel & w, std::int64_t elapsed_s,
  const std::set<std::string> & env_flags);

/// True when no manifest passenger is an adult.
bool solo_mission(
  const MissionObjective & obj, const std::vector<PassengerProfile> & profiles);

}  // namespace chaperone

#endif  // CHAPERONE__ODD_HPP_
