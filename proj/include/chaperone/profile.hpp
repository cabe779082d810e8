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

#ifndef CHAPERONE__PROFILE_HPP_
#define CHAPERONE__PROFILE_HPP_

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "chaperone/common.hpp"
#include "chaperone/feature.hpp"

namespace chaperone
{

enum class Capability {
  CAN_CLIMB_STEP,
  CAN_OPERATE_MANUAL_RELEASE,
  CAN_OPERATE_HMI,
};

inline constexpr std::pair<Capability, const char *> kCapabilityNames[] = {
  {Capability::CAN_CLIMB_STEP, "CAN_CLIMB_STEP"},
  {Capability::CAN_OPERATE_MANUAL_RELEASE, "CAN_OPERATE_MANUAL_RELEASE"},
  {Capability::CAN_OPERATE_HMI, "CAN_OPERATE_HMI"},
};
CHAPERONE_ENUM_IO(Capability, kCapabilityNames)

inline constexpr int kAdultAgeYears = 18;

struct PassengerProfile
{
  PassengerId id;
  int age = 0;
  std::set<Capability> capabilities;
  bool needs_platform = false;
  std::set<NodeId> known_nodes;
  std::int64_t max_ride_duration_s = 3600;
  std::optional<Origin> guardian;

  bool has(Capability c) const { return capabilities.count(c) != 0; }
  bool adult() const { return age >= kAdultAgeYears; }
  bool operator==(const PassengerProfile &) const = default;
};

const PassengerProfile * find_profile(
  const std::vector<PassengerProfile> & profiles, const PassengerId & id);

/// Profile self-consistency: needing the platform excludes step climbing;
/// known nodes must exist on the map (checked at scenario load).
std::optional<std::string> validate_profile(const PassengerProfile & p);

}  // namespace chaperone

#endif  // CHAPERONE__PROFILE_HPP_
