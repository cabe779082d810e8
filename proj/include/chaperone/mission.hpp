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

#ifndef CHAPERONE__MISSION_HPP_
#define CHAPERONE__MISSION_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chaperone/common.hpp"
#include "chaperone/feature.hpp"

namespace chaperone
{

enum class Urgency { LEISURE, NORMAL, URGENT };

inline constexpr std::pair<Urgency, const char *> kUrgencyNames[] = {
  {Urgency::LEISURE, "LEISURE"},
  {Urgency::NORMAL, "NORMAL"},
  {Urgency::URGENT, "URGENT"},
};
CHAPERONE_ENUM_IO(Urgency, kUrgencyNames)

struct MissionObjective
{
  NodeId goal_node;
  std::vector<PassengerId> manifest;
  Urgency urgency = Urgency::NORMAL;
  Origin requester = Origin::ONBOARD;
  std::optional<std::int64_t> deadline_s;

  bool operator==(const MissionObjective &) const = default;
};

}  // namespace chaperone

#endif  // CHAPERONE__MISSION_HPP_
