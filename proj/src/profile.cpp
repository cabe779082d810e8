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

#include "chaperone/profile.hpp"

namespace chaperone
{

const PassengerProfile * find_profile(
  const std::vector<PassengerProfile> & profiles, const PassengerId & id)
{
  for (const auto & p : profiles) {
    if (p.id == id) {
      return &p;
    }
  }
  return nullptr;
}

std::optional<std::string> validate_profile(const PassengerProfile & p)
{
  if (p.id.empty()) {
    return "profile without id";
  }
  if (p.age < 0 || p.age > 130) {
    return "profile " + p.id + ": implausible age";
  }
  if (p.needs_platform && p.has(Capability::CAN_CLIMB_STEP)) {
    return "profile " + p.id + ": needs_platform excludes CAN_CLIMB_STEP";
  }
  if (p.max_ride_duration_s <= 0) {
    return "profile " + p.id + ": max_ride_duration_s must be positive";
  }
  return std::nullopt;
}

}  // namespace chaperone
