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

#include "chaperone/vehicle.hpp"

namespace chaperone
{

std::string to_string(const Position & p)
{
  if (p.at_node()) {
    return "node:" + p.at;
  }
  return "edge:" + p.at + ":" + p.toward + ":" + format_fixed(p.progress_m);
}

std::optional<Position> parse_position(std::string_view text)
{
  const auto parts = split(text, ':');
  if (parts.size() == 2 && parts[0] == "node" && !parts[1].empty()) {
    return Position{parts[1], "", 0.0};
  }
  if (parts.size() == 4 && parts[0] == "edge" && !parts[1].empty() && !parts[2].empty()) {
    const auto progress = parse_double(parts[3]);
    if (!progress) {
      return std::nullopt;
    }
    return Position{parts[1], parts[2], *progress};
  }
  return std::nullopt;
}

}  // namespace chaperone
