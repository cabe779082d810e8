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

#include "chaperone/actuation.hpp"

#include <algorithm>

namespace chaperone
{

PerformanceReport merge_reports(ReportLevel level, const std::vector<PerformanceReport> & parts)
{
  PerformanceReport merged;
  merged.level = level;
  for (const auto & part : parts) {
    for (const auto r : part.reasons) {
      if (!merged.has(r)) {
        merged.reasons.push_back(r);
      }
    }
    if (part.status == ReportStatus::FAILED) {
      merged.status = ReportStatus::FAILED;
    } else if (part.status == ReportStatus::DEGRADED && merged.status == ReportStatus::NOMINAL) {
      merged.status = ReportStatus::DEGRADED;
    }
  }
  if (merged.reasons.empty()) {
    merged.status = ReportStatus::NOMINAL;
  } else if (merged.status == ReportStatus::NOMINAL) {
    merged.status = ReportStatus::DEGRADED;
  }
  std::sort(merged.reasons.begin(), merged.reasons.end());
  return merged;
}

}  // namespace chaperone
