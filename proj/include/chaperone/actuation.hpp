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

#ifndef CHAPERONE__ACTUATION_HPP_
#define CHAPERONE__ACTUATION_HPP_

#include <string>
#include <utility>
#include <vector>

#include "chaperone/common.hpp"
#include "chaperone/vehicle.hpp"

namespace chaperone
{

/// One setpoint for one subsystem. DRIVETRAIN/BRAKE carry a scalar
/// (m/s^2 demand); DOOR/LOCK/PLATFORM/STEERING carry an enum or id code.
struct ActuatorCommand
{
  Subsystem subsystem = Subsystem::DRIVETRAIN;
  double scalar = 0.0;
  std::string code;

  bool operator==(const ActuatorCommand &) const = default;
};

/// Echo of a command with the state the plant actually reached this tick.
struct ActuatorReport
{
  Subsystem subsystem = Subsystem::DRIVETRAIN;
  std::string commanded;
  std::string achieved;
  Tick tick = 0;

  bool operator==(const ActuatorReport &) const = default;
};

enum class ReportLevel { TACTICAL, OPERATIONAL };
enum class ReportStatus { NOMINAL, DEGRADED, FAILED };

enum class ReasonCode {
  DOOR_BLOCKED_BY_TRAFFIC,
  NO_SUITABLE_STOP,
  ACTUATOR_FAULT,
  GUARD_TIMEOUT,
  USER_EMERGENCY_STOP,
};

inline constexpr std::pair<ReportLevel, const char *> kReportLevelNames[] = {
  {ReportLevel::TACTICAL, "TACTICAL"},
  {ReportLevel::OPERATIONAL, "OPERATIONAL"},
};
CHAPERONE_ENUM_IO(ReportLevel, kReportLevelNames)

inline constexpr std::pair<ReportStatus, const char *> kReportStatusNames[] = {
  {ReportStatus::NOMINAL, "NOMINAL"},
  {ReportStatus::DEGRADED, "DEGRADED"},
  {ReportStatus::FAILED, "FAILED"},
};
CHAPERONE_ENUM_IO(ReportStatus, kReportStatusNames)

inline constexpr std::pair<ReasonCode, const char *> kReasonCodeNames[] = {
  {ReasonCode::DOOR_BLOCKED_BY_TRAFFIC, "DOOR_BLOCKED_BY_TRAFFIC"},
  {ReasonCode::NO_SUITABLE_STOP, "NO_SUITABLE_STOP"},
  {ReasonCode::ACTUATOR_FAULT, "ACTUATOR_FAULT"},
  {ReasonCode::GUARD_TIMEOUT, "GUARD_TIMEOUT"},
  {ReasonCode::USER_EMERGENCY_STOP, "USER_EMERGENCY_STOP"},
};
CHAPERONE_ENUM_IO(ReasonCode, kReasonCodeNames)

/// Upward status message from an execution level to the level above.
struct PerformanceReport
{
  ReportLevel level = ReportLevel::OPERATIONAL;
  ReportStatus status = ReportStatus::NOMINAL;
  std::vector<ReasonCode> reasons;

  bool nominal() const { return status == ReportStatus::NOMINAL; }
  bool has(ReasonCode r) const
  {
    for (const auto c : reasons) {
      if (c == r) {
        return true;
      }
    }
    return false;
  }
  bool operator==(const PerformanceReport &) const = default;
};

/// Reports NOMINAL iff reasons empty; otherwise worst wins.
PerformanceReport merge_reports(ReportLevel level, const std::vector<PerformanceReport> & parts);

}  // namespace chaperone

#endif  // CHAPERONE__ACTUATION_HPP_
