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

#ifndef CHAPERONE__OPERATIONAL_HPP_
#define CHAPERONE__OPERATIONAL_HPP_

#include <vector>

#include "chaperone/actuation.hpp"
#include "chaperone/common.hpp"
#include "chaperone/feature.hpp"
#include "chaperone/tactical.hpp"
#include "chaperone/vehicle.hpp"

namespace chaperone
{

inline constexpr double kMaxAccelMps2 = 2.0;
inline constexpr double kMaxBrakeMps2 = 2.5;
inline constexpr double kSpeedGain = 1.0;

/// Per-tick command synthesis. Speed tracking is proportional in the
/// directive speed limit; door, lock, and platform setpoints follow the
/// schedule fields once `tick` reaches them. Emits at most one command
/// per subsystem and always covers DRIVETRAIN and BRAKE.
std::vector<ActuatorCommand> execute(
  const TacticalDirective & directive, const FeatureSet & fs, Tick tick);

/// Same-tick safety overrides. A DOORWAY posture forces DOOR CLOSE to
/// HOLD; a platform obstruction forces any PLATFORM motion to HOLD.
/// Everything else passes through untouched.
std::vector<ActuatorCommand> reflex_check(
  const std::vector<ActuatorCommand> & proposed, const FeatureSet & fs);

/// Upward report: FAILED with ACTUATOR_FAULT per confirmed fault,
/// NOMINAL otherwise. Raw one-tick mismatches do not surface here;
/// debouncing lives in the fault monitor.
PerformanceReport report_actuation(
  const std::vector<ActuatorReport> & reports, const std::vector<SubsystemFault> & faults);

}  // namespace chaperone

#endif  // CHAPERONE__OPERATIONAL_HPP_
