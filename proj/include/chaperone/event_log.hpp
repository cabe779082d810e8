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

#ifndef CHAPERONE__EVENT_LOG_HPP_
#define CHAPERONE__EVENT_LOG_HPP_

#include <string>
#include <utility>
#include <vector>

#include "chaperone/common.hpp"

namespace chaperone
{

/// Fixed module priority: at equal ticks, records appear in this order.
enum class Module { PLANT, PERCEPTION, REPRESENTATION, OPERATIONAL, TACTICAL, STRATEGIC, ODD, HARNESS };

inline constexpr std::pair<Module, const char *> kModuleNames[] = {
  {Module::PLANT, "plant"},
  {Module::PERCEPTION, "perception"},
  {Module::REPRESENTATION, "representation"},
  {Module::OPERATIONAL, "operational"},
  {Module::TACTICAL, "tactical"},
  {Module::STRATEGIC, "strategic"},
  {Module::ODD, "odd"},
  {Module::HARNESS, "harness"},
};
CHAPERONE_ENUM_IO(Module, kModuleNames)

/// One log line: `t=<ms> m=<module> type=<type> key=value ...`.
/// Values never contain whitespace (sanitized on insertion).
struct Record
{
  Tick tick = 0;
  Module module = Module::HARNESS;
  std::string type;
  std::vector<std::pair<std::string, std::string>> payload;

  Record & with(const std::string & key, const std::string & value);
  Record & with(const std::string & key, Tick value);
  Record & with(const std::string & key, double value);
  std::string find(const std::string & key) const;

  bool operator==(const Record &) const = default;
};

std::string to_line(const Record & r);
Result<Record> record_from_line(const std::string & line);

struct EventLog
{
  // "key=value" header entries rendered as `# key=value` lines.
  std::vector<std::pair<std::string, std::string>> header;
  std::vector<Record> records;

  void add(Record r) { records.push_back(std::move(r)); }
  std::string header_value(const std::string & key) const;

  /// True when records are sorted by (tick, module priority).
  bool ordered() const;

  std::string to_text() const;
  static Result<EventLog> from_text(const std::string & text);

  bool operator==(const EventLog &) const = default;
};

}  // namespace chaperone

#endif  // CHAPERONE__EVENT_LOG_HPP_
