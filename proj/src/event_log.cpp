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

#include "chaperone/event_log.hpp"

#include <algorithm>
#include <sstream>

namespace chaperone
{

namespace
{

// Whitespace would break the line grammar; underscores keep values greppable.
std::string sanitize(const std::string & value)
{
  std::string out = value;
  for (char & c : out) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      c = '_';
    }
  }
  return out;
}

}  // namespace

Record & Record::with(const std::string & key, const std::string & value)
{
  payload.emplace_back(key, sanitize(value));
  return *this;
}

Record & Record::with(const std::string & key, Tick value)
{
  payload.emplace_back(key, std::to_string(value));
  return *this;
}

Record & Record::with(const std::string & key, double value)
{
  payload.emplace_back(key, format_fixed(value));
  return *this;
}

std::string Record::find(const std::string & key) const
{
  for (const auto & [k, v] : payload) {
    if (k == key) {
      return v;
    }
  }
  return "";
}

std::string to_line(const Record & r)
{
  std::string line = "t=" + std::to_string(r.tick) + " m=" + to_string(r.module) +
                     " type=" + sanitize(r.type);
  for (const auto & [k, v] : r.payload) {
    line += " " + k + "=" + v;
  }
  return line;
}

Result<Record> record_from_line(const std::string & line)
{
  Record r;
  std::istringstream in(line);
  std::string token;
  int index = 0;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) {
      return fail<Record>(ErrorCode::LOG_FORMAT_ERROR, "token without '=': " + token);
    }
    const std::string key = token.substr(0, eq);
    const std::string value = token.substr(eq + 1);
    if (index == 0) {
      if (key != "t") {
        return fail<Record>(ErrorCode::LOG_FORMAT_ERROR, "record must start with t=");
      }
      const auto tick = parse_int(value);
      if (!tick.has_value()) {
        return fail<Record>(ErrorCode::LOG_FORMAT_ERROR, "bad tick: " + value);
      }
      r.tick = *tick;
    } else if (index == 1) {
      if (key != "m") {
        return fail<Record>(ErrorCode::LOG_FORMAT_ERROR, "record must carry m= second");
      }
      const auto mod = parse_as<Module>(value);
      if (!mod.has_value()) {
        return fail<Record>(ErrorCode::LOG_FORMAT_ERROR, "unknown module: " + value);
      }
      r.module = *mod;
    } else if (index == 2) {
      if (key != "type") {
        return fail<Record>(ErrorCode::LOG_FORMAT_ERROR, "record must carry type= third");
      }
      r.type = value;
    } else {
      r.payload.emplace_back(key, value);
    }
    ++index;
  }
  if (index < 3) {
    return fail<Record>(ErrorCode::LOG_FORMAT_ERROR, "truncated record: " + line);
  }
  return Result<Record>(r);
}

std::string EventLog::header_value(const std::string & key) const
{
  for (const auto & [k, v] : header) {
    if (k == key) {
      return v;
    }
  }
  return "";
}

bool EventLog::ordered() const
{
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto & a = records[i - 1];
    const auto & b = records[i];
    if (std::pair(a.tick, a.module) > std::pair(b.tick, b.module)) {
      return false;
    }
  }
  return true;
}

std::string EventLog::to_text() const
{
  std::string out;
  for (const auto & [k, v] : header) {
    out += "# " + k + "=" + sanitize(v) + "\n";
  }
  for (const auto & r : records) {
    out += to_line(r) + "\n";
  }
  return out;
}

Result<EventLog> EventLog::from_text(const std::string & text)
{
  EventLog log;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    if (line[0] == '#') {
      std::string body = line.substr(1);
      while (!body.empty() && body.front() == ' ') {
        body.erase(body.begin());
      }
      const auto eq = body.find('=');
      if (eq == std::string::npos) {
        return fail<EventLog>(ErrorCode::LOG_FORMAT_ERROR, "bad header line: " + line);
      }
      log.header.emplace_back(body.substr(0, eq), body.substr(eq + 1));
      continue;
    }
    auto rec = record_from_line(line);
    if (!rec.ok()) {
      return fail<EventLog>(rec.error().code, rec.error().message);
    }
    log.records.push_back(std::move(rec.value()));
  }
  return Result<EventLog>(std::move(log));
}

}  // namespace chaperone
