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

#include "chaperone/common.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace chaperone
{

namespace
{
constexpr std::pair<ErrorCode, const char *> kErrorCodeNames[] = {
  {ErrorCode::UNKNOWN_SUBJECT, "UNKNOWN_SUBJECT"},
  {ErrorCode::UNKNOWN_SENSOR, "UNKNOWN_SENSOR"},
  {ErrorCode::UNAUTHORIZED_ORIGIN, "UNAUTHORIZED_ORIGIN"},
  {ErrorCode::NO_ROUTE, "NO_ROUTE"},
  {ErrorCode::DURATION_EXCEEDED, "DURATION_EXCEEDED"},
  {ErrorCode::NO_SUITABLE_STOP, "NO_SUITABLE_STOP"},
  {ErrorCode::PERMISSION_DENIED, "PERMISSION_DENIED"},
  {ErrorCode::GUARD_TIMEOUT, "GUARD_TIMEOUT"},
  {ErrorCode::PARSE_ERROR, "PARSE_ERROR"},
  {ErrorCode::VALIDATION_ERROR, "VALIDATION_ERROR"},
  {ErrorCode::LOG_FORMAT_ERROR, "LOG_FORMAT_ERROR"},
};
}  // namespace

const char * to_string(ErrorCode code)
{
  return enum_name<ErrorCode>({kErrorCodeNames, std::size(kErrorCodeNames)}, code);
}

std::string format_fixed(double value)
{
  // Normalize negative zero so logs are byte-stable across arithmetic paths.
  if (value == 0.0) {
    value = 0.0;
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", value);
  return buf;
}

std::optional<double> parse_double(std::string_view text)
{
  if (text.empty()) {
    return std::nullopt;
  }
  std::string owned(text);
  char * end = nullptr;
  errno = 0;
  const double v = std::strtod(owned.c_str(), &end);
  if (errno != 0 || end != owned.c_str() + owned.size()) {
    return std::nullopt;
  }
  return v;
}

std::optional<std::int64_t> parse_int(std::string_view text)
{
  if (text.empty()) {
    return std::nullopt;
  }
  std::string owned(text);
  char * end = nullptr;
  errno = 0;
  const long long v = std::strtoll(owned.c_str(), &end, 10);
  if (errno != 0 || end != owned.c_str() + owned.size()) {
    return std::nullopt;
  }
  return static_cast<std::int64_t>(v);
}

std::vector<std::string> split(std::string_view text, char sep)
{
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(text.substr(start));
      return out;
    }
    out.emplace_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string join(const std::vector<std::string> & parts, char sep)
{
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) {
      out.push_back(sep);
    }
    out += parts[i];
  }
  return out;
}

std::uint64_t fnv1a64(std::string_view bytes)
{
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace chaperone
