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

#ifndef CHAPERONE__COMMON_HPP_
#define CHAPERONE__COMMON_HPP_

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace chaperone
{

/// Simulation time in milliseconds since scenario start.
using Tick = std::int64_t;

using NodeId = std::string;
using PassengerId = std::string;
using ActorId = std::string;
using SensorId = std::string;
using StopId = std::string;

inline constexpr Tick kOperationalPeriodMs = 100;
inline constexpr Tick kTacticalPeriodMs = 1000;
inline constexpr Tick kStrategicPeriodMs = 10000;

/// Sentinel for unbounded durations (harm scores, lookaheads).
inline constexpr std::int64_t kInfDuration = std::numeric_limits<std::int64_t>::max();

enum class ErrorCode {
  UNKNOWN_SUBJECT,
  UNKNOWN_SENSOR,
  UNAUTHORIZED_ORIGIN,
  NO_ROUTE,
  DURATION_EXCEEDED,
  NO_SUITABLE_STOP,
  PERMISSION_DENIED,
  GUARD_TIMEOUT,
  PARSE_ERROR,
  VALIDATION_ERROR,
  LOG_FORMAT_ERROR,
};

const char * to_string(ErrorCode code);

struct Error
{
  ErrorCode code;
  std::string message;
};

/// Minimal expected-like carrier; the stdlib gains one only in C++23.
template <typename T>
class Result
{
public:
  Result(T value) : value_(std::move(value)) {}  // NOLINT(runtime/explicit)
  Result(Error error) : error_(std::move(error)) {}  // NOLINT(runtime/explicit)

  bool ok() const { return value_.has_value(); }
  explicit operator bool() const { return ok(); }

  const T & value() const & { return *value_; }
  T & value() & { return *value_; }
  T && value() && { return std::move(*value_); }
  const Error & error() const { return *error_; }

private:
  std::optional<T> value_;
  std::optional<Error> error_;
};

template <typename T>
Result<T> fail(ErrorCode code, std::string message)
{
  return Result<T>(Error{code, std::move(message)});
}

// ---------------------------------------------------------------------------
// Enum <-> name tables. Each enum declares one table; lookups stay O(n) over
// a handful of entries.

template <typename E>
const char * enum_name(std::span<const std::pair<E, const char *>> table, E value)
{
  for (const auto & [e, name] : table) {
    if (e == value) {
      return name;
    }
  }
  return "?";
}

template <typename E>
std::optional<E> enum_parse(std::span<const std::pair<E, const char *>> table, std::string_view text)
{
  for (const auto & [e, name] : table) {
    if (text == name) {
      return e;
    }
  }
  return std::nullopt;
}

#define CHAPERONE_ENUM_IO(EnumType, Table)                                         \
  inline const char * to_string(EnumType v)                                        \
  {                                                                                \
    return ::chaperone::enum_name<EnumType>({Table, std::size(Table)}, v);         \
  }                                                                                \
  inline std::optional<EnumType> parse_enum(std::string_view s, EnumType * /*tag*/) \
  {                                                                                \
    return ::chaperone::enum_parse<EnumType>({Table, std::size(Table)}, s);        \
  }

/// parse_as<E>("NAME") resolves through the per-enum parse_enum overload.
template <typename E>
std::optional<E> parse_as(std::string_view text)
{
  return parse_enum(text, static_cast<E *>(nullptr));
}

// ---------------------------------------------------------------------------
// Deterministic PRNG. All scenario randomness derives from the scenario seed
// through this generator; never seed from wall clock.

struct SplitMix64
{
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next()
  {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound). bound must be > 0.
  std::uint64_t next_below(std::uint64_t bound) { return next() % bound; }

  /// Uniform integer in [lo, hi] inclusive.
  std::int64_t next_in(std::int64_t lo, std::int64_t hi)
  {
    return lo + static_cast<std::int64_t>(next_below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
};

// ---------------------------------------------------------------------------
// Formatting/parsing helpers shared by the log and scenario formats.

/// Fixed three-decimal rendering; the log format never prints free-form floats.
std::string format_fixed(double value);

std::optional<double> parse_double(std::string_view text);
std::optional<std::int64_t> parse_int(std::string_view text);

std::vector<std::string> split(std::string_view text, char sep);
std::string join(const std::vector<std::string> & parts, char sep);

/// FNV-1a 64 over bytes; used to fingerprint scenario files in log headers.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace chaperone

#endif  // CHAPERONE__COMMON_HPP_
