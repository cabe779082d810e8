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

#ifndef CHAPERONE__MAP_HPP_
#define CHAPERONE__MAP_HPP_

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "chaperone/common.hpp"

namespace chaperone
{

/// Undirected edge key with endpoints in sorted order.
using EdgeKey = std::pair<NodeId, NodeId>;

EdgeKey make_edge_key(const NodeId & a, const NodeId & b);

struct RoadNode
{
  NodeId id;
  bool known_area = true;
  bool stop_allowed = true;
  bool assistant_present = false;
  bool care_facility = false;

  bool operator==(const RoadNode &) const = default;
};

struct RoadEdge
{
  NodeId a;
  NodeId b;
  double travel_s = 0.0;
  double length_m = 0.0;

  bool operator==(const RoadEdge &) const = default;
};

struct StopPoint
{
  StopId id;
  NodeId node;
  double slope_deg = 0.0;
  double curb_height_cm = 0.0;

  bool operator==(const StopPoint &) const = default;
};

/// Boarding platform deployable: slope at most 5 deg, curb at most 20 cm.
bool platform_usable(const StopPoint & stop);

struct RoadGraph
{
  std::vector<RoadNode> nodes;
  std::vector<RoadEdge> edges;
  std::vector<StopPoint> stops;

  const RoadNode * find_node(const NodeId & id) const;
  const RoadEdge * find_edge(const NodeId & a, const NodeId & b) const;
  const StopPoint * find_stop(const StopId & id) const;
  std::vector<const RoadEdge *> edges_at(const NodeId & id) const;

  bool operator==(const RoadGraph &) const = default;
};

struct Route
{
  std::vector<NodeId> nodes;
  double travel_s = 0.0;
  double length_m = 0.0;

  bool empty() const { return nodes.empty(); }
  bool operator==(const Route &) const = default;
};

struct RouteConstraints
{
  std::set<NodeId> excluded_nodes;
  std::set<EdgeKey> excluded_edges;
  std::optional<double> max_duration_s;

  bool operator==(const RouteConstraints &) const = default;
};

/// Least-travel-time route. Equal-cost candidates resolve to the
/// lexicographically smallest node sequence; positive edge costs make
/// that tie-break stable under Dijkstra finalization. Fails with
/// DURATION_EXCEEDED when the best route is longer than max_duration_s.
Result<Route> plan_route(
  const RoadGraph & graph, const NodeId & from, const NodeId & to,
  const RouteConstraints & constraints = {});

/// Travel-time cost map from `from` to every reachable node.
std::map<NodeId, double> reach_costs(
  const RoadGraph & graph, const NodeId & from, const RouteConstraints & constraints = {});

/// Nearest node satisfying `pred` by travel time; cost ties resolve by
/// the route tie-break. Includes `from` itself at cost zero.
Result<Route> plan_route_to_nearest(
  const RoadGraph & graph, const NodeId & from,
  const std::function<bool(const RoadNode &)> & pred, const RouteConstraints & constraints = {});

}  // namespace chaperone

#endif  // CHAPERONE__MAP_HPP_
