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

#include "chaperone/map.hpp"

#include <algorithm>
#include <queue>

namespace chaperone
{

EdgeKey make_edge_key(const NodeId & a, const NodeId & b)
{
  return a <= b ? EdgeKey{a, b} : EdgeKey{b, a};
}

const RoadNode * RoadGraph::find_node(const NodeId & id) const
{
  for (const auto & n : nodes) {
    if (n.id == id) {
      return &n;
    }
  }
  return nullptr;
}

const RoadEdge * RoadGraph::find_edge(const NodeId & a, const NodeId & b) const
{
  const EdgeKey key = make_edge_key(a, b);
  for (const auto & e : edges) {
    if (make_edge_key(e.a, e.b) == key) {
      return &e;
    }
  }
  return nullptr;
}

const StopPoint * RoadGraph::find_stop(const StopId & id) const
{
  for (const auto & s : stops) {
    if (s.id == id) {
      return &s;
    }
  }
  return nullptr;
}

std::vector<const RoadEdge *> RoadGraph::edges_at(const NodeId & id) const
{
  std::vector<const RoadEdge *> out;
  for (const auto & e : edges) {
    if (e.a == id || e.b == id) {
      out.push_back(&e);
    }
  }
  return out;
}

namespace
{

struct SearchEntry
{
  double cost;
  std::vector<NodeId> path;
  double length;

  bool operator>(const SearchEntry & other) const
  {
    if (cost != other.cost) {
      return cost > other.cost;
    }
    return path > other.path;
  }
};

bool edge_usable(const RoadEdge & e, const RouteConstraints & c)
{
  return c.excluded_edges.count(make_edge_key(e.a, e.b)) == 0;
}

/// Dijkstra keyed on (cost, node sequence). Each settled node keeps the
/// smallest key, so the returned path is both cheapest and, among
/// cheapest, lexicographically first.
Result<Route> search(
  const RoadGraph & graph, const NodeId & from,
  const std::function<bool(const RoadNode &)> & goal, const RouteConstraints & constraints)
{
  if (graph.find_node(from) == nullptr) {
    return fail<Route>(ErrorCode::NO_ROUTE, "unknown origin node " + from);
  }
  std::priority_queue<SearchEntry, std::vector<SearchEntry>, std::greater<SearchEntry>> open;
  std::set<NodeId> settled;
  if (constraints.excluded_nodes.count(from) == 0) {
    open.push({0.0, {from}, 0.0});
  }
  while (!open.empty()) {
    SearchEntry cur = open.top();
    open.pop();
    const NodeId & at = cur.path.back();
    if (settled.count(at) != 0) {
      continue;
    }
    settled.insert(at);
    const RoadNode * node = graph.find_node(at);
    if (node != nullptr && goal(*node)) {
      return Route{cur.path, cur.cost, cur.length};
    }
    for (const RoadEdge * e : graph.edges_at(at)) {
      if (!edge_usable(*e, constraints)) {
        continue;
      }
      const NodeId & next = e->a == at ? e->b : e->a;
      if (settled.count(next) != 0 || constraints.excluded_nodes.count(next) != 0) {
        continue;
      }
      SearchEntry step = cur;
      step.cost += e->travel_s;
      step.length += e->length_m;
      step.path.push_back(next);
      open.push(std::move(step));
    }
  }
  return fail<Route>(ErrorCode::NO_ROUTE, "no route from " + from);
}

}  // namespace

Result<Route> plan_route(
  const RoadGraph & graph, const NodeId & from, const NodeId & to,
  const RouteConstraints & constraints)
{
  if (graph.find_node(to) == nullptr) {
    return fail<Route>(ErrorCode::NO_ROUTE, "unknown destination node " + to);
  }
  if (constraints.excluded_nodes.count(to) != 0) {
    return fail<Route>(ErrorCode::NO_ROUTE, "destination " + to + " is excluded");
  }
  auto found = search(graph, from, [&to](const RoadNode & n) { return n.id == to; }, constraints);
  if (found && constraints.max_duration_s && found.value().travel_s > *constraints.max_duration_s) {
    return fail<Route>(
      ErrorCode::DURATION_EXCEEDED,
      "best route " + format_fixed(found.value().travel_s) + " s over limit");
  }
  return found;
}

bool platform_usable(const StopPoint & stop)
{
  return stop.slope_deg <= 5.0 && stop.curb_height_cm <= 20.0;
}

std::map<NodeId, double> reach_costs(
  const RoadGraph & graph, const NodeId & from, const RouteConstraints & constraints)
{
  std::map<NodeId, double> out;
  if (graph.find_node(from) == nullptr || constraints.excluded_nodes.count(from) != 0) {
    return out;
  }
  using Entry = std::pair<double, NodeId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> open;
  open.push({0.0, from});
  while (!open.empty()) {
    auto [cost, at] = open.top();
    open.pop();
    if (out.count(at) != 0) {
      continue;
    }
    out[at] = cost;
    for (const RoadEdge * e : graph.edges_at(at)) {
      if (!edge_usable(*e, constraints)) {
        continue;
      }
      const NodeId & next = e->a == at ? e->b : e->a;
      if (out.count(next) == 0 && constraints.excluded_nodes.count(next) == 0) {
        open.push({cost + e->travel_s, next});
      }
    }
  }
  return out;
}

Result<Route> plan_route_to_nearest(
  const RoadGraph & graph, const NodeId & from,
  const std::function<bool(const RoadNode &)> & pred, const RouteConstraints & constraints)
{
  return search(graph, from, pred, constraints);
}

}  // namespace chaperone
