#pragma once

#include "manetsim/routing/agent.hpp"

#include <map>
#include <set>
#include <vector>

namespace manetsim::routing {

/// Directed adjacency keyed by node id.
using Adjacency = std::map<NodeId, std::set<NodeId>>;

/// Breadth-first routes from `self`. Among equal-length paths the lowest
/// first-hop id wins, so the table does not depend on map iteration order.
std::map<NodeId, RouteView> shortest_path_routes(NodeId self, const Adjacency& adj);

}  // namespace manetsim::routing
