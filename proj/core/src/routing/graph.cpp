#include "manetsim/routing/graph.hpp"

namespace manetsim::routing {

std::map<NodeId, RouteView> shortest_path_routes(NodeId self, const Adjacency& adj) {
    std::map<NodeId, RouteView> routes;
    std::vector<NodeId> frontier;
    if (auto it = adj.find(self); it != adj.end()) {
        for (NodeId n : it->second) {
            if (n == self) continue;
            routes[n] = RouteView{n, 1};
            frontier.push_back(n);
        }
    }
    int depth = 1;
    while (!frontier.empty()) {
        ++depth;
        std::map<NodeId, NodeId> next;  // node -> best first hop at this depth
        for (NodeId u : frontier) {
            auto it = adj.find(u);
            if (it == adj.end()) continue;
            const NodeId first = routes[u].next_hop;
            for (NodeId v : it->second) {
                if (v == self || routes.contains(v)) continue;
                auto [slot, inserted] = next.emplace(v, first);
                if (!inserted && first < slot->second) slot->second = first;
            }
        }
        frontier.clear();
        for (auto [v, first] : next) {
            routes[v] = RouteView{first, depth};
            frontier.push_back(v);
        }
    }
    return routes;
}

}  // namespace manetsim::routing
