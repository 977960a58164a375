#pragma once

#include <vector>

namespace selfsim {

// Minimal adjacency-list digraph; parallel edges and self-loops allowed.
struct Digraph {
    int n = 0;
    std::vector<std::vector<int>> adj;

    explicit Digraph(int n_ = 0) : n(n_), adj(n_) {}
    void add_edge(int u, int v) { adj[u].push_back(v); }
};

struct SccResult {
    int count = 0;
    std::vector<int> comp;                  // vertex -> component id
    std::vector<std::vector<int>> members;  // component id -> vertices
    std::vector<bool> has_edge;             // component contains an edge (size > 1 or self-loop)
};

// Iterative Tarjan; component ids are assigned in completion order, which is
// a reverse topological order of the condensation (sinks get small ids).
SccResult strongly_connected_components(const Digraph& g);

// Vertices reachable from any seed (seeds included).
std::vector<bool> reachable_from(const Digraph& g, const std::vector<int>& seeds);

}  // namespace selfsim
