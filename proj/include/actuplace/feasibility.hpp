#pragma once

#include <utility>
#include <vector>

#include "actuplace/network.hpp"

namespace actuplace {

/// Capacitated digraph with designated source and sink.
struct FlowNetwork {
    struct Arc {
        int from = 0;
        int to = 0;
        int capacity = 0;
    };
    int node_count = 0;
    std::vector<Arc> arcs;
    int source = 0;
    int sink = 0;
};

/// Auxiliary bipartite graph H_b(S): left nodes V u S'', right nodes V'.
/// Left indices 0..n-1 are V, n..n+|S|-1 are S'' (in sorted S order); right
/// indices 0..n-1 are V'.
struct BipartiteAux {
    int n = 0;
    NodeSet s_nodes;
    std::vector<std::pair<int, int>> edges;  // (left, right)

    int left_count() const { return n + static_cast<int>(s_nodes.size()); }
    int right_count() const { return n; }
};

BipartiteAux build_bipartite(const DirectedNetwork& net, const NodeSet& S);

/// Maximum flow by breadth-first augmenting paths (Edmonds-Karp).
int max_flow(const FlowNetwork& fn);

/// Unit-capacity flow network whose maximum flow equals the maximum matching
/// cardinality of the bipartite graph.
FlowNetwork matching_flow_graph(const BipartiteAux& aux);

/// |m_bar(S)|, the maximum matching cardinality of H_b(S).
int max_matching_cardinality(const DirectedNetwork& net, const NodeSet& S);

/// Membership oracle for C~_K: true iff |m_bar(S)| >= n - K + |S|.
bool forward_feasible(const DirectedNetwork& net, const NodeSet& S, int K);

/// Auxiliary flow graph H_r(V\R) with the capacity-K bottleneck arc (s, s'').
FlowNetwork reverse_flow_graph(const DirectedNetwork& net, const NodeSet& R, int K);

/// Membership oracle for R~_K: true iff max_flow(H_r(V\R)) = n.
bool reverse_feasible(const DirectedNetwork& net, const NodeSet& R, int K);

/// Smallest K with a nonempty C~_K: n - |m_bar(empty)|.
int min_cardinality(const DirectedNetwork& net);

}  // namespace actuplace
