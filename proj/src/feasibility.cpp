#include "actuplace/feasibility.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace actuplace {

namespace {

void check_node_range(const DirectedNetwork& net, const NodeSet& s) {
    for (int v : s)
        if (v < 0 || v >= net.size())
            throw Error(Err::DimensionMismatch, "node index out of range");
}

}  // namespace

BipartiteAux build_bipartite(const DirectedNetwork& net, const NodeSet& S) {
    check_node_range(net, S);
    const int n = net.size();
    BipartiteAux aux;
    aux.n = n;
    aux.s_nodes = S;
    const auto& A = net.weights();
    // (v_i, v'_j) for every edge (v_i, v_j) of E, i.e. A(j, i) != 0.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (A(j, i) != 0.0) aux.edges.emplace_back(i, j);
    // (v''_k, v'_k) for every v_k in S.
    for (size_t idx = 0; idx < S.size(); ++idx)
        aux.edges.emplace_back(n + static_cast<int>(idx), S[idx]);
    return aux;
}

int max_flow(const FlowNetwork& fn) {
    // Residual graph as an edge array with paired reverse edges.
    struct Edge {
        int to;
        int cap;
    };
    std::vector<Edge> edges;
    std::vector<std::vector<int>> adj(fn.node_count);
    edges.reserve(2 * fn.arcs.size());
    for (const auto& arc : fn.arcs) {
        adj[arc.from].push_back(static_cast<int>(edges.size()));
        edges.push_back({arc.to, arc.capacity});
        adj[arc.to].push_back(static_cast<int>(edges.size()));
        edges.push_back({arc.from, 0});
    }

    int flow = 0;
    std::vector<int> parent_edge(fn.node_count);
    while (true) {
        std::fill(parent_edge.begin(), parent_edge.end(), -1);
        parent_edge[fn.source] = -2;
        std::queue<int> q;
        q.push(fn.source);
        while (!q.empty() && parent_edge[fn.sink] == -1) {
            int u = q.front();
            q.pop();
            for (int id : adj[u]) {
                if (edges[id].cap > 0 && parent_edge[edges[id].to] == -1) {
                    parent_edge[edges[id].to] = id;
                    q.push(edges[id].to);
                }
            }
        }
        if (parent_edge[fn.sink] == -1) break;
        int aug = std::numeric_limits<int>::max();
        for (int v = fn.sink; v != fn.source;) {
            int id = parent_edge[v];
            aug = std::min(aug, edges[id].cap);
            v = edges[id ^ 1].to;
        }
        for (int v = fn.sink; v != fn.source;) {
            int id = parent_edge[v];
            edges[id].cap -= aug;
            edges[id ^ 1].cap += aug;
            v = edges[id ^ 1].to;
        }
        flow += aug;
    }
    return flow;
}

FlowNetwork matching_flow_graph(const BipartiteAux& aux) {
    // source -> left, left -> right per edge, right -> sink; unit capacities.
    const int nl = aux.left_count();
    const int nr = aux.right_count();
    FlowNetwork fn;
    fn.node_count = nl + nr + 2;
    fn.source = nl + nr;
    fn.sink = nl + nr + 1;
    for (int l = 0; l < nl; ++l) fn.arcs.push_back({fn.source, l, 1});
    for (auto [l, r] : aux.edges) fn.arcs.push_back({l, nl + r, 1});
    for (int r = 0; r < nr; ++r) fn.arcs.push_back({nl + r, fn.sink, 1});
    return fn;
}

int max_matching_cardinality(const DirectedNetwork& net, const NodeSet& S) {
    return max_flow(matching_flow_graph(build_bipartite(net, S)));
}

bool forward_feasible(const DirectedNetwork& net, const NodeSet& S, int K) {
    check_node_range(net, S);
    const int n = net.size();
    if (static_cast<int>(S.size()) > K)
        throw Error(Err::CardinalityExceeded, "|S| exceeds the cardinality limit K");
    for (int v : S)
        if (!net.is_actuatable(v))
            throw Error(Err::NotActuatable, "node " + net.label(v) + " cannot carry an actuator");
    return max_matching_cardinality(net, S) >= n - K + static_cast<int>(S.size());
}

FlowNetwork reverse_flow_graph(const DirectedNetwork& net, const NodeSet& R, int K) {
    check_node_range(net, R);
    const int n = net.size();
    // Candidate actuators after the exclusions: actuatable members of V \ R.
    NodeSet candidates;
    for (int v = 0; v < n; ++v)
        if (!set_contains(R, v) && net.is_actuatable(v)) candidates.push_back(v);

    // Node layout: V = 0..n-1, V' = n..2n-1, candidate'' copies, then s, s'', t.
    const int nc = static_cast<int>(candidates.size());
    FlowNetwork fn;
    fn.node_count = 2 * n + nc + 3;
    const int s = 2 * n + nc;
    const int s2 = 2 * n + nc + 1;
    fn.source = s;
    fn.sink = 2 * n + nc + 2;

    const auto& A = net.weights();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (A(j, i) != 0.0) fn.arcs.push_back({i, n + j, 1});       // E copies
    for (int idx = 0; idx < nc; ++idx)
        fn.arcs.push_back({2 * n + idx, n + candidates[idx], 1});       // E1 copies
    for (int i = 0; i < n; ++i) fn.arcs.push_back({s, i, 1});           // s -> V
    for (int idx = 0; idx < nc; ++idx) fn.arcs.push_back({s2, 2 * n + idx, 1});
    fn.arcs.push_back({s, s2, K});                                      // bottleneck
    for (int i = 0; i < n; ++i) fn.arcs.push_back({n + i, fn.sink, 1}); // V' -> t
    return fn;
}

bool reverse_feasible(const DirectedNetwork& net, const NodeSet& R, int K) {
    check_node_range(net, R);
    int n_act = 0;
    for (int v = 0; v < net.size(); ++v)
        if (net.is_actuatable(v)) ++n_act;
    if (static_cast<int>(R.size()) > n_act - K)
        throw Error(Err::TooManyExclusions, "|R| exceeds the number of allowed exclusions");
    for (int v : R)
        if (!net.is_actuatable(v))
            throw Error(Err::NotActuatable, "node " + net.label(v) + " is not an exclusion candidate");
    return max_flow(reverse_flow_graph(net, R, K)) == net.size();
}

int min_cardinality(const DirectedNetwork& net) {
    // A perfect matching in H_b(empty) still requires one actuator to drive
    // the matched cycle structure, hence the floor of 1.
    return std::max(1, net.size() - max_matching_cardinality(net, {}));
}

}  // namespace actuplace
