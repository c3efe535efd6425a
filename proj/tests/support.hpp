#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "actuplace/network.hpp"

namespace actuplace::testing {

// The 4-node system used throughout the worked feasibility examples.
inline DirectedNetwork example1_network() {
    Eigen::MatrixXd A(4, 4);
    A << 0, -0.5, -0.8, -0.6,
         1, 0, 0, 0,
         1, 0, 0, 0,
         1, 0, 0, 0;
    return DirectedNetwork::from_weights(A);
}

inline std::string example1_json() {
    return R"({"n": 4, "edges": [
        {"from": 2, "to": 1, "w": -0.5},
        {"from": 3, "to": 1, "w": -0.8},
        {"from": 4, "to": 1, "w": -0.6},
        {"from": 1, "to": 2, "w": 1},
        {"from": 1, "to": 3, "w": 1},
        {"from": 1, "to": 4, "w": 1}]})";
}

inline NodeSet mask_to_set(uint32_t mask) {
    NodeSet s;
    for (int v = 0; mask; ++v, mask >>= 1)
        if (mask & 1) s.push_back(v);
    return s;
}

// Adjacency bitmask (bit i*n+j set <=> A(i,j) != 0) -> weighted network.
inline DirectedNetwork pattern_to_network(int n, uint64_t pattern, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> mag(0.5, 1.5);
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (pattern >> (i * n + j) & 1) A(i, j) = (rng() & 1 ? 1.0 : -1.0) * mag(rng);
    return DirectedNetwork::from_weights(A);
}

// Strongly connected sparsity patterns on n nodes: exhaustive for n <= 3,
// deduplicated random samples above.
inline std::vector<uint64_t> strongly_connected_patterns(int n, size_t want, uint64_t seed) {
    std::vector<uint64_t> out;
    std::mt19937_64 rng(seed);
    auto is_sc = [&](uint64_t pattern) {
        DirectedNetwork net = pattern_to_network(n, pattern, rng);
        return strongly_connected(net);
    };
    const int bits = n * n;
    if (bits <= 9) {
        for (uint64_t p = 0; p < (uint64_t{1} << bits); ++p)
            if (is_sc(p)) {
                out.push_back(p);
                if (out.size() >= want) break;
            }
        return out;
    }
    std::uniform_real_distribution<double> density(0.2, 0.7);
    std::unordered_set<uint64_t> dedupe;
    for (size_t attempts = 0; out.size() < want && attempts < 500 * want; ++attempts) {
        const double p = density(rng);
        uint64_t pattern = 0;
        for (int b = 0; b < bits; ++b)
            if (std::uniform_real_distribution<double>(0, 1)(rng) < p) pattern |= uint64_t{1} << b;
        if (dedupe.count(pattern)) continue;
        dedupe.insert(pattern);
        if (is_sc(pattern)) out.push_back(pattern);
    }
    return out;
}

// Random strongly connected weighted digraph (resamples until connected).
inline DirectedNetwork random_sc_network(int n, uint64_t seed, double density = 0.5) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0, 1), mag(0.5, 1.5);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (uni(rng) < density) A(i, j) = (rng() & 1 ? 1.0 : -1.0) * mag(rng);
        DirectedNetwork net = DirectedNetwork::from_weights(A);
        if (strongly_connected(net)) return net;
    }
    throw std::runtime_error("could not sample a strongly connected network");
}

// Augmenting-path maximum matching, independent of the flow-based route.
inline int reference_max_matching(int nl, int nr, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<int>> adj(nl);
    for (auto [l, r] : edges) adj[l].push_back(r);
    std::vector<int> match_r(nr, -1);
    std::vector<char> visited;
    std::function<bool(int)> augment = [&](int l) -> bool {
        for (int r : adj[l]) {
            if (visited[r]) continue;
            visited[r] = 1;
            if (match_r[r] == -1 || augment(match_r[r])) {
                match_r[r] = l;
                return true;
            }
        }
        return false;
    };
    int size = 0;
    for (int l = 0; l < nl; ++l) {
        visited.assign(nr, 0);
        if (augment(l)) ++size;
    }
    return size;
}

}  // namespace actuplace::testing
