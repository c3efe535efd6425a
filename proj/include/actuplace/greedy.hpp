#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "actuplace/network.hpp"

namespace actuplace {

/// A set function f: 2^V -> R on ground set {0, ..., ground_size-1}.
/// Must be deterministic; engines may evaluate it concurrently.
struct SetFunction {
    int ground_size = 0;
    std::function<double(const NodeSet&)> evaluate;

    double operator()(const NodeSet& s) const { return evaluate(s); }
};

enum class Direction { forward, reverse };

struct GreedyPick {
    int iteration = 0;       // 1-based iteration t
    int node = 0;
    double gain = 0.0;       // rho_t
    NodeSet rejected;        // candidates discarded by the oracle this iteration
};

struct GreedyTrace {
    Direction direction = Direction::forward;
    std::vector<GreedyPick> picks;
    NodeSet final_set;
    std::vector<double> objective_values;  // f after each committed pick
};

using MembershipOracle = std::function<bool(const NodeSet&)>;

struct GreedyOptions {
    int jobs = 1;
    NodeSet ground;  // candidate nodes; empty means all of {0..ground_size-1}
};

/// Forward greedy over a matroid: repeatedly commit the unconsidered node of
/// maximal marginal gain that keeps the set independent.  Ties break toward
/// the smallest node index.  Throws InfeasibleAtSize if the candidate pool is
/// exhausted before |S| = K.
GreedyTrace forward_greedy(const SetFunction& f, const MembershipOracle& oracle, int K,
                           const GreedyOptions& opts = {});

/// Reverse greedy over a matroid: repeatedly commit the unconsidered node of
/// minimal marginal gain whose exclusion stays independent, until |R| = N.
GreedyTrace reverse_greedy(const SetFunction& f, const MembershipOracle& oracle, int N,
                           const GreedyOptions& opts = {});

struct PlacementResult {
    NodeSet chosen;
    double f_eps = 0.0;
    std::optional<double> f_exact;
    GreedyTrace trace;
    double wall_time = 0.0;  // seconds
};

/// Forward greedy bound to f = -F_eps with the C~_K membership oracle.
PlacementResult solve_forward(const DirectedNetwork& net, int K, double T, double eps,
                              const GreedyOptions& opts = {});

/// Reverse greedy bound to f(R) = F_eps(V_act \ R) with the R~_K oracle;
/// exclusions range over actuatable nodes only, N = |V_act| - K.
PlacementResult solve_reverse(const DirectedNetwork& net, int K, double T, double eps,
                              const GreedyOptions& opts = {});

}  // namespace actuplace
