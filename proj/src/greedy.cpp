#include "actuplace/greedy.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <numeric>
#include <thread>

#include "actuplace/feasibility.hpp"
#include "actuplace/gramian.hpp"

namespace actuplace {

namespace {

// Evaluates fn(i) for i in [0, count) across `jobs` threads; results land in
// a preallocated vector, so the outcome is independent of scheduling.
void parallel_eval(int count, int jobs, const std::function<void(int)>& fn) {
    if (jobs <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    const int workers = std::min(jobs, count);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::atomic<int> next{0};
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    for (auto& t : pool) t.join();
}

NodeSet effective_ground(const SetFunction& f, const GreedyOptions& opts) {
    if (!opts.ground.empty()) return opts.ground;
    NodeSet all(f.ground_size);
    std::iota(all.begin(), all.end(), 0);
    return all;
}

GreedyTrace run_greedy(const SetFunction& f, const MembershipOracle& oracle, int target,
                       Direction direction, const GreedyOptions& opts) {
    if (target < 0) throw Error(Err::InfeasibleAtSize, "negative target cardinality");
    const NodeSet ground = effective_ground(f, opts);
    const bool maximize = direction == Direction::forward;

    GreedyTrace trace;
    trace.direction = direction;
    NodeSet current;          // S^t (forward) or R^t (reverse)
    NodeSet considered;       // U^t
    double f_current = f(current);

    int t = 1;
    while (static_cast<int>(considered.size()) < static_cast<int>(ground.size()) &&
           static_cast<int>(current.size()) < target) {
        NodeSet candidates = set_difference(ground, considered);
        // Marginal gains are memoized for this iteration only; S changes on
        // commit, invalidating them.
        std::vector<double> gains(candidates.size());
        parallel_eval(static_cast<int>(candidates.size()), opts.jobs, [&](int i) {
            gains[i] = f(set_with(current, candidates[i])) - f_current;
        });
        std::vector<int> order(candidates.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            if (gains[a] != gains[b]) return maximize ? gains[a] > gains[b] : gains[a] < gains[b];
            return candidates[a] < candidates[b];
        });

        GreedyPick pick;
        pick.iteration = t;
        bool committed = false;
        for (int idx : order) {
            const int v = candidates[idx];
            NodeSet grown = set_with(current, v);
            if (oracle(grown)) {
                pick.node = v;
                pick.gain = gains[idx];
                current = std::move(grown);
                considered = set_with(considered, v);
                f_current = f(current);
                trace.objective_values.push_back(f_current);
                trace.picks.push_back(std::move(pick));
                committed = true;
                ++t;
                break;
            }
            considered = set_with(considered, v);
            pick.rejected.push_back(v);
        }
        if (!committed) break;  // every remaining candidate failed the oracle
    }

    if (static_cast<int>(current.size()) < target)
        throw Error(Err::InfeasibleAtSize,
                    "candidate pool exhausted at size " + std::to_string(current.size()) +
                        " of " + std::to_string(target));
    trace.final_set = std::move(current);
    return trace;
}

}  // namespace

GreedyTrace forward_greedy(const SetFunction& f, const MembershipOracle& oracle, int K,
                           const GreedyOptions& opts) {
    if (K < 1) throw Error(Err::DomainError, "K must be >= 1");
    return run_greedy(f, oracle, K, Direction::forward, opts);
}

GreedyTrace reverse_greedy(const SetFunction& f, const MembershipOracle& oracle, int N,
                           const GreedyOptions& opts) {
    return run_greedy(f, oracle, N, Direction::reverse, opts);
}

namespace {

PlacementResult finish_placement(const GramianCache& cache, NodeSet chosen, GreedyTrace trace,
                                 double eps, std::chrono::steady_clock::time_point start) {
    PlacementResult result;
    result.f_eps = cache.f_eps(chosen, eps);
    try {
        result.f_exact = cache.f_exact(chosen);
    } catch (const Error& e) {
        if (e.kind() != Err::SingularGramian) throw;
    }
    result.chosen = std::move(chosen);
    result.trace = std::move(trace);
    result.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

void check_solve_preconditions(const DirectedNetwork& net, int K, int n_act) {
    require_strongly_connected(net);
    if (K < min_cardinality(net))
        throw Error(Err::KBelowMinimum, "K is below the structural-controllability minimum");
    if (K > n_act)
        throw Error(Err::InfeasibleAtSize, "K exceeds the number of actuatable nodes");
}

}  // namespace

PlacementResult solve_forward(const DirectedNetwork& net, int K, double T, double eps,
                              const GreedyOptions& opts) {
    const auto start = std::chrono::steady_clock::now();
    const NodeSet candidates = net.actuatable_nodes();
    check_solve_preconditions(net, K, static_cast<int>(candidates.size()));

    GramianCache cache(net, T);
    SetFunction objective{net.size(), [&](const NodeSet& S) { return -cache.f_eps(S, eps); }};
    MembershipOracle oracle = [&](const NodeSet& S) { return forward_feasible(net, S, K); };

    GreedyOptions engine_opts = opts;
    engine_opts.ground = candidates;
    GreedyTrace trace = forward_greedy(objective, oracle, K, engine_opts);
    NodeSet chosen = trace.final_set;
    return finish_placement(cache, std::move(chosen), std::move(trace), eps, start);
}

PlacementResult solve_reverse(const DirectedNetwork& net, int K, double T, double eps,
                              const GreedyOptions& opts) {
    const auto start = std::chrono::steady_clock::now();
    const NodeSet candidates = net.actuatable_nodes();
    check_solve_preconditions(net, K, static_cast<int>(candidates.size()));
    const int N = static_cast<int>(candidates.size()) - K;

    GramianCache cache(net, T);
    SetFunction objective{net.size(), [&](const NodeSet& R) {
                              return cache.f_eps(set_difference(candidates, R), eps);
                          }};
    MembershipOracle oracle = [&](const NodeSet& R) { return reverse_feasible(net, R, K); };

    GreedyOptions engine_opts = opts;
    engine_opts.ground = candidates;
    GreedyTrace trace = reverse_greedy(objective, oracle, N, engine_opts);
    NodeSet chosen = set_difference(candidates, trace.final_set);
    return finish_placement(cache, std::move(chosen), std::move(trace), eps, start);
}

}  // namespace actuplace
