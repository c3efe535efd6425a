#include "actuplace/guarantees.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

namespace actuplace {

namespace {

NodeSet mask_to_set(uint32_t mask) {
    NodeSet s;
    for (int v = 0; mask; ++v, mask >>= 1)
        if (mask & 1) s.push_back(v);
    return s;
}

// All 2^n values of f, indexed by bitmask.
std::vector<double> tabulate(const SetFunction& f, int n) {
    std::vector<double> table(size_t{1} << n);
    for (uint32_t mask = 0; mask < table.size(); ++mask) table[mask] = f(mask_to_set(mask));
    return table;
}

struct RatioBounds {
    double lo = std::numeric_limits<double>::infinity();   // min rho_v(S)/rho_v(T)
    double hi = -std::numeric_limits<double>::infinity();  // max rho_v(S)/rho_v(T)
    bool alpha_saturated = false;                          // some rho_v(T) vanished
};

RatioBounds scan_ratios(const std::vector<double>& table, int n) {
    const uint32_t full = (uint32_t{1} << n) - 1;
    const double tol = 1e-12 * std::abs(table[full]);
    RatioBounds out;
    for (int v = 0; v < n; ++v) {
        const uint32_t vbit = uint32_t{1} << v;
        const uint32_t rest = full & ~vbit;
        // T ranges over subsets of V\{v}; S over subsets of T.
        for (uint32_t T = rest;; T = (T - 1) & rest) {
            const double rho_T = table[T | vbit] - table[T];
            if (rho_T < -tol) throw Error(Err::NotIncreasing, "negative marginal gain found");
            for (uint32_t S = T;; S = (S - 1) & T) {
                const double rho_S = table[S | vbit] - table[S];
                if (rho_S < -tol) throw Error(Err::NotIncreasing, "negative marginal gain found");
                const bool zs = std::abs(rho_S) <= tol, zt = std::abs(rho_T) <= tol;
                if (!(zs && zt)) {
                    if (zt) {
                        out.alpha_saturated = true;  // rho_v(SuU) = 0 < rho_v(S)
                    } else {
                        const double r = rho_S / rho_T;
                        out.lo = std::min(out.lo, r);
                        out.hi = std::max(out.hi, r);
                    }
                }
                if (S == 0) break;
            }
            if (T == 0) break;
        }
    }
    return out;
}

}  // namespace

RatioCurvature exact_ratio_and_curvature(const SetFunction& f) {
    const int n = f.ground_size;
    if (n < 1 || n > 16)
        throw Error(Err::GroundSetTooLarge, "exact enumeration limited to ground size 16");
    const auto table = tabulate(f, n);
    const RatioBounds b = scan_ratios(table, n);
    RatioCurvature out;
    if (std::isinf(b.lo)) return out;  // every gain vanished: modular-zero, (1, 0)
    out.gamma = std::clamp(b.lo, 0.0, 1.0);
    out.alpha = b.alpha_saturated ? 1.0 : std::clamp(1.0 - 1.0 / b.hi, 0.0, 1.0);
    return out;
}

bool forward_reverse_duality_check(const SetFunction& f) {
    const int n = f.ground_size;
    if (n < 1 || n > 10)
        throw Error(Err::GroundSetTooLarge, "duality check limited to ground size 10");
    NodeSet all(n);
    std::iota(all.begin(), all.end(), 0);
    SetFunction reflected{n, [&](const NodeSet& R) { return -f(set_difference(all, R)); }};
    const RatioCurvature fwd = exact_ratio_and_curvature(f);
    const RatioCurvature rev = exact_ratio_and_curvature(reflected);
    return std::abs(rev.gamma - (1.0 - fwd.alpha)) <= 1e-9 &&
           std::abs(rev.alpha - (1.0 - fwd.gamma)) <= 1e-9;
}

namespace {

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double out = 1.0;
    for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
    return out;
}

// Applies fn to every K-subset of {0..n-1}, or to `cap` seeded uniform samples
// when the count exceeds the cap.  Returns true when sampled.
bool for_each_k_subset(int n, int K, long cap, uint64_t seed,
                       const std::function<void(const NodeSet&)>& fn) {
    if (K < 0 || K > n) return false;
    if (binomial(n, K) <= static_cast<double>(cap)) {
        NodeSet comb(K);
        std::iota(comb.begin(), comb.end(), 0);
        while (true) {
            fn(comb);
            int i = K - 1;
            while (i >= 0 && comb[i] == n - K + i) --i;
            if (i < 0) break;
            ++comb[i];
            for (int j = i + 1; j < K; ++j) comb[j] = comb[j - 1] + 1;
        }
        return false;
    }
    std::mt19937_64 rng(seed);
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    for (long draw = 0; draw < cap; ++draw) {
        for (int i = 0; i < K; ++i) {
            std::uniform_int_distribution<int> pick(i, n - 1);
            std::swap(pool[i], pool[pick(rng)]);
        }
        fn(make_node_set({pool.begin(), pool.begin() + K}));
    }
    return true;
}

// A marginal gain together with the rounding noise of the two function
// values it was computed from.
struct Gain {
    double value = 0.0;
    double tol = 0.0;
};

Gain gain_between(const SetFunction& f, const NodeSet& base, const NodeSet& grown) {
    const double fa = f(base);
    const double fb = f(grown);
    return {fb - fa, 1e-12 * std::max(std::abs(fa), std::abs(fb))};
}

// gamma-hat <= rhs/lhs feasibility bound; both-vanishing pairs are skipped
// and a vanishing lhs is vacuous.
void tighten(double& bound, const Gain& lhs, const Gain& rhs) {
    if (lhs.value <= lhs.tol && std::abs(rhs.value) <= rhs.tol) return;
    if (lhs.value <= lhs.tol) return;  // 0 <= gamma^-1 * rhs holds for any gamma
    bound = std::min(bound, std::max(rhs.value, 0.0) / lhs.value);
}

}  // namespace

GreedyGamma greedy_gamma_forward(const SetFunction& f, const GreedyTrace& trace, int K,
                                 long enumeration_cap, uint64_t seed) {
    const int n = f.ground_size;
    if (trace.direction != Direction::forward)
        throw Error(Err::DomainError, "expected a forward trace");
    // Reconstruct the iterate sets S^0..S^K.
    std::vector<NodeSet> iterates{NodeSet{}};
    for (const auto& pick : trace.picks) iterates.push_back(set_with(iterates.back(), pick.node));
    const NodeSet& S_f = trace.final_set;

    double bound = std::numeric_limits<double>::infinity();

    // (a) f(S u S^f) - f(S^f) <= gamma^-1 sum_{j in S\S^f} rho_j(S^f), |S| = K.
    std::vector<Gain> gain_at_final(n);
    for (int j = 0; j < n; ++j)
        if (!set_contains(S_f, j)) gain_at_final[j] = gain_between(f, S_f, set_with(S_f, j));
    GreedyGamma out;
    out.approximate = for_each_k_subset(n, K, enumeration_cap, seed, [&](const NodeSet& S) {
        const Gain lhs = gain_between(f, S_f, set_union(S, S_f));
        Gain rhs;
        for (int j : S)
            if (!set_contains(S_f, j)) {
                rhs.value += gain_at_final[j].value;
                rhs.tol = std::max(rhs.tol, gain_at_final[j].tol);
            }
        tighten(bound, lhs, rhs);
    });

    // (b) rho_j(S^f) <= gamma^-1 rho_j(S^{t-1}) for all t <= K, j in V.
    const int steps = static_cast<int>(trace.picks.size());
    for (int t = 1; t <= steps; ++t) {
        const NodeSet& St = iterates[t - 1];
        for (int j = 0; j < n; ++j) {
            if (set_contains(S_f, j)) continue;  // both gains vanish or lhs is 0
            tighten(bound, gain_at_final[j], gain_between(f, St, set_with(St, j)));
        }
    }

    // (c) f(S^{i2+1}) - f(S^{i2}) <= gamma^-1 (f(S^{i1} u {v_{i2+1}}) - f(S^{i1})).
    for (int i2 = 0; i2 < steps; ++i2) {
        const Gain lhs = gain_between(f, iterates[i2], iterates[i2 + 1]);
        const int v = trace.picks[i2].node;
        for (int i1 = 0; i1 < i2; ++i1)
            tighten(bound, lhs, gain_between(f, iterates[i1], set_with(iterates[i1], v)));
    }

    out.gamma = std::isinf(bound) ? 1.0 : std::clamp(bound, 0.0, 1.0);
    return out;
}

GreedyRatioCurvature greedy_gamma_alpha_reverse(const SetFunction& f, const GreedyTrace& trace,
                                                int N, long enumeration_cap, uint64_t seed) {
    const int n = f.ground_size;
    if (trace.direction != Direction::reverse)
        throw Error(Err::DomainError, "expected a reverse trace");
    std::vector<NodeSet> iterates{NodeSet{}};
    for (const auto& pick : trace.picks) iterates.push_back(set_with(iterates.back(), pick.node));

    GreedyRatioCurvature out;
    const int steps = static_cast<int>(trace.picks.size());

    // gamma^rg: rho_{r_t}(R u R^{t-1}) <= gamma^-1 rho_t over t <= N, |R| = N.
    double gbound = std::numeric_limits<double>::infinity();
    const long cap_per_t = std::max(1L, enumeration_cap / std::max(1, steps));
    for (int t = 1; t <= steps; ++t) {
        const int rt = trace.picks[t - 1].node;
        const Gain rho_t = gain_between(f, iterates[t - 1], iterates[t]);
        const NodeSet& prev = iterates[t - 1];
        bool sampled = for_each_k_subset(n, N, cap_per_t, seed + t, [&](const NodeSet& R) {
            if (set_contains(R, rt)) return;  // gain of an element already present is 0
            const NodeSet base = set_union(R, prev);
            if (set_contains(base, rt)) return;
            tighten(gbound, gain_between(f, base, set_with(base, rt)), rho_t);
        });
        out.approximate = out.approximate || sampled;
    }
    out.gamma = std::isinf(gbound) ? 1.0 : std::clamp(gbound, 0.0, 1.0);

    // alpha^rg: rho_r(R u R^t) >= (1 - alpha) rho_r(R^t) over t <= N, |R| = N-1.
    double ratio_min = std::numeric_limits<double>::infinity();
    for (int t = 0; t <= steps; ++t) {
        const NodeSet& Rt = iterates[t];
        bool sampled =
            for_each_k_subset(n, std::max(0, N - 1), cap_per_t, seed + 101 + t,
                              [&](const NodeSet& R) {
                                  const NodeSet base = set_union(R, Rt);
                                  for (int r = 0; r < n; ++r) {
                                      if (set_contains(base, r)) continue;
                                      const Gain num = gain_between(f, base, set_with(base, r));
                                      const Gain den = gain_between(f, Rt, set_with(Rt, r));
                                      if (num.value <= num.tol && std::abs(den.value) <= den.tol)
                                          continue;
                                      if (den.value <= den.tol) continue;  // vacuous
                                      ratio_min =
                                          std::min(ratio_min, std::max(num.value, 0.0) / den.value);
                                  }
                              });
        out.approximate = out.approximate || sampled;
    }
    if (!std::isinf(ratio_min)) out.alpha = std::clamp(1.0 - ratio_min, 0.0, 1.0);
    return out;
}

namespace {

void check_bound_domain(int N, double gamma, double alpha) {
    if (N < 1) throw Error(Err::DomainError, "N must be >= 1");
    if (!(gamma > 0.0) || gamma > 1.0) throw Error(Err::DomainError, "gamma must lie in (0, 1]");
    if (alpha < 0.0 || !(alpha < 1.0)) throw Error(Err::DomainError, "alpha must lie in [0, 1)");
}

}  // namespace

double z_bar(int N, double gamma, double alpha) {
    check_bound_domain(N, gamma, alpha);
    if (gamma == 1.0) {
        double sum = 0.0;
        for (int i = 1; i <= N; ++i) sum += 1.0 / (i * (1.0 - alpha));
        return sum;
    }
    // (prod - 1)/b via expm1/log1p; stable as gamma -> 1 (b -> 0).
    const double b = (1.0 - gamma) / gamma;
    double log_prod = 0.0;
    for (int i = 1; i <= N; ++i) log_prod += std::log1p(b / ((N - i + 1) * (1.0 - alpha)));
    return std::expm1(log_prod) / b;
}

double z_u(int N, double gamma, double alpha) {
    check_bound_domain(N, gamma, alpha);
    if (gamma == 1.0) return std::log(2.0 * N + 1.0) / (1.0 - alpha);
    const double b = (1.0 - gamma) / gamma;
    return std::expm1(b / (1.0 - alpha) * std::log(2.0 * N + 1.0)) / b;
}

GuaranteeReport evaluate_forward_guarantee(double f_empty, double f_greedy, double f_opt,
                                           double gamma) {
    const double scale = std::max({std::abs(f_empty), std::abs(f_greedy), std::abs(f_opt), 1.0});
    if (f_greedy < f_empty - 1e-9 * scale || f_opt < f_greedy - 1e-9 * scale)
        throw Error(Err::OrderingViolated, "expected f_opt >= f_greedy >= f_empty");
    GuaranteeReport report;
    report.direction = Direction::forward;
    report.gamma = gamma;
    const double denom = f_opt - f_empty;
    report.lhs = denom <= 0.0 ? 1.0 : (f_greedy - f_empty) / denom;
    const double g3 = gamma * gamma * gamma;
    report.rhs = g3 / (g3 + 1.0);
    report.bound_value = report.rhs;
    report.holds = report.lhs >= report.rhs - 1e-9 * std::max(1.0, std::abs(report.rhs));
    return report;
}

GuaranteeReport evaluate_reverse_guarantee(double f_empty, double f_greedy_excl,
                                           double f_opt_excl, double gamma, double alpha, int N) {
    const double scale =
        std::max({std::abs(f_empty), std::abs(f_greedy_excl), std::abs(f_opt_excl), 1.0});
    if (f_opt_excl < f_empty - 1e-9 * scale || f_greedy_excl < f_empty - 1e-9 * scale)
        throw Error(Err::OrderingViolated, "expected exclusion objectives >= f_empty");
    GuaranteeReport report;
    report.direction = Direction::reverse;
    report.gamma = gamma;
    report.alpha = alpha;
    const double denom = f_opt_excl - f_empty;
    report.lhs = denom <= 0.0 ? 1.0 : (f_greedy_excl - f_empty) / denom;
    report.rhs = z_u(N, gamma, alpha);
    report.bound_value = report.rhs;
    report.holds = report.lhs <= report.rhs + 1e-9 * std::max(1.0, std::abs(report.rhs));
    return report;
}

}  // namespace actuplace
