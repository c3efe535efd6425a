#include "actuplace/oracle.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>

#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include "actuplace/feasibility.hpp"

namespace actuplace {

namespace {

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double out = 1.0;
    for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
    return out;
}

}  // namespace

PlacementResult brute_force_optimal(const DirectedNetwork& net, int K, double T, double eps) {
    const auto start = std::chrono::steady_clock::now();
    const NodeSet candidates = net.actuatable_nodes();
    const int m = static_cast<int>(candidates.size());
    if (K < 0 || K > m) throw Error(Err::Infeasible, "no K-subset of actuatable nodes exists");
    if (binomial(m, K) > 5e5)
        throw Error(Err::EnumerationTooLarge, "too many K-subsets to enumerate");

    GramianCache cache(net, T);
    PlacementResult best;
    bool found = false;
    std::vector<int> idx(K);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        NodeSet S(K);
        for (int i = 0; i < K; ++i) S[i] = candidates[idx[i]];
        if (forward_feasible(net, S, K)) {
            const double value = cache.f_eps(S, eps);
            if (!found || value < best.f_eps) {  // lexicographic ties: first wins
                best.chosen = S;
                best.f_eps = value;
                found = true;
            }
        }
        int i = K - 1;
        while (i >= 0 && idx[i] == m - K + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < K; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) throw Error(Err::Infeasible, "no feasible actuator set of size K");
    try {
        best.f_exact = cache.f_exact(best.chosen);
    } catch (const Error& e) {
        if (e.kind() != Err::SingularGramian) throw;
    }
    best.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return best;
}

PlacementResult random_baseline(const DirectedNetwork& net, int K, double T, double eps,
                                int samples, uint64_t seed) {
    const auto start = std::chrono::steady_clock::now();
    if (samples < 1) throw Error(Err::DomainError, "samples must be >= 1");
    const NodeSet candidates = net.actuatable_nodes();
    const int m = static_cast<int>(candidates.size());
    if (K < 0 || K > m) throw Error(Err::NoFeasibleSample, "no K-subset of actuatable nodes exists");

    GramianCache cache(net, T);
    std::mt19937_64 rng(seed);
    std::vector<int> pool(candidates);
    PlacementResult best;
    bool found = false;
    for (int draw = 0; draw < samples; ++draw) {
        for (int i = 0; i < K; ++i) {
            std::uniform_int_distribution<int> pick(i, m - 1);
            std::swap(pool[i], pool[pick(rng)]);
        }
        NodeSet S = make_node_set({pool.begin(), pool.begin() + K});
        if (!forward_feasible(net, S, K)) continue;
        const double value = cache.f_eps(S, eps);
        if (!found || value < best.f_eps) {
            best.chosen = std::move(S);
            best.f_eps = value;
            found = true;
        }
    }
    if (!found) throw Error(Err::NoFeasibleSample, "every sampled actuator set was infeasible");
    try {
        best.f_exact = cache.f_exact(best.chosen);
    } catch (const Error& e) {
        if (e.kind() != Err::SingularGramian) throw;
    }
    best.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return best;
}

bool randomized_structurally_controllable(const DirectedNetwork& net, const NodeSet& S,
                                          int draws, uint64_t seed) {
    if (draws < 1) throw Error(Err::DomainError, "draws must be >= 1");
    const int n = net.size();
    const int m = static_cast<int>(S.size());
    if (m == 0) return n == 0;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> mag(0.5, 1.5);

    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, m);
    for (int i = 0; i < m; ++i) B(S[i], i) = 1.0;

    for (int d = 0; d < draws; ++d) {
        Eigen::MatrixXd A = net.weights();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (A(i, j) != 0.0) A(i, j) = (A(i, j) > 0 ? 1.0 : -1.0) * mag(rng);
        Eigen::MatrixXd ctrb(n, n * m);
        Eigen::MatrixXd block = B;
        for (int p = 0; p < n; ++p) {
            ctrb.middleCols(p * m, m) = block;
            block = A * block;
        }
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(ctrb);
        const auto& sv = svd.singularValues();
        int rank = 0;
        for (int i = 0; i < sv.size(); ++i)
            if (sv(i) > 1e-9 * sv(0)) ++rank;
        if (rank == n) return true;
    }
    return false;
}

Gramian gramian_quadrature(const DirectedNetwork& net, const NodeSet& S, double T, int steps) {
    if (!(T > 0.0)) throw Error(Err::HorizonNonpositive, "horizon T must be positive");
    if (steps < 16) throw Error(Err::DomainError, "quadrature needs at least 16 steps");
    if (steps % 2 != 0) ++steps;
    const int n = net.size();
    Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(n, n);
    for (int v : S) Q(v, v) = 1.0;
    if (S.empty()) return {std::move(Q), T};

    const Eigen::MatrixXd& A = net.weights();
    const double h = T / steps;
    const Eigen::MatrixXd Eh = (A * h).exp();
    Eigen::MatrixXd Et = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd W = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k <= steps; ++k) {
        const double w = (k == 0 || k == steps) ? 1.0 : (k % 2 ? 4.0 : 2.0);
        W += w * Et * Q * Et.transpose();
        Et = Et * Eh;
    }
    W *= h / 3.0;
    W = 0.5 * (W + W.transpose());
    return {std::move(W), T};
}

namespace {

NodeSet mask_to_set(uint32_t mask) {
    NodeSet s;
    for (int v = 0; mask; ++v, mask >>= 1)
        if (mask & 1) s.push_back(v);
    return s;
}

}  // namespace

FamilyCheck verify_families(const DirectedNetwork& net, int K, int draws, uint64_t seed) {
    const int n = net.size();
    if (n > 12) throw Error(Err::EnumerationTooLarge, "family enumeration limited to n <= 12");
    for (int v = 0; v < n; ++v)
        if (!net.is_actuatable(v))
            throw Error(Err::DomainError, "family verification requires a fully actuatable network");
    const uint32_t count = uint32_t{1} << n;
    const uint32_t full = count - 1;

    // C~_K as a bitmask-indexed family.
    std::vector<char> fwd(count, 0);
    for (uint32_t mask = 0; mask < count; ++mask)
        if (std::popcount(mask) <= K) fwd[mask] = forward_feasible(net, mask_to_set(mask), K);

    FamilyCheck check;

    check.downward_closed = true;
    for (uint32_t mask = 0; mask < count && check.downward_closed; ++mask) {
        if (!fwd[mask]) continue;
        for (uint32_t rem = mask; rem; rem &= rem - 1)
            if (!fwd[mask & ~(rem & -rem)]) {
                check.downward_closed = false;
                break;
            }
    }

    check.augmentation = true;
    for (uint32_t m1 = 0; m1 < count && check.augmentation; ++m1) {
        if (!fwd[m1]) continue;
        for (uint32_t m2 = 0; m2 < count && check.augmentation; ++m2) {
            if (!fwd[m2] || std::popcount(m2) <= std::popcount(m1)) continue;
            bool extended = false;
            for (uint32_t rem = m2 & ~m1; rem && !extended; rem &= rem - 1)
                extended = fwd[m1 | (rem & -rem)];
            if (!extended) check.augmentation = false;
        }
    }

    // Dual family: subsets of complements of maximum independent sets (the
    // feasible K-sets), compared against R~_K membership.
    std::vector<char> dual(count, 0);
    for (uint32_t mask = 0; mask < count; ++mask) {
        if (std::popcount(mask) != K || !fwd[mask]) continue;
        const uint32_t comp = full & ~mask;
        for (uint32_t q = comp;; q = (q - 1) & comp) {
            dual[q] = 1;
            if (q == 0) break;
        }
    }
    check.dual_matches = true;
    for (uint32_t mask = 0; mask < count; ++mask) {
        if (std::popcount(mask) > n - K) {
            if (dual[mask]) check.dual_matches = false;
            continue;
        }
        if (dual[mask] != static_cast<char>(reverse_feasible(net, mask_to_set(mask), K)))
            check.dual_matches = false;
    }

    for (uint32_t mask = 0; mask < count; ++mask) {
        if (std::popcount(mask) != K) continue;
        const bool structural =
            randomized_structurally_controllable(net, mask_to_set(mask), draws, seed ^ mask);
        if (structural != static_cast<bool>(fwd[mask])) ++check.oracle_mismatches;
    }
    return check;
}

SetFunction counterexample_gamma(double delta) {
    if (!(delta > 0.0) || !(delta < 0.25))
        throw Error(Err::DeltaOutOfRange, "delta must lie in (0, 1/4)");
    return {3, [delta](const NodeSet& s) {
                switch (s.size()) {
                    case 0: return 0.0;
                    case 1: return s[0] == 0 ? delta : 2.0 * delta;
                    case 2: return set_contains(s, 0) ? 1.0 : 4.0 * delta;
                    default: return 2.0;
                }
            }};
}

SetFunction counterexample_alpha(int n, int N, double delta) {
    if (!(delta > 0.0)) throw Error(Err::DeltaOutOfRange, "delta must be positive");
    if (!(n > 2 * N) || N < 1)
        throw Error(Err::DimensionConstraintViolated, "need n > 2N >= 2");
    return {n, [N, delta](const NodeSet& s) {
                int in_sbar = 0;
                for (int v : s)
                    if (v < N) ++in_sbar;
                const int size = static_cast<int>(s.size());
                return static_cast<double>(std::min(1 + in_sbar, size)) + delta * size;
            }};
}

}  // namespace actuplace
