#pragma once

#include <cstdint>

#include "actuplace/gramian.hpp"
#include "actuplace/greedy.hpp"

namespace actuplace {

struct OracleConfig {
    uint64_t seed = 1;
    int weight_draws = 7;      // random instantiations per structural test
    int samples = 10000;       // random-baseline draws
    int quadrature_steps = 256;
};

/// Exhaustive optimum of F_eps over feasible K-sets of actuatable nodes;
/// ties break lexicographically.  Throws EnumerationTooLarge above 5e5
/// candidate sets, Infeasible when no K-set passes the feasibility check.
PlacementResult brute_force_optimal(const DirectedNetwork& net, int K, double T, double eps);

/// Best feasible set among `samples` uniform K-subsets of actuatable nodes.
PlacementResult random_baseline(const DirectedNetwork& net, int K, double T, double eps,
                                int samples, uint64_t seed);

/// Generic-rank test: redraws nonzero weights of A uniformly in
/// [0.5, 1.5]*sign and checks rank of [B, AB, ..., A^{n-1}B]; true iff any
/// draw is controllable.
bool randomized_structurally_controllable(const DirectedNetwork& net, const NodeSet& S,
                                          int draws, uint64_t seed);

/// Composite-Simpson quadrature of the Gramian integrand; the independent
/// oracle for the block-exponential method.
Gramian gramian_quadrature(const DirectedNetwork& net, const NodeSet& S, double T, int steps);

/// Enumeration checks of the feasibility families at one cardinality limit:
/// matroid axioms for C~_K, equality of R~_K with the dual family, and
/// agreement of the matching oracle with the randomized controllability test
/// at |S| = K.  Ground set must be small (n <= 12) and fully actuatable.
struct FamilyCheck {
    bool downward_closed = false;
    bool augmentation = false;
    bool dual_matches = false;
    int oracle_mismatches = 0;

    bool ok() const { return downward_closed && augmentation && dual_matches && oracle_mismatches == 0; }
};

FamilyCheck verify_families(const DirectedNetwork& net, int K, int draws, uint64_t seed);

/// Three-node function with vanishing submodularity ratio:
/// f({v1})=d, f({v2})=f({v3})=2d, f({v2,v3})=4d, f({v1,v2})=f({v1,v3})=1, f(V)=2.
SetFunction counterexample_gamma(double delta);

/// f(S) = min{1+|S n S_bar|, |S|} + delta|S| with S_bar = {v1..vN}; submodular
/// with curvature 1/(1+delta).
SetFunction counterexample_alpha(int n, int N, double delta);

}  // namespace actuplace
