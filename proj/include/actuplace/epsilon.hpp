#pragma once

#include "actuplace/greedy.hpp"

namespace actuplace {

struct EpsilonIteration {
    double eps = 0.0;
    PlacementResult result;
    double lambda1 = 0.0;  // smallest Gramian eigenvalue of the chosen set
};

struct EpsilonRun {
    double xi = 0.0;
    std::vector<EpsilonIteration> iterations;
    double final_eps = 0.0;
    PlacementResult final_result;
    double f_exact = 0.0;   // F of the final set
    double f_eps = 0.0;     // F_eps of the final set at final_eps
    bool guarantee_holds = false;  // F < (1+xi) F_eps
};

/// Iterates the greedy solver, halving eps via eps_{i+1} = xi*lambda1/2 until
/// eps_i < xi*lambda1(S_{eps_i}); the returned pair satisfies
/// F(S_eps) < (1+xi) F_eps(S_eps).
EpsilonRun proper_epsilon(const DirectedNetwork& net, int K, double T, double xi, double eps0,
                          Direction method, const GreedyOptions& opts = {});

}  // namespace actuplace
