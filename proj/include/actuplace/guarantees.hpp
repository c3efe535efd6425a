#pragma once

#include <cstdint>

#include "actuplace/greedy.hpp"

namespace actuplace {

struct RatioCurvature {
    double gamma = 1.0;
    double alpha = 0.0;
};

/// Exact submodularity ratio and curvature by exhaustive enumeration of
/// gamma rho_v(S u U) <= rho_v(S) <= rho_v(S u U)/(1-alpha) over all
/// (S, U, v).  Ground size <= 16; throws NotIncreasing if some marginal gain
/// is negative.
RatioCurvature exact_ratio_and_curvature(const SetFunction& f);

/// Checks gamma^r = 1 - alpha^f and alpha^r = 1 - gamma^f between the forward
/// objective f and its reflection r(R) = -f(V\R), by enumeration (ground <= 10).
bool forward_reverse_duality_check(const SetFunction& f);

struct GreedyGamma {
    double gamma = 1.0;
    bool approximate = false;  // condition family sampled instead of enumerated
};

/// Greedy submodularity ratio for a forward trace: the largest gamma-hat
/// satisfying the three trace-anchored inequality families.  Family (a)
/// quantifies over all K-subsets; above enumeration_cap it is sampled.
GreedyGamma greedy_gamma_forward(const SetFunction& f, const GreedyTrace& trace, int K,
                                 long enumeration_cap = 200000, uint64_t seed = 20231u);

struct GreedyRatioCurvature {
    double gamma = 1.0;
    double alpha = 0.0;
    bool approximate = false;
};

/// Greedy submodularity ratio and curvature for a reverse trace.
GreedyRatioCurvature greedy_gamma_alpha_reverse(const SetFunction& f, const GreedyTrace& trace,
                                                int N, long enumeration_cap = 200000,
                                                uint64_t seed = 20231u);

/// Tight-recursion reverse-greedy bound: product form for gamma < 1,
/// harmonic closed form at gamma = 1.
double z_bar(int N, double gamma, double alpha);

/// Closed-form relaxation of z_bar: gamma/(1-gamma) ((2N+1)^{(1-gamma)/(gamma(1-alpha))} - 1),
/// ln(2N+1)/(1-alpha) at gamma = 1.
double z_u(int N, double gamma, double alpha);

struct GuaranteeReport {
    Direction direction = Direction::forward;
    double gamma = 1.0;
    double alpha = 0.0;
    bool is_greedy_variant = false;
    double bound_value = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

/// Forward guarantee (maximization form):
/// (f_greedy - f_empty)/(f_opt - f_empty) >= gamma^3/(gamma^3 + 1).
GuaranteeReport evaluate_forward_guarantee(double f_empty, double f_greedy, double f_opt,
                                           double gamma);

/// Reverse guarantee (exclusion/minimization form):
/// (f_greedy_excl - f_empty)/(f_opt_excl - f_empty) <= z_u(N, gamma, alpha).
GuaranteeReport evaluate_reverse_guarantee(double f_empty, double f_greedy_excl,
                                           double f_opt_excl, double gamma, double alpha, int N);

}  // namespace actuplace
