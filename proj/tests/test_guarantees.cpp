#include <doctest.h>

#include <cmath>
#include <random>

#include "actuplace/feasibility.hpp"
#include "actuplace/gramian.hpp"
#include "actuplace/guarantees.hpp"
#include "actuplace/oracle.hpp"
#include "support.hpp"

using namespace actuplace;
namespace support = actuplace::testing;

namespace {

SetFunction modular(std::vector<double> weights) {
    const int n = static_cast<int>(weights.size());
    return {n, [w = std::move(weights)](const NodeSet& s) {
                double sum = 0.0;
                for (int v : s) sum += w[v];
                return sum;
            }};
}

MembershipOracle cardinality_matroid(int K) {
    return [K](const NodeSet& s) { return static_cast<int>(s.size()) <= K; };
}

}  // namespace

TEST_CASE("exact ratio and curvature") {
    SUBCASE("modular functions are (1, 0)") {
        RatioCurvature rc = exact_ratio_and_curvature(modular({2, 5, 1, 7}));
        CHECK(rc.gamma == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(rc.alpha == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("vanishing-ratio counterexample: gamma = delta/(2-4delta), alpha = 0") {
        RatioCurvature rc = exact_ratio_and_curvature(counterexample_gamma(0.1));
        CHECK(rc.gamma == doctest::Approx(0.0625).epsilon(1e-12));
        CHECK(rc.alpha == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("weak-curvature counterexample: gamma = 1, alpha = 1/(1+delta)") {
        RatioCurvature rc = exact_ratio_and_curvature(counterexample_alpha(5, 2, 0.1));
        CHECK(std::abs(rc.gamma - 1.0) <= 1e-12);
        CHECK(std::abs(rc.alpha - 1.0 / 1.1) <= 1e-12);
    }
    SUBCASE("ground cap and monotonicity detection") {
        SetFunction big{17, [](const NodeSet&) { return 0.0; }};
        try {
            (void)exact_ratio_and_curvature(big);
            CHECK(false);
        } catch (const Error& e) {
            CHECK(e.kind() == Err::GroundSetTooLarge);
        }
        SetFunction decreasing{3, [](const NodeSet& s) { return -static_cast<double>(s.size()); }};
        try {
            (void)exact_ratio_and_curvature(decreasing);
            CHECK(false);
        } catch (const Error& e) {
            CHECK(e.kind() == Err::NotIncreasing);
        }
    }
}

TEST_CASE("the placement objective has a strictly positive ratio on tiny nets") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 6; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 3);  // up to 5
        DirectedNetwork net = support::random_sc_network(n, rng());
        GramianCache cache(net, 1.0);
        SetFunction f{n, [&](const NodeSet& s) { return -cache.f_eps(s, 1e-3); }};
        RatioCurvature rc = exact_ratio_and_curvature(f);
        CHECK(rc.gamma > 0.0);
        CHECK(rc.alpha < 1.0);
    }
}

TEST_CASE("forward/reverse duality identities") {
    SUBCASE("modular objective") { CHECK(forward_reverse_duality_check(modular({1, 2, 3}))); }
    SUBCASE("4-node example objective at eps = 1e-3") {
        DirectedNetwork net = support::example1_network();
        GramianCache cache(net, 2.0);
        SetFunction f{4, [&](const NodeSet& s) { return -cache.f_eps(s, 1e-3); }};
        CHECK(forward_reverse_duality_check(f));
    }
    SUBCASE("random small instances") {
        std::mt19937_64 rng(103);
        for (int trial = 0; trial < 8; ++trial) {
            const int n = 3 + static_cast<int>(rng() % 4);  // up to 6
            DirectedNetwork net = support::random_sc_network(n, rng());
            GramianCache cache(net, 1.0);
            SetFunction f{n, [&](const NodeSet& s) { return -cache.f_eps(s, 1e-2); }};
            CHECK(forward_reverse_duality_check(f));
        }
    }
    SUBCASE("ground cap") {
        SetFunction big{11, [](const NodeSet& s) { return static_cast<double>(s.size()); }};
        try {
            (void)forward_reverse_duality_check(big);
            CHECK(false);
        } catch (const Error& e) {
            CHECK(e.kind() == Err::GroundSetTooLarge);
        }
    }
}

TEST_CASE("greedy submodularity ratio for forward traces") {
    SUBCASE("modular trace gives 1") {
        SetFunction f = modular({5, 3, 1});
        GreedyTrace trace = forward_greedy(f, cardinality_matroid(2), 2);
        GreedyGamma g = greedy_gamma_forward(f, trace, 2);
        CHECK(g.gamma == doctest::Approx(1.0).epsilon(1e-12));
        CHECK_FALSE(g.approximate);
    }
    SUBCASE("counterexample trace value frozen from enumeration") {
        SetFunction f = counterexample_gamma(0.1);
        GreedyTrace trace = forward_greedy(f, cardinality_matroid(2), 2);
        GreedyGamma g = greedy_gamma_forward(f, trace, 2);
        CHECK(g.gamma == doctest::Approx(0.125).epsilon(1e-12));
    }
    SUBCASE("never below the exact ratio") {
        std::mt19937_64 rng(107);
        for (int trial = 0; trial < 6; ++trial) {
            const int n = 4 + static_cast<int>(rng() % 3);
            DirectedNetwork net = support::random_sc_network(n, rng());
            GramianCache cache(net, 1.0);
            SetFunction f{n, [&](const NodeSet& s) { return -cache.f_eps(s, 1e-3); }};
            const int kmin = min_cardinality(net);
            if (kmin >= n) continue;
            GreedyTrace trace = forward_greedy(
                f, [&](const NodeSet& s) { return forward_feasible(net, s, kmin); }, kmin);
            RatioCurvature exact = exact_ratio_and_curvature(f);
            GreedyGamma g = greedy_gamma_forward(f, trace, kmin);
            CHECK(g.gamma >= exact.gamma - 1e-9);
        }
    }
    SUBCASE("sampling kicks in above the cap") {
        SetFunction f = modular({1, 2, 3, 4, 5, 6, 7, 8});
        GreedyTrace trace = forward_greedy(f, cardinality_matroid(4), 4);
        GreedyGamma g = greedy_gamma_forward(f, trace, 4, 10);
        CHECK(g.approximate);
        CHECK(g.gamma == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("greedy ratio and curvature for reverse traces") {
    SUBCASE("modular trace gives (1, 0)") {
        SetFunction f = modular({5, 3, 1, 4});
        GreedyTrace trace = reverse_greedy(f, cardinality_matroid(2), 2);
        GreedyRatioCurvature rc = greedy_gamma_alpha_reverse(f, trace, 2);
        CHECK(rc.gamma == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(rc.alpha == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("weak-curvature counterexample stays within the exact bounds") {
        SetFunction f = counterexample_alpha(5, 2, 0.1);
        GreedyTrace trace = reverse_greedy(f, cardinality_matroid(2), 2);
        GreedyRatioCurvature rc = greedy_gamma_alpha_reverse(f, trace, 2);
        CHECK(rc.alpha <= 1.0 / 1.1 + 1e-12);
        CHECK(rc.gamma >= 1.0 - 1e-12);
    }
    SUBCASE("orderings against exact values on random instances") {
        std::mt19937_64 rng(109);
        for (int trial = 0; trial < 5; ++trial) {
            const int n = 4 + static_cast<int>(rng() % 3);
            DirectedNetwork net = support::random_sc_network(n, rng());
            GramianCache cache(net, 1.0);
            NodeSet all(n);
            std::iota(all.begin(), all.end(), 0);
            SetFunction f{n, [&](const NodeSet& r) {
                              return cache.f_eps(set_difference(all, r), 1e-3);
                          }};
            const int kmin = min_cardinality(net);
            const int N = n - kmin;
            if (N < 1) continue;
            GreedyTrace trace = reverse_greedy(
                f, [&](const NodeSet& r) { return reverse_feasible(net, r, kmin); }, N);
            RatioCurvature exact = exact_ratio_and_curvature(f);
            GreedyRatioCurvature rc = greedy_gamma_alpha_reverse(f, trace, N);
            CHECK(rc.gamma >= exact.gamma - 1e-9);
            CHECK(rc.alpha <= exact.alpha + 1e-9);
        }
    }
}

TEST_CASE("4-node example constants, frozen from an independent enumeration") {
    DirectedNetwork net = support::example1_network();
    GramianCache cache(net, 2.0);
    const double eps = 1e-3;
    SetFunction fwd{4, [&](const NodeSet& s) { return -cache.f_eps(s, eps); }};
    RatioCurvature rf = exact_ratio_and_curvature(fwd);
    CHECK(rf.gamma == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(rf.alpha == doctest::Approx(0.999284792175).epsilon(1e-9));

    NodeSet all{0, 1, 2, 3};
    SetFunction rev{4, [&](const NodeSet& r) { return cache.f_eps(set_difference(all, r), eps); }};
    RatioCurvature rr = exact_ratio_and_curvature(rev);
    CHECK(rr.gamma == doctest::Approx(0.000715207825).epsilon(1e-9));
    CHECK(rr.alpha == doctest::Approx(0.0).epsilon(1e-10));

    PlacementResult solved = solve_reverse(net, 2, 2.0, eps);
    GreedyRatioCurvature rc = greedy_gamma_alpha_reverse(rev, solved.trace, 2);
    CHECK(rc.gamma == doctest::Approx(0.00893860790066).epsilon(1e-9));
    CHECK(rc.alpha == doctest::Approx(0.0).epsilon(1e-10));

    PlacementResult fsolved = solve_forward(net, 2, 2.0, eps);
    GreedyGamma gg = greedy_gamma_forward(fwd, fsolved.trace, 2);
    CHECK(gg.gamma == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("ex-post bounds hold with exact and with greedy-variant constants") {
    std::mt19937_64 rng(127);
    int done = 0;
    while (done < 5) {
        const int n = 4 + static_cast<int>(rng() % 2);
        DirectedNetwork net = support::random_sc_network(n, rng());
        const int kmin = min_cardinality(net);
        if (kmin >= n) continue;
        const int K = kmin;
        const int N = n - K;
        const double eps = 1e-3;
        GramianCache cache(net, 1.0);
        PlacementResult best = brute_force_optimal(net, K, 1.0, eps);
        PlacementResult fwd = solve_forward(net, K, 1.0, eps);
        PlacementResult rev = solve_reverse(net, K, 1.0, eps);

        SetFunction f_fwd{n, [&](const NodeSet& s) { return -cache.f_eps(s, eps); }};
        const double f_empty = -cache.f_eps({}, eps);
        RatioCurvature exact = exact_ratio_and_curvature(f_fwd);
        GreedyGamma gfg = greedy_gamma_forward(f_fwd, fwd.trace, K);
        for (double gamma : {exact.gamma, gfg.gamma}) {
            GuaranteeReport r =
                evaluate_forward_guarantee(f_empty, -fwd.f_eps, -best.f_eps, gamma);
            CHECK(r.holds);
        }

        NodeSet all(n);
        std::iota(all.begin(), all.end(), 0);
        SetFunction f_rev{n, [&](const NodeSet& r) {
                              return cache.f_eps(set_difference(all, r), eps);
                          }};
        RatioCurvature exact_rev = exact_ratio_and_curvature(f_rev);
        GreedyRatioCurvature rc = greedy_gamma_alpha_reverse(f_rev, rev.trace, N);
        const double f_full = cache.f_eps(all, eps);
        for (auto [g, a] : {std::pair{exact_rev.gamma, exact_rev.alpha},
                            std::pair{rc.gamma, rc.alpha}}) {
            if (!(g > 0.0) || !(a < 1.0)) continue;
            GuaranteeReport r =
                evaluate_reverse_guarantee(f_full, rev.f_eps, best.f_eps, g, a, N);
            CHECK(r.holds);
        }
        ++done;
    }
}

TEST_CASE("reverse bound closed forms") {
    // Frozen from an independent evaluation of the bound formulas.
    CHECK(z_bar(20, 0.9, 0.1) == doctest::Approx(4.872684).epsilon(1e-5));
    CHECK(z_u(20, 0.9, 0.1) == doctest::Approx(5.234808).epsilon(1e-5));
    CHECK(z_bar(100, 0.9, 0.1) == doctest::Approx(7.875758).epsilon(1e-5));
    CHECK(z_u(100, 0.9, 0.1) == doctest::Approx(8.321588).epsilon(1e-5));
    CHECK(z_bar(20, 0.99, 0.1) == doctest::Approx(4.068988).epsilon(1e-5));
    CHECK(z_u(20, 0.99, 0.1) == doctest::Approx(4.213385).epsilon(1e-5));
    CHECK(z_u(20, 1.0, 0.1) == doctest::Approx(std::log(41.0) / 0.9).epsilon(1e-10));
    CHECK(z_bar(2, 1.0, 1.0 / 1.1) == doctest::Approx(16.5).epsilon(1e-10));

    SUBCASE("harmonic branch is the continuous limit of the product form") {
        for (int N : {3, 20}) {
            for (double alpha : {0.0, 0.4}) {
                CHECK(z_bar(N, 1.0 - 1e-9, alpha) ==
                      doctest::Approx(z_bar(N, 1.0, alpha)).epsilon(1e-6));
                CHECK(z_u(N, 1.0 - 1e-9, alpha) ==
                      doctest::Approx(z_u(N, 1.0, alpha)).epsilon(1e-6));
            }
        }
    }
    SUBCASE("domain errors") {
        for (auto [N, g, a] : {std::tuple{0, 0.5, 0.0}, std::tuple{2, 0.0, 0.0},
                               std::tuple{2, 1.1, 0.0}, std::tuple{2, 0.5, 1.0},
                               std::tuple{2, 0.5, -0.1}}) {
            try {
                (void)z_bar(N, g, a);
                CHECK(false);
            } catch (const Error& e) {
                CHECK(e.kind() == Err::DomainError);
            }
            try {
                (void)z_u(N, g, a);
                CHECK(false);
            } catch (const Error& e) {
                CHECK(e.kind() == Err::DomainError);
            }
        }
    }
}

TEST_CASE("bound grid invariants") {
    for (int N = 1; N <= 100; ++N) {
        for (double gamma = 0.1; gamma <= 1.0001; gamma += 0.1) {
            const double g = std::min(gamma, 1.0);
            for (double alpha = 0.0; alpha <= 0.9001; alpha += 0.1) {
                const double zb = z_bar(N, g, alpha);
                const double zu = z_u(N, g, alpha);
                CHECK(zb <= zu + 1e-9 * zu);
                CHECK(zb >= 1.0 - 1e-12);
                CHECK(zu >= 1.0 - 1e-12);
                // Monotonicity: nondecreasing in N and alpha, nonincreasing in gamma.
                if (N > 1) CHECK(z_u(N - 1, g, alpha) <= zu + 1e-12);
                if (alpha > 0.05) CHECK(z_u(N, g, alpha - 0.1) <= zu + 1e-9 * zu);
                if (g < 0.95) CHECK(z_u(N, std::min(1.0, g + 0.1), alpha) <= zu + 1e-9 * zu);
            }
        }
    }
    CHECK(z_bar(1, 1.0, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("forward guarantee evaluation") {
    SUBCASE("boundary of the submodular case") {
        GuaranteeReport r = evaluate_forward_guarantee(0.0, 1.0, 2.0, 1.0);
        CHECK(r.lhs == doctest::Approx(0.5));
        CHECK(r.rhs == doctest::Approx(0.5));
        CHECK(r.holds);
    }
    SUBCASE("counterexample in maximization form with its exact ratio") {
        SetFunction f = counterexample_gamma(0.1);
        GreedyTrace trace = forward_greedy(f, cardinality_matroid(2), 2);
        const double f_greedy = f(trace.final_set);
        double f_opt = f_greedy;
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b) f_opt = std::max(f_opt, f({a, b}));
        GuaranteeReport r = evaluate_forward_guarantee(f({}), f_greedy, f_opt, 0.0625);
        CHECK(r.rhs == doctest::Approx(std::pow(0.0625, 3) / (std::pow(0.0625, 3) + 1.0)));
        CHECK(r.holds);  // greedy is optimal for the maximization reading
    }
    SUBCASE("ordering violations are rejected") {
        try {
            (void)evaluate_forward_guarantee(0.0, 2.0, 1.0, 0.5);
            CHECK(false);
        } catch (const Error& e) {
            CHECK(e.kind() == Err::OrderingViolated);
        }
    }
}

TEST_CASE("reverse guarantee evaluation") {
    SUBCASE("modular exclusion is optimal and Z_u is at least 1") {
        GuaranteeReport r = evaluate_reverse_guarantee(0.0, 1.0, 1.0, 1.0, 0.0, 3);
        CHECK(r.lhs == doctest::Approx(1.0));
        CHECK(r.rhs >= 1.0);
        CHECK(r.holds);
    }
    SUBCASE("weak-curvature counterexample regression") {
        // Enumerated before the build: ratio 2.2/1.2 vs Z_u(2, 1, 1/1.1) = 11 ln 5;
        // the inequality holds with room to spare.
        SetFunction f = counterexample_alpha(5, 2, 0.1);
        GreedyTrace trace = reverse_greedy(f, cardinality_matroid(2), 2);
        GreedyRatioCurvature rc = greedy_gamma_alpha_reverse(f, trace, 2);
        GuaranteeReport r =
            evaluate_reverse_guarantee(f({}), f(trace.final_set), f({3, 4}), rc.gamma, rc.alpha, 2);
        CHECK(r.lhs == doctest::Approx(2.2 / 1.2).epsilon(1e-12));
        CHECK(r.rhs == doctest::Approx(17.703817036775103).epsilon(1e-9));
        CHECK(r.holds);
        // Greedy/optimal ratio matches the closed form (N + dN)/(1 + dN).
        CHECK(r.lhs == doctest::Approx((2.0 + 0.2) / (1.0 + 0.2)).epsilon(1e-12));
    }
    SUBCASE("ordering violations are rejected") {
        try {
            (void)evaluate_reverse_guarantee(1.0, 0.5, 2.0, 1.0, 0.0, 2);
            CHECK(false);
        } catch (const Error& e) {
            CHECK(e.kind() == Err::OrderingViolated);
        }
    }
}
