#include "actuplace/epsilon.hpp"

#include "actuplace/gramian.hpp"

namespace actuplace {

EpsilonRun proper_epsilon(const DirectedNetwork& net, int K, double T, double xi, double eps0,
                          Direction method, const GreedyOptions& opts) {
    if (!(xi > 0.0)) throw Error(Err::NonpositiveParameter, "xi must be positive");
    if (!(eps0 > 0.0)) throw Error(Err::NonpositiveParameter, "eps0 must be positive");

    const int max_iterations = 60;
    GramianCache cache(net, T);

    EpsilonRun run;
    run.xi = xi;
    double eps = eps0;
    for (int i = 0; i <= max_iterations; ++i) {
        EpsilonIteration iter;
        iter.eps = eps;
        iter.result = method == Direction::forward ? solve_forward(net, K, T, eps, opts)
                                                   : solve_reverse(net, K, T, eps, opts);
        iter.lambda1 = cache.lambda_min(iter.result.chosen);
        run.iterations.push_back(iter);

        const double scale = cache.sum(iter.result.chosen).norm();
        if (iter.lambda1 <= 1e-14 * scale)
            throw Error(Err::SingularGramianEncountered,
                        "greedy set has a numerically singular Gramian at eps = " +
                            std::to_string(eps));
        if (eps < xi * iter.lambda1) {
            run.final_eps = eps;
            run.final_result = iter.result;
            run.f_eps = iter.result.f_eps;
            run.f_exact = cache.f_exact(iter.result.chosen);
            run.guarantee_holds = run.f_exact < (1.0 + xi) * run.f_eps;
            return run;
        }
        eps = 0.5 * xi * iter.lambda1;
    }
    throw Error(Err::SingularGramianEncountered,
                "eps iteration cap reached without satisfying the termination test");
}

}  // namespace actuplace
