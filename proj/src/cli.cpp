#include "actuplace/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "actuplace/epsilon.hpp"
#include "actuplace/feasibility.hpp"
#include "actuplace/gramian.hpp"
#include "actuplace/greedy.hpp"
#include "actuplace/guarantees.hpp"
#include "actuplace/oracle.hpp"
#include "actuplace/report.hpp"

namespace actuplace {

namespace {

struct NetworkInput {
    DirectedNetwork net;
    std::string digest;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Err::MalformedInput, "cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

NetworkInput load_network(const std::string& path) {
    const std::string text = read_file(path);
    return {parse_network(text), content_digest(text)};
}

// Comma-separated node list given as input labels (1-based by default).
NodeSet parse_node_list(const DirectedNetwork& net, const std::string& text) {
    NodeSet out;
    std::istringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) {
        if (token.empty()) continue;
        int node = -1;
        if (net.has_custom_labels()) {
            for (int v = 0; v < net.size(); ++v)
                if (net.label(v) == token) {
                    node = v;
                    break;
                }
        }
        if (node < 0) {
            try {
                node = std::stoi(token) - 1;
            } catch (const std::exception&) {
                throw Error(Err::MalformedInput, "unknown node '" + token + "'");
            }
        }
        if (node < 0 || node >= net.size())
            throw Error(Err::DimensionMismatch, "node '" + token + "' out of range");
        out.push_back(node);
    }
    return make_node_set(std::move(out));
}

std::string echo_command(int argc, const char* const* argv) {
    std::string cmd;
    for (int i = 0; i < argc; ++i) {
        if (i) cmd += ' ';
        cmd += argv[i];
    }
    return cmd;
}

int default_jobs() {
    if (const char* env = std::getenv("ACTUPLACE_JOBS")) {
        const int jobs = std::atoi(env);
        if (jobs >= 1) return jobs;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

void emit(const ordered_json& report, const std::string& out_path, std::ostream& out) {
    const std::string text = report.dump(2);
    if (!out_path.empty()) {
        std::ofstream file(out_path);
        if (!file) throw Error(Err::MalformedInput, "cannot write file: " + out_path);
        file << text << '\n';
    }
    out << text << '\n';
}

int exit_code_for(Err kind) {
    switch (kind) {
        case Err::InfeasibleAtSize:
        case Err::KBelowMinimum:
        case Err::Infeasible:
        case Err::NoFeasibleSample:
            return 1;
        default:
            return 2;
    }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"actuator placement under structural controllability"};
    app.require_subcommand(1);

    const OracleConfig defaults;
    std::string net_path, out_path, method = "forward", set_text, degrees_text;
    std::string buses_path, branches_path;
    int K = 0;
    double T = 1.0, eps = 1e-9, xi = 2.0, eps0 = 1e-3;
    uint64_t seed = defaults.seed;
    int samples = defaults.samples, jobs = default_jobs(), draws = defaults.weight_draws;
    long cap = 200000;

    auto add_net = [&](CLI::App* cmd) {
        cmd->add_option("--net", net_path, "network JSON file")->required();
    };
    auto add_jobs = [&](CLI::App* cmd) {
        cmd->add_option("--jobs", jobs, "worker threads for marginal-gain evaluation");
    };

    auto* gen = app.add_subcommand("gen", "generate a degree-sequence graph");
    gen->add_option("--degrees", degrees_text, "comma-separated degree sequence")->required();
    gen->add_option("--seed", seed, "RNG seed");
    gen->add_option("--out", out_path, "write network JSON here as well");

    auto* swing = app.add_subcommand("swing", "build a linearized swing-equation model");
    swing->add_option("--buses", buses_path, "buses.csv (id,M,D,injectable)")->required();
    swing->add_option("--branches", branches_path, "branches.csv (from,to,b)")->required();
    swing->add_option("--out", out_path, "write network JSON here as well");

    auto* mink = app.add_subcommand("min-k", "minimum actuator count for structural controllability");
    add_net(mink);
    mink->add_option("--out", out_path, "write report here as well");

    auto* checkf = app.add_subcommand("check-forward", "membership test for C~_K");
    add_net(checkf);
    checkf->add_option("--k", K, "cardinality limit")->required();
    checkf->add_option("--set", set_text, "comma-separated actuator nodes")->required();
    checkf->add_option("--out", out_path, "write report here as well");

    auto* checkr = app.add_subcommand("check-reverse", "membership test for R~_K");
    add_net(checkr);
    checkr->add_option("--k", K, "cardinality limit")->required();
    checkr->add_option("--set", set_text, "comma-separated excluded nodes")->required();
    checkr->add_option("--out", out_path, "write report here as well");

    auto* solve = app.add_subcommand("solve", "choose an actuator set");
    add_net(solve);
    solve->add_option("--k", K, "actuator budget")->required();
    solve->add_option("--t", T, "Gramian horizon");
    solve->add_option("--eps", eps, "metric-modifying parameter");
    solve->add_option("--method", method, "forward|reverse|brute|random");
    solve->add_option("--samples", samples, "draws for --method random");
    solve->add_option("--seed", seed, "RNG seed for --method random");
    add_jobs(solve);
    solve->add_option("--out", out_path, "write report here as well");

    auto* epscmd = app.add_subcommand("epsilon", "pick eps with the provable-performance iteration");
    add_net(epscmd);
    epscmd->add_option("--k", K, "actuator budget")->required();
    epscmd->add_option("--t", T, "Gramian horizon");
    epscmd->add_option("--xi", xi, "approximation factor");
    epscmd->add_option("--eps0", eps0, "initial eps");
    epscmd->add_option("--method", method, "forward|reverse");
    add_jobs(epscmd);
    epscmd->add_option("--out", out_path, "write report here as well");

    auto* guar = app.add_subcommand("guarantee", "ex-post performance guarantee report");
    add_net(guar);
    guar->add_option("--k", K, "actuator budget")->required();
    guar->add_option("--t", T, "Gramian horizon");
    guar->add_option("--eps", eps, "metric-modifying parameter");
    guar->add_option("--method", method, "forward|reverse");
    guar->add_option("--cap", cap, "inequality enumeration cap");
    guar->add_option("--seed", seed, "sampling seed above the cap");
    add_jobs(guar);
    guar->add_option("--out", out_path, "write report here as well");

    auto* table1 = app.add_subcommand("table1", "reverse-greedy bound comparison table (CSV)");
    table1->add_option("--out", out_path, "write CSV here as well");

    auto* verify = app.add_subcommand("verify", "oracle-equivalence suite for a network");
    add_net(verify);
    verify->add_option("--draws", draws, "weight draws for the randomized oracle");
    verify->add_option("--seed", seed, "RNG seed");
    verify->add_option("--out", out_path, "write report here as well");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        err << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    const std::string command = echo_command(argc, argv);
    try {
        if (*gen) {
            std::vector<int> degrees;
            std::istringstream in(degrees_text);
            std::string token;
            while (std::getline(in, token, ','))
                if (!token.empty()) degrees.push_back(std::stoi(token));
            const DirectedNetwork net = generate_by_degrees(degrees, seed);
            const std::string text = network_to_json(net);
            if (!out_path.empty()) {
                std::ofstream file(out_path);
                file << text << '\n';
            }
            out << text << '\n';
            err << "generated " << net.size() << "-node graph with " << net.edge_count() / 2
                << " undirected edges\n";
            return 0;
        }
        if (*swing) {
            const DirectedNetwork net =
                load_swing_csv(read_file(buses_path), read_file(branches_path));
            const std::string text = network_to_json(net);
            if (!out_path.empty()) {
                std::ofstream file(out_path);
                file << text << '\n';
            }
            out << text << '\n';
            err << "swing model with " << net.size() << " states\n";
            return 0;
        }
        if (*mink) {
            auto [net, digest] = load_network(net_path);
            ordered_json report;
            report["command"] = command;
            report["input_digest"] = digest;
            report["k_min"] = min_cardinality(net);
            emit(report, out_path, out);
            err << "k_min = " << report["k_min"] << '\n';
            return 0;
        }
        if (*checkf || *checkr) {
            auto [net, digest] = load_network(net_path);
            const NodeSet set = parse_node_list(net, set_text);
            const bool feasible =
                *checkf ? forward_feasible(net, set, K) : reverse_feasible(net, set, K);
            ordered_json report;
            report["command"] = command;
            report["input_digest"] = digest;
            report["k"] = K;
            report["set"] = node_set_json(net, set);
            report["feasible"] = feasible;
            emit(report, out_path, out);
            err << (feasible ? "feasible" : "infeasible") << '\n';
            return 0;
        }
        if (*solve) {
            auto [net, digest] = load_network(net_path);
            GreedyOptions opts{jobs, {}};
            PlacementResult result;
            if (method == "forward")
                result = solve_forward(net, K, T, eps, opts);
            else if (method == "reverse")
                result = solve_reverse(net, K, T, eps, opts);
            else if (method == "brute")
                result = brute_force_optimal(net, K, T, eps);
            else if (method == "random")
                result = random_baseline(net, K, T, eps, samples, seed);
            else
                throw Error(Err::UnknownCommand, "unknown method '" + method + "'");
            ordered_json report;
            report["command"] = command;
            report["input_digest"] = digest;
            report["k"] = K;
            report["t"] = T;
            report["eps"] = eps;
            report["method"] = method;
            if (method == "random") {
                report["samples"] = samples;
                report["seed"] = seed;
            }
            report["placement"] = placement_json(net, result);
            emit(report, out_path, out);
            err << "chosen " << node_set_json(net, result.chosen).dump()
                << "  f_eps=" << result.f_eps << "  (" << result.wall_time << " s)\n";
            return 0;
        }
        if (*epscmd) {
            auto [net, digest] = load_network(net_path);
            const Direction dir = method == "reverse" ? Direction::reverse : Direction::forward;
            if (method != "forward" && method != "reverse")
                throw Error(Err::UnknownCommand, "unknown method '" + method + "'");
            const EpsilonRun run = proper_epsilon(net, K, T, xi, eps0, dir, {jobs, {}});
            ordered_json report;
            report["command"] = command;
            report["input_digest"] = digest;
            report["k"] = K;
            report["t"] = T;
            report["xi"] = xi;
            report["eps0"] = eps0;
            report["method"] = method;
            report["epsilon_run"] = epsilon_run_json(net, run);
            emit(report, out_path, out);
            err << "final eps = " << run.final_eps << " after " << run.iterations.size()
                << " iterations; F < (1+xi) F_eps " << (run.guarantee_holds ? "holds" : "FAILS")
                << '\n';
            return 0;
        }
        if (*guar) {
            auto [net, digest] = load_network(net_path);
            if (method != "forward" && method != "reverse")
                throw Error(Err::UnknownCommand, "unknown method '" + method + "'");
            GreedyOptions opts{jobs, {}};
            GramianCache cache(net, T);
            const NodeSet candidates = net.actuatable_nodes();
            const PlacementResult optimal = brute_force_optimal(net, K, T, eps);
            const double f_eps_empty = cache.f_eps({}, eps);
            const double f_eps_full = cache.f_eps(candidates, eps);

            ordered_json report;
            report["command"] = command;
            report["input_digest"] = digest;
            report["k"] = K;
            report["t"] = T;
            report["eps"] = eps;
            report["method"] = method;
            report["optimal"] = placement_json(net, optimal);

            if (method == "forward") {
                const PlacementResult result = solve_forward(net, K, T, eps, opts);
                SetFunction objective{net.size(),
                                      [&](const NodeSet& S) { return -cache.f_eps(S, eps); }};
                const GreedyGamma gfg =
                    greedy_gamma_forward(objective, result.trace, K, cap, seed);
                GuaranteeReport g = evaluate_forward_guarantee(-f_eps_empty, -result.f_eps,
                                                               -optimal.f_eps, gfg.gamma);
                g.is_greedy_variant = true;
                report["placement"] = placement_json(net, result);
                report["gamma_fg"] = gfg.gamma;
                report["gamma_fg_approximate"] = gfg.approximate;
                // Condition (a) ranges over all K-subsets, feasible or not.
                report["gamma_fg_family_a"] = "all K-subsets";
                report["guarantee"] = guarantee_json(g);
                const double g3 = std::pow(gfg.gamma, 3);
                report["eq10_lhs"] = result.f_eps;
                report["eq10_rhs"] = f_eps_empty / (g3 + 1.0) + g3 * optimal.f_eps / (g3 + 1.0);
                emit(report, out_path, out);
                err << "forward guarantee " << (g.holds ? "holds" : "FAILS") << '\n';
            } else {
                const PlacementResult result = solve_reverse(net, K, T, eps, opts);
                SetFunction objective{net.size(), [&](const NodeSet& R) {
                                          return cache.f_eps(set_difference(candidates, R), eps);
                                      }};
                const int N = static_cast<int>(candidates.size()) - K;
                const GreedyRatioCurvature rc =
                    greedy_gamma_alpha_reverse(objective, result.trace, N, cap, seed);
                const NodeSet opt_excl = set_difference(candidates, optimal.chosen);
                GuaranteeReport g =
                    evaluate_reverse_guarantee(f_eps_full, result.f_eps, optimal.f_eps,
                                               rc.gamma, rc.alpha, N);
                g.is_greedy_variant = true;
                report["placement"] = placement_json(net, result);
                report["gamma_rg"] = rc.gamma;
                report["alpha_rg"] = rc.alpha;
                report["approximate"] = rc.approximate;
                report["z_bar"] = z_bar(N, rc.gamma, rc.alpha);
                report["z_u"] = z_u(N, rc.gamma, rc.alpha);
                report["guarantee"] = guarantee_json(g);
                const double zu = g.rhs;
                report["eq20_lhs"] = result.f_eps;
                report["eq20_rhs"] = zu * optimal.f_eps + (1.0 - zu) * f_eps_full;
                report["excluded"] = node_set_json(net, result.trace.final_set);
                report["optimal_exclusions"] = node_set_json(net, opt_excl);
                emit(report, out_path, out);
                err << "reverse guarantee " << (g.holds ? "holds" : "FAILS") << '\n';
            }
            return 0;
        }
        if (*table1) {
            std::ostringstream csv;
            csv << "N,gamma,alpha,z_bar,z_u\n";
            const std::tuple<int, double, double> rows[] = {
                {20, 0.9, 0.1}, {100, 0.9, 0.1}, {20, 0.99, 0.1}};
            for (auto [N, g, a] : rows)
                csv << N << ',' << format_csv_number(g) << ',' << format_csv_number(a) << ','
                    << format_csv_number(z_bar(N, g, a)) << ',' << format_csv_number(z_u(N, g, a))
                    << '\n';
            if (!out_path.empty()) {
                std::ofstream file(out_path);
                file << csv.str();
            }
            out << csv.str();
            return 0;
        }
        if (*verify) {
            auto [net, digest] = load_network(net_path);
            if (net.size() > 10)
                throw Error(Err::EnumerationTooLarge, "verify is limited to n <= 10");
            ordered_json report;
            report["command"] = command;
            report["input_digest"] = digest;
            ordered_json per_k = ordered_json::array();
            int violations = 0;
            const int kmin = min_cardinality(net);
            for (int k = kmin; k <= net.size(); ++k) {
                const FamilyCheck check = verify_families(net, k, draws, seed);
                ordered_json entry;
                entry["k"] = k;
                entry["downward_closed"] = check.downward_closed;
                entry["augmentation"] = check.augmentation;
                entry["dual_matches"] = check.dual_matches;
                entry["oracle_mismatches"] = check.oracle_mismatches;
                per_k.push_back(std::move(entry));
                if (!check.ok()) ++violations;
            }
            report["k_min"] = kmin;
            report["checks"] = std::move(per_k);
            report["violations"] = violations;
            emit(report, out_path, out);
            err << (violations == 0 ? "all checks passed" : "VIOLATIONS FOUND") << '\n';
            return violations == 0 ? 0 : 1;
        }
        throw Error(Err::UnknownCommand, "no subcommand selected");
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace actuplace
