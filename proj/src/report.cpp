#include "actuplace/report.hpp"

#include <cstdio>

namespace actuplace {

ordered_json node_json(const DirectedNetwork& net, int v) {
    if (net.has_custom_labels()) return net.label(v);
    return v + 1;
}

ordered_json node_set_json(const DirectedNetwork& net, const NodeSet& s) {
    ordered_json arr = ordered_json::array();
    for (int v : s) arr.push_back(node_json(net, v));
    return arr;
}

ordered_json trace_json(const DirectedNetwork& net, const GreedyTrace& trace) {
    ordered_json out;
    out["direction"] = trace.direction == Direction::forward ? "forward" : "reverse";
    ordered_json picks = ordered_json::array();
    for (const auto& pick : trace.picks) {
        ordered_json p;
        p["iteration"] = pick.iteration;
        p["node"] = node_json(net, pick.node);
        p["gain"] = pick.gain;
        p["rejected"] = node_set_json(net, pick.rejected);
        picks.push_back(std::move(p));
    }
    out["picks"] = std::move(picks);
    out["final_set"] = node_set_json(net, trace.final_set);
    out["objective_values"] = trace.objective_values;
    return out;
}

ordered_json placement_json(const DirectedNetwork& net, const PlacementResult& result) {
    ordered_json out;
    out["chosen"] = node_set_json(net, result.chosen);
    out["f_eps"] = result.f_eps;
    if (result.f_exact)
        out["f_exact"] = *result.f_exact;
    else
        out["f_exact"] = nullptr;
    out["trace"] = trace_json(net, result.trace);
    out["wall_time"] = result.wall_time;
    return out;
}

ordered_json guarantee_json(const GuaranteeReport& report) {
    ordered_json out;
    out["direction"] = report.direction == Direction::forward ? "forward" : "reverse";
    out["gamma"] = report.gamma;
    out["alpha"] = report.alpha;
    out["is_greedy_variant"] = report.is_greedy_variant;
    out["bound_value"] = report.bound_value;
    out["lhs"] = report.lhs;
    out["rhs"] = report.rhs;
    out["holds"] = report.holds;
    return out;
}

ordered_json epsilon_run_json(const DirectedNetwork& net, const EpsilonRun& run) {
    ordered_json out;
    out["xi"] = run.xi;
    ordered_json iterations = ordered_json::array();
    for (const auto& iter : run.iterations) {
        ordered_json it;
        it["eps"] = iter.eps;
        it["chosen"] = node_set_json(net, iter.result.chosen);
        it["lambda1"] = iter.lambda1;
        it["f_eps"] = iter.result.f_eps;
        iterations.push_back(std::move(it));
    }
    out["iterations"] = std::move(iterations);
    out["final_eps"] = run.final_eps;
    out["final_result"] = placement_json(net, run.final_result);
    out["f_exact"] = run.f_exact;
    out["f_eps"] = run.f_eps;
    out["guarantee_holds"] = run.guarantee_holds;
    return out;
}

std::string content_digest(const std::string& content) {
    uint64_t hash = 1469598103934665603ull;
    for (unsigned char c : content) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

std::string format_csv_number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

}  // namespace actuplace
