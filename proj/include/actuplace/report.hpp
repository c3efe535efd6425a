#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "actuplace/epsilon.hpp"
#include "actuplace/greedy.hpp"
#include "actuplace/guarantees.hpp"

namespace actuplace {

using ordered_json = nlohmann::ordered_json;

/// Node rendered with the network's label: custom labels as strings, default
/// labels as 1-based integers.
ordered_json node_json(const DirectedNetwork& net, int v);
ordered_json node_set_json(const DirectedNetwork& net, const NodeSet& s);

ordered_json trace_json(const DirectedNetwork& net, const GreedyTrace& trace);
ordered_json placement_json(const DirectedNetwork& net, const PlacementResult& result);
ordered_json guarantee_json(const GuaranteeReport& report);
ordered_json epsilon_run_json(const DirectedNetwork& net, const EpsilonRun& run);

/// FNV-1a 64-bit content digest, hex encoded.
std::string content_digest(const std::string& content);

std::string format_csv_number(double x);  // 6 significant digits

}  // namespace actuplace
