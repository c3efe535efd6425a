#include "actuplace/network.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

namespace actuplace {

using json = nlohmann::json;

NodeSet make_node_set(std::vector<int> nodes) {
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    return nodes;
}

bool set_contains(const NodeSet& s, int v) {
    return std::binary_search(s.begin(), s.end(), v);
}

NodeSet set_with(const NodeSet& s, int v) {
    NodeSet out = s;
    auto it = std::lower_bound(out.begin(), out.end(), v);
    if (it == out.end() || *it != v) out.insert(it, v);
    return out;
}

NodeSet set_without(const NodeSet& s, int v) {
    NodeSet out = s;
    auto it = std::lower_bound(out.begin(), out.end(), v);
    if (it != out.end() && *it == v) out.erase(it);
    return out;
}

NodeSet set_union(const NodeSet& a, const NodeSet& b) {
    NodeSet out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

NodeSet set_difference(const NodeSet& a, const NodeSet& b) {
    NodeSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

DirectedNetwork DirectedNetwork::from_weights(Eigen::MatrixXd weights,
                                              std::vector<bool> actuatable,
                                              std::vector<std::string> labels) {
    if (weights.rows() < 1 || weights.rows() != weights.cols())
        throw Error(Err::DimensionMismatch, "weight matrix must be square and nonempty");
    const int n = static_cast<int>(weights.rows());
    if (actuatable.empty()) actuatable.assign(n, true);
    if (static_cast<int>(actuatable.size()) != n)
        throw Error(Err::DimensionMismatch, "actuatable mask length != n");
    if (!labels.empty() && static_cast<int>(labels.size()) != n)
        throw Error(Err::DimensionMismatch, "labels length != n");

    DirectedNetwork net;
    net.n_ = n;
    net.weights_ = std::move(weights);
    net.actuatable_ = std::move(actuatable);
    net.labels_ = std::move(labels);
    return net;
}

int DirectedNetwork::edge_count() const {
    int count = 0;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            if (weights_(i, j) != 0.0) ++count;
    return count;
}

NodeSet DirectedNetwork::actuatable_nodes() const {
    NodeSet out;
    for (int v = 0; v < n_; ++v)
        if (actuatable_[v]) out.push_back(v);
    return out;
}

std::string DirectedNetwork::label(int v) const {
    if (!labels_.empty()) return labels_[v];
    return std::to_string(v + 1);
}

namespace {

// Nodes reachable from `start` along the given adjacency.
int reach_count(const std::vector<std::vector<int>>& adj, int start) {
    std::vector<char> seen(adj.size(), 0);
    std::queue<int> q;
    q.push(start);
    seen[start] = 1;
    int count = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : adj[u])
            if (!seen[v]) {
                seen[v] = 1;
                ++count;
                q.push(v);
            }
    }
    return count;
}

}  // namespace

bool strongly_connected(const DirectedNetwork& net) {
    const int n = net.size();
    std::vector<std::vector<int>> fwd(n), rev(n);
    const auto& A = net.weights();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (A(i, j) != 0.0 && i != j) {
                fwd[j].push_back(i);  // edge v_j -> v_i
                rev[i].push_back(j);
            }
    return reach_count(fwd, 0) == n && reach_count(rev, 0) == n;
}

void require_strongly_connected(const DirectedNetwork& net) {
    if (!strongly_connected(net))
        throw Error(Err::NotStronglyConnected, "network graph is not strongly connected");
}

DirectedNetwork parse_network(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw Error(Err::MalformedInput, e.what());
    }
    if (!doc.is_object() || !doc.contains("n") || !doc["n"].is_number_integer())
        throw Error(Err::MalformedInput, "expected object with integer field 'n'");
    const int n = doc["n"].get<int>();
    if (n < 1) throw Error(Err::MalformedInput, "n must be >= 1");
    if (!doc.contains("edges") || !doc["edges"].is_array())
        throw Error(Err::MalformedInput, "expected array field 'edges'");

    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : doc["edges"]) {
        if (!e.is_object() || !e.contains("from") || !e.contains("to") || !e.contains("w"))
            throw Error(Err::MalformedInput, "edge needs fields from, to, w");
        const int from = e["from"].get<int>();  // 1-based in files
        const int to = e["to"].get<int>();
        if (from < 1 || from > n || to < 1 || to > n)
            throw Error(Err::DimensionMismatch, "edge endpoint out of range");
        const double w = e["w"].get<double>();
        if (w == 0.0) throw Error(Err::MalformedInput, "edge weight must be nonzero");
        if (A(to - 1, from - 1) != 0.0)
            throw Error(Err::MalformedInput, "duplicate edge " + std::to_string(from) + "->" +
                                                 std::to_string(to));
        A(to - 1, from - 1) = w;  // edge from=j, to=i sets A_ij
    }

    std::vector<bool> actuatable;
    if (doc.contains("actuatable")) {
        if (!doc["actuatable"].is_array())
            throw Error(Err::MalformedInput, "actuatable must be an array of booleans");
        for (const auto& b : doc["actuatable"]) {
            if (!b.is_boolean()) throw Error(Err::MalformedInput, "actuatable entries must be booleans");
            actuatable.push_back(b.get<bool>());
        }
    }
    std::vector<std::string> labels;
    if (doc.contains("labels")) {
        if (!doc["labels"].is_array())
            throw Error(Err::MalformedInput, "labels must be an array of strings");
        for (const auto& s : doc["labels"]) {
            if (!s.is_string()) throw Error(Err::MalformedInput, "labels entries must be strings");
            labels.push_back(s.get<std::string>());
        }
    }

    auto net = DirectedNetwork::from_weights(std::move(A), std::move(actuatable), std::move(labels));
    require_strongly_connected(net);
    return net;
}

std::string network_to_json(const DirectedNetwork& net) {
    json doc;
    const int n = net.size();
    doc["n"] = n;
    json edges = json::array();
    const auto& A = net.weights();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (A(i, j) != 0.0)
                edges.push_back({{"from", j + 1}, {"to", i + 1}, {"w", A(i, j)}});
    doc["edges"] = std::move(edges);
    json act = json::array();
    bool all_true = true;
    for (int v = 0; v < n; ++v) {
        act.push_back(net.is_actuatable(v));
        all_true = all_true && net.is_actuatable(v);
    }
    if (!all_true) doc["actuatable"] = std::move(act);
    if (net.has_custom_labels()) {
        json labels = json::array();
        for (int v = 0; v < n; ++v) labels.push_back(net.label(v));
        doc["labels"] = std::move(labels);
    }
    return doc.dump();
}

namespace {

using EdgeList = std::vector<std::pair<int, int>>;

bool undirected_connected(int n, const EdgeList& edges) {
    if (n <= 1) return true;
    std::vector<std::vector<int>> adj(n);
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    return reach_count(adj, 0) == n;
}

int component_of(int n, const EdgeList& edges, std::vector<int>& comp) {
    comp.assign(n, -1);
    std::vector<std::vector<int>> adj(n);
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    int ncomp = 0;
    for (int s = 0; s < n; ++s) {
        if (comp[s] != -1) continue;
        std::queue<int> q;
        q.push(s);
        comp[s] = ncomp;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : adj[u])
                if (comp[v] == -1) {
                    comp[v] = ncomp;
                    q.push(v);
                }
        }
        ++ncomp;
    }
    return ncomp;
}

}  // namespace

DirectedNetwork generate_by_degrees(const std::vector<int>& degree_sequence, uint64_t seed) {
    const int n = static_cast<int>(degree_sequence.size());
    if (n < 1) throw Error(Err::NotGraphical, "empty degree sequence");
    long sum = 0;
    for (int d : degree_sequence) {
        if (d < 0 || d > n - 1) throw Error(Err::NotGraphical, "degree out of range for a simple graph");
        sum += d;
    }
    if (sum % 2 != 0) throw Error(Err::NotGraphical, "odd degree sum");

    // Havel-Hakimi realization.
    std::vector<std::pair<int, int>> rem(n);  // (remaining degree, node)
    for (int v = 0; v < n; ++v) rem[v] = {degree_sequence[v], v};
    EdgeList edges;
    std::vector<std::vector<char>> has(n, std::vector<char>(n, 0));
    while (true) {
        std::sort(rem.begin(), rem.end(), [](auto& a, auto& b) {
            return a.first != b.first ? a.first > b.first : a.second < b.second;
        });
        if (rem[0].first == 0) break;
        const int d = rem[0].first;
        const int u = rem[0].second;
        if (d > static_cast<int>(rem.size()) - 1)
            throw Error(Err::NotGraphical, "degree sequence is not graphical");
        rem[0].first = 0;
        for (int k = 1; k <= d; ++k) {
            if (rem[k].first == 0) throw Error(Err::NotGraphical, "degree sequence is not graphical");
            --rem[k].first;
            const int v = rem[k].second;
            edges.emplace_back(u, v);
            has[u][v] = has[v][u] = 1;
        }
    }

    std::mt19937_64 rng(seed);
    auto try_swap = [&](size_t e1, size_t e2, bool cross) {
        auto [a, b] = edges[e1];
        auto [c, d] = edges[e2];
        if (!cross && rng() & 1) std::swap(c, d);
        // rewire (a,b),(c,d) -> (a,d),(c,b)
        if (a == c || a == d || b == c || b == d) return false;
        if (has[a][d] || has[c][b]) return false;
        has[a][b] = has[b][a] = has[c][d] = has[d][c] = 0;
        has[a][d] = has[d][a] = has[c][b] = has[b][c] = 1;
        edges[e1] = {a, d};
        edges[e2] = {c, b};
        return true;
    };

    // Uniform random double-edge swaps to randomize the realization.
    if (edges.size() >= 2) {
        const size_t target = 10 * edges.size();
        std::uniform_int_distribution<size_t> pick(0, edges.size() - 1);
        for (size_t done = 0, attempts = 0; done < target && attempts < 100 * target; ++attempts) {
            size_t e1 = pick(rng), e2 = pick(rng);
            if (e1 == e2) continue;
            if (try_swap(e1, e2, false)) ++done;
        }
    }

    // Connectivity repair: swap one edge from each of two components; this
    // merges them while preserving degrees.
    for (int rounds = 0; !undirected_connected(n, edges); ++rounds) {
        if (rounds > 100 * n)
            throw Error(Err::ConnectivityUnreachable, "could not reach a connected realization");
        std::vector<int> comp;
        component_of(n, edges, comp);
        if (edges.empty()) throw Error(Err::ConnectivityUnreachable, "isolated nodes cannot be connected");
        bool merged = false;
        for (size_t e1 = 0; e1 < edges.size() && !merged; ++e1)
            for (size_t e2 = e1 + 1; e2 < edges.size() && !merged; ++e2) {
                if (comp[edges[e1].first] == comp[edges[e2].first]) continue;
                if (try_swap(e1, e2, true) || try_swap(e2, e1, true)) merged = true;
            }
        if (!merged)
            throw Error(Err::ConnectivityUnreachable, "no degree-preserving connecting swap exists");
    }

    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    for (auto [a, b] : edges) {
        A(a, b) = 1.0;
        A(b, a) = 1.0;
    }
    return DirectedNetwork::from_weights(std::move(A));
}

DirectedNetwork build_swing_model(const std::vector<Bus>& buses,
                                  const std::vector<Branch>& branches) {
    const int nb = static_cast<int>(buses.size());
    if (nb < 1) throw Error(Err::DisconnectedGrid, "at least one bus required");
    for (const auto& bus : buses)
        if (bus.damping <= 0.0)
            throw Error(Err::NonpositiveDamping, "bus damping must be positive");
    for (const auto& br : branches) {
        if (br.from < 0 || br.from >= nb || br.to < 0 || br.to >= nb || br.from == br.to)
            throw Error(Err::DimensionMismatch, "branch endpoints out of range");
        if (br.susceptance <= 0.0)
            throw Error(Err::MalformedInput, "branch susceptance must be positive");
    }
    {
        EdgeList grid;
        for (const auto& br : branches) grid.emplace_back(br.from, br.to);
        if (!undirected_connected(nb, grid))
            throw Error(Err::DisconnectedGrid, "bus/branch graph is not connected");
    }

    // State layout: theta_i for every bus, then theta_dot_i appended right
    // after theta_i for inertial buses.
    std::vector<int> theta(nb), thetadot(nb, -1);
    int n = 0;
    for (int i = 0; i < nb; ++i) {
        theta[i] = n++;
        if (buses[i].inertia > 0.0) thetadot[i] = n++;
    }

    Eigen::MatrixXd coupling = Eigen::MatrixXd::Zero(nb, nb);  // sum_j a_ij (theta_i - theta_j)
    for (const auto& br : branches) {
        coupling(br.from, br.from) += br.susceptance;
        coupling(br.to, br.to) += br.susceptance;
        coupling(br.from, br.to) -= br.susceptance;
        coupling(br.to, br.from) -= br.susceptance;
    }

    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    std::vector<bool> actuatable(n, false);
    for (int i = 0; i < nb; ++i) {
        if (buses[i].inertia == 0.0) {
            // D_i theta_dot_i = P_i - sum_j a_ij (theta_i - theta_j)
            for (int j = 0; j < nb; ++j)
                if (coupling(i, j) != 0.0) A(theta[i], theta[j]) = -coupling(i, j) / buses[i].damping;
            actuatable[theta[i]] = buses[i].injectable;
        } else {
            // theta_i' = theta_dot_i;  M_i theta_ddot_i = P_i - D_i theta_dot_i - coupling
            A(theta[i], thetadot[i]) = 1.0;
            for (int j = 0; j < nb; ++j)
                if (coupling(i, j) != 0.0)
                    A(thetadot[i], theta[j]) = -coupling(i, j) / buses[i].inertia;
            A(thetadot[i], thetadot[i]) = -buses[i].damping / buses[i].inertia;
            actuatable[thetadot[i]] = buses[i].injectable;
        }
    }

    std::vector<std::string> labels(n);
    for (int i = 0; i < nb; ++i) {
        labels[theta[i]] = "theta_" + std::to_string(i + 1);
        if (thetadot[i] >= 0) labels[thetadot[i]] = "omega_" + std::to_string(i + 1);
    }
    return DirectedNetwork::from_weights(std::move(A), std::move(actuatable), std::move(labels));
}

namespace {

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        rows.push_back(std::move(fields));
    }
    return rows;
}

bool parse_bool_field(const std::string& s) {
    if (s == "1" || s == "true" || s == "TRUE" || s == "True") return true;
    if (s == "0" || s == "false" || s == "FALSE" || s == "False") return false;
    throw Error(Err::MalformedInput, "expected boolean CSV field, got '" + s + "'");
}

}  // namespace

DirectedNetwork load_swing_csv(const std::string& buses_csv, const std::string& branches_csv) {
    auto bus_rows = parse_csv(buses_csv);
    auto branch_rows = parse_csv(branches_csv);
    if (bus_rows.empty() || bus_rows[0] != std::vector<std::string>{"id", "M", "D", "injectable"})
        throw Error(Err::MalformedInput, "buses.csv must have header id,M,D,injectable");
    if (branch_rows.empty() || branch_rows[0] != std::vector<std::string>{"from", "to", "b"})
        throw Error(Err::MalformedInput, "branches.csv must have header from,to,b");

    std::vector<Bus> buses;
    try {
        for (size_t r = 1; r < bus_rows.size(); ++r) {
            const auto& row = bus_rows[r];
            if (row.size() != 4) throw Error(Err::MalformedInput, "buses.csv row needs 4 fields");
            const int id = std::stoi(row[0]);
            if (id != static_cast<int>(r))
                throw Error(Err::MalformedInput, "bus ids must be 1..n in order");
            buses.push_back({std::stod(row[1]), std::stod(row[2]), parse_bool_field(row[3])});
        }
        std::vector<Branch> branch_list;
        for (size_t r = 1; r < branch_rows.size(); ++r) {
            const auto& row = branch_rows[r];
            if (row.size() != 3) throw Error(Err::MalformedInput, "branches.csv row needs 3 fields");
            branch_list.push_back({std::stoi(row[0]) - 1, std::stoi(row[1]) - 1, std::stod(row[2])});
        }
        return build_swing_model(buses, branch_list);
    } catch (const std::invalid_argument&) {
        throw Error(Err::MalformedInput, "non-numeric CSV field");
    } catch (const std::out_of_range&) {
        throw Error(Err::MalformedInput, "CSV field out of range");
    }
}

const char* err_name(Err e) {
    switch (e) {
        case Err::MalformedInput: return "MalformedInput";
        case Err::NotStronglyConnected: return "NotStronglyConnected";
        case Err::DimensionMismatch: return "DimensionMismatch";
        case Err::NotGraphical: return "NotGraphical";
        case Err::ConnectivityUnreachable: return "ConnectivityUnreachable";
        case Err::DisconnectedGrid: return "DisconnectedGrid";
        case Err::NonpositiveDamping: return "NonpositiveDamping";
        case Err::HorizonNonpositive: return "HorizonNonpositive";
        case Err::EpsNonpositive: return "EpsNonpositive";
        case Err::SingularGramian: return "SingularGramian";
        case Err::NodeAlreadyInSet: return "NodeAlreadyInSet";
        case Err::CardinalityExceeded: return "CardinalityExceeded";
        case Err::NotActuatable: return "NotActuatable";
        case Err::TooManyExclusions: return "TooManyExclusions";
        case Err::InfeasibleAtSize: return "InfeasibleAtSize";
        case Err::KBelowMinimum: return "KBelowMinimum";
        case Err::GroundSetTooLarge: return "GroundSetTooLarge";
        case Err::NotIncreasing: return "NotIncreasing";
        case Err::DomainError: return "DomainError";
        case Err::OrderingViolated: return "OrderingViolated";
        case Err::EnumerationTooLarge: return "EnumerationTooLarge";
        case Err::Infeasible: return "Infeasible";
        case Err::NoFeasibleSample: return "NoFeasibleSample";
        case Err::SingularGramianEncountered: return "SingularGramianEncountered";
        case Err::NonpositiveParameter: return "NonpositiveParameter";
        case Err::DeltaOutOfRange: return "DeltaOutOfRange";
        case Err::DimensionConstraintViolated: return "DimensionConstraintViolated";
        case Err::UnknownCommand: return "UnknownCommand";
    }
    return "UnknownError";
}

}  // namespace actuplace
