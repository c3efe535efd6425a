#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "actuplace/errors.hpp"

namespace actuplace {

/// Sorted, duplicate-free list of 0-based node indices.
using NodeSet = std::vector<int>;

NodeSet make_node_set(std::vector<int> nodes);
bool set_contains(const NodeSet& s, int v);
NodeSet set_with(const NodeSet& s, int v);
NodeSet set_without(const NodeSet& s, int v);
NodeSet set_union(const NodeSet& a, const NodeSet& b);
NodeSet set_difference(const NodeSet& a, const NodeSet& b);

/// Dynamical network G=(V,E) derived from the state matrix A.
/// Edge (v_j, v_i) exists iff A(i,j) != 0.  Immutable after construction.
class DirectedNetwork {
public:
    static DirectedNetwork from_weights(Eigen::MatrixXd weights,
                                        std::vector<bool> actuatable = {},
                                        std::vector<std::string> labels = {});

    int size() const { return n_; }
    const Eigen::MatrixXd& weights() const { return weights_; }

    bool has_edge(int from, int to) const { return weights_(to, from) != 0.0; }
    int edge_count() const;

    const std::vector<bool>& actuatable() const { return actuatable_; }
    bool is_actuatable(int v) const { return actuatable_[v]; }
    NodeSet actuatable_nodes() const;

    /// Label of node v; defaults to the 1-based index as a string.
    std::string label(int v) const;
    bool has_custom_labels() const { return !labels_.empty(); }

private:
    DirectedNetwork() = default;

    int n_ = 0;
    Eigen::MatrixXd weights_;
    std::vector<bool> actuatable_;
    std::vector<std::string> labels_;
};

bool strongly_connected(const DirectedNetwork& net);
void require_strongly_connected(const DirectedNetwork& net);

/// Parses the network JSON schema; throws MalformedInput / DimensionMismatch /
/// NotStronglyConnected.
DirectedNetwork parse_network(const std::string& json_text);
std::string network_to_json(const DirectedNetwork& net);

/// Realizes a graphical degree sequence as a connected simple undirected graph
/// (Havel-Hakimi, then seeded edge swaps, then connectivity repair by swap),
/// stored as a symmetric 0/1 weight matrix.
DirectedNetwork generate_by_degrees(const std::vector<int>& degree_sequence, uint64_t seed);

struct Bus {
    double inertia = 0.0;     // M_i >= 0
    double damping = 1.0;     // D_i > 0
    bool injectable = true;
};

struct Branch {
    int from = 0;             // 0-based bus indices
    int to = 0;
    double susceptance = 0.0; // a_ij > 0
};

/// Linearized swing-equation grid.  Buses with M=0 contribute one state
/// (theta), buses with M>0 contribute (theta, theta_dot); the actuatable mask
/// marks exactly the power-injection states of injectable buses.
DirectedNetwork build_swing_model(const std::vector<Bus>& buses,
                                  const std::vector<Branch>& branches);

/// CSV loaders for the swing model: buses.csv `id,M,D,injectable`,
/// branches.csv `from,to,b` (ids are 1-based in files).
DirectedNetwork load_swing_csv(const std::string& buses_csv, const std::string& branches_csv);

}  // namespace actuplace
