#pragma once

#include <Eigen/Core>

#include "actuplace/network.hpp"

namespace actuplace {

/// Finite-horizon controllability Gramian W_T(S), symmetric PSD.
struct Gramian {
    Eigen::MatrixXd matrix;
    double horizon = 0.0;
};

/// W_T(S) by the Van Loan block-exponential method.  gramian(empty) is the
/// zero matrix.
Gramian gramian(const DirectedNetwork& net, const NodeSet& S, double T);

/// F_eps(S) = tr((W_T(S) + eps I)^-1).
double metric_f_eps(const DirectedNetwork& net, const NodeSet& S, double T, double eps);

/// F(S) = tr(W_T(S)^-1); throws SingularGramian when W is numerically singular.
double metric_f(const DirectedNetwork& net, const NodeSet& S, double T);

double min_eigenvalue(const Gramian& W);

/// rho_v(S) = F_eps(S) - F_eps(S u {v}) for the forward objective -F_eps.
double marginal_gain(const DirectedNetwork& net, const NodeSet& S, int v, double T, double eps);

/// tr(M^-1) of a symmetric positive definite matrix via Cholesky and
/// triangular solves of unit vectors; retries once with a jitter of
/// 1e-14*trace, then throws SingularGramian.
double trace_inverse_spd(const Eigen::MatrixXd& M);

/// Precomputed single-node Gramians; subset Gramians are their sums
/// (W_T is additive over disjoint actuator sets).  Read-only after
/// construction, safe for concurrent use.
class GramianCache {
public:
    GramianCache(const DirectedNetwork& net, double T);

    int size() const { return n_; }
    double horizon() const { return horizon_; }
    Eigen::MatrixXd sum(const NodeSet& S) const;
    double f_eps(const NodeSet& S, double eps) const;
    double f_exact(const NodeSet& S) const;
    double lambda_min(const NodeSet& S) const;

private:
    int n_;
    double horizon_;
    std::vector<Eigen::MatrixXd> node_gramians_;
};

}  // namespace actuplace
