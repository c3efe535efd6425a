#include "actuplace/gramian.hpp"

#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

namespace actuplace {

namespace {

void check_horizon(double T) {
    if (!(T > 0.0)) throw Error(Err::HorizonNonpositive, "horizon T must be positive");
}

Eigen::MatrixXd input_gram(const DirectedNetwork& net, const NodeSet& S) {
    const int n = net.size();
    Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(n, n);
    for (int v : S) {
        if (v < 0 || v >= n) throw Error(Err::DimensionMismatch, "actuator index out of range");
        Q(v, v) = 1.0;  // B(S) B(S)^T with B(S) = diag(1(S))
    }
    return Q;
}

}  // namespace

Gramian gramian(const DirectedNetwork& net, const NodeSet& S, double T) {
    check_horizon(T);
    const int n = net.size();
    if (S.empty()) return {Eigen::MatrixXd::Zero(n, n), T};

    // Van Loan block method: exp([[-A, Q],[0, A^T]] T) has blocks with
    // F22 = exp(A^T T) and F22^T F12 = int_0^T exp(A s) Q exp(A^T s) ds.
    const Eigen::MatrixXd& A = net.weights();
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    M.topLeftCorner(n, n) = -A;
    M.topRightCorner(n, n) = input_gram(net, S);
    M.bottomRightCorner(n, n) = A.transpose();
    Eigen::MatrixXd E = (M * T).exp();
    Eigen::MatrixXd W = E.bottomRightCorner(n, n).transpose() * E.topRightCorner(n, n);
    W = 0.5 * (W + W.transpose());  // symmetrize on output
    return {std::move(W), T};
}

double trace_inverse_spd(const Eigen::MatrixXd& M) {
    const int n = static_cast<int>(M.rows());
    Eigen::MatrixXd sym = 0.5 * (M + M.transpose());
    Eigen::LLT<Eigen::MatrixXd> llt(sym);
    if (llt.info() != Eigen::Success) {
        sym.diagonal().array() += 1e-14 * sym.trace();
        llt.compute(sym);
        if (llt.info() != Eigen::Success)
            throw Error(Err::SingularGramian, "Cholesky factorization failed");
    }
    const auto& L = llt.matrixL();
    double trace = 0.0;
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) {
        e(i) = 1.0;
        Eigen::VectorXd y = L.solve(e);
        trace += y.squaredNorm();
        e(i) = 0.0;
    }
    return trace;
}

double metric_f_eps(const DirectedNetwork& net, const NodeSet& S, double T, double eps) {
    if (!(eps > 0.0)) throw Error(Err::EpsNonpositive, "eps must be positive");
    Gramian W = gramian(net, S, T);
    W.matrix.diagonal().array() += eps;
    return trace_inverse_spd(W.matrix);
}

double metric_f(const DirectedNetwork& net, const NodeSet& S, double T) {
    Gramian W = gramian(net, S, T);
    const double scale = W.matrix.norm();
    if (min_eigenvalue(W) <= 1e-14 * scale)
        throw Error(Err::SingularGramian, "Gramian is numerically singular; use metric_f_eps");
    return trace_inverse_spd(W.matrix);
}

namespace {

// Number of eigenvalues of the symmetric tridiagonal (d, e) below sigma,
// by the Sturm-sequence sign count.
int sturm_count(const Eigen::VectorXd& d, const Eigen::VectorXd& e, double sigma) {
    const int n = static_cast<int>(d.size());
    const double tiny = 1e-300;
    int count = 0;
    double q = d(0) - sigma;
    if (q < 0) ++count;
    for (int i = 1; i < n; ++i) {
        if (q == 0.0) q = tiny;
        q = d(i) - sigma - e(i - 1) * e(i - 1) / q;
        if (q < 0) ++count;
    }
    return count;
}

}  // namespace

double min_eigenvalue(const Gramian& W) {
    const int n = static_cast<int>(W.matrix.rows());
    Eigen::MatrixXd sym = 0.5 * (W.matrix + W.matrix.transpose());
    if (n <= 500) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
        return es.eigenvalues()(0);
    }
    // Above the dense cutoff: tridiagonalize, bracket the bottom eigenvalue by
    // Sturm bisection, then polish with one shifted inverse power iteration.
    Eigen::Tridiagonalization<Eigen::MatrixXd> tri(sym);
    Eigen::VectorXd d = tri.matrixT().diagonal();
    Eigen::VectorXd e = tri.matrixT().diagonal(-1);
    double lo = d(0), hi = d(0);
    for (int i = 0; i < n; ++i) {
        const double left = i > 0 ? std::abs(e(i - 1)) : 0.0;
        const double right = i < n - 1 ? std::abs(e(i)) : 0.0;
        lo = std::min(lo, d(i) - left - right);
        hi = std::max(hi, d(i) + left + right);
    }
    const double scale = std::max(std::abs(lo), std::abs(hi)) + 1e-300;
    while (hi - lo > 1e-13 * scale) {
        const double mid = 0.5 * (lo + hi);
        if (sturm_count(d, e, mid) >= 1)
            hi = mid;
        else
            lo = mid;
    }
    const double sigma = 0.5 * (lo + hi);

    Eigen::MatrixXd shifted = sym;
    shifted.diagonal().array() -= sigma - 1e-14 * scale;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(shifted);
    Eigen::VectorXd x = Eigen::VectorXd::Ones(n).normalized();
    double mu = sigma;
    for (int it = 0; it < 3; ++it) {
        Eigen::VectorXd y = lu.solve(x);
        const double norm = y.norm();
        if (!(norm > 0.0) || !y.allFinite()) break;
        x = y / norm;
        mu = x.dot(sym * x);
    }
    // The bisection bracket is authoritative; the polish only refines inside it.
    return std::clamp(mu, lo - 1e-12 * scale, hi + 1e-12 * scale);
}

double marginal_gain(const DirectedNetwork& net, const NodeSet& S, int v, double T, double eps) {
    if (set_contains(S, v)) throw Error(Err::NodeAlreadyInSet, "candidate already in actuator set");
    return metric_f_eps(net, S, T, eps) - metric_f_eps(net, set_with(S, v), T, eps);
}

GramianCache::GramianCache(const DirectedNetwork& net, double T)
    : n_(net.size()), horizon_(T) {
    check_horizon(T);
    node_gramians_.reserve(n_);
    for (int v = 0; v < n_; ++v)
        node_gramians_.push_back(gramian(net, {v}, T).matrix);
}

Eigen::MatrixXd GramianCache::sum(const NodeSet& S) const {
    Eigen::MatrixXd W = Eigen::MatrixXd::Zero(n_, n_);
    for (int v : S) W += node_gramians_[v];
    return W;
}

double GramianCache::f_eps(const NodeSet& S, double eps) const {
    if (!(eps > 0.0)) throw Error(Err::EpsNonpositive, "eps must be positive");
    Eigen::MatrixXd W = sum(S);
    W.diagonal().array() += eps;
    return trace_inverse_spd(W);
}

double GramianCache::f_exact(const NodeSet& S) const {
    Eigen::MatrixXd W = sum(S);
    Gramian g{W, horizon_};
    if (min_eigenvalue(g) <= 1e-14 * W.norm())
        throw Error(Err::SingularGramian, "Gramian is numerically singular; use f_eps");
    return trace_inverse_spd(W);
}

double GramianCache::lambda_min(const NodeSet& S) const {
    Gramian g{sum(S), horizon_};
    return min_eigenvalue(g);
}

}  // namespace actuplace
