#include "pin/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

namespace pin {

Eigen::MatrixXd normalized_laplacian(const Eigen::MatrixXd& weights) {
    const Eigen::Index n = weights.rows();
    Eigen::VectorXd in_strength = weights.colwise().sum();
    for (Eigen::Index i = 0; i < n; ++i)
        if (in_strength(i) <= 0)
            throw invariant_error("zero in-strength at node position " + std::to_string(i));
    Eigen::MatrixXd l = Eigen::MatrixXd::Identity(n, n);
    l.noalias() -= in_strength.cwiseInverse().asDiagonal() * weights.transpose();
    return l;
}

Eigen::MatrixXd normalized_laplacian(const PinSnapshot& s) {
    return normalized_laplacian(s.weights);
}

SpectralSummary spectrum_summary(const PinSnapshot& s, double zero_tol) {
    const int n = s.size();
    if (zero_tol < 0) zero_tol = 1e-9 * n;
    if (zero_tol <= 0) throw invariant_error("zero tolerance must be positive");

    Eigen::MatrixXd l = normalized_laplacian(s);
    Eigen::EigenSolver<Eigen::MatrixXd> solver(l, /*computeEigenvectors=*/true);
    if (solver.info() != Eigen::Success)
        throw numeric_error("eigensolver did not converge on the normalised Laplacian");

    const auto& values = solver.eigenvalues();

    SpectralSummary out;
    for (Eigen::Index k = 0; k < values.size(); ++k)
        if (std::abs(values(k).real()) < zero_tol) ++out.zero_count;
    if (out.zero_count != 1)
        throw invariant_error("normalised Laplacian has " + std::to_string(out.zero_count) +
                              " zero eigenvalues; snapshot is not a single strongly-connected component");

    // candidate non-zero eigenvalues: one representative per conjugate pair,
    // real multiplicities kept
    std::vector<Eigen::Index> candidates;
    for (Eigen::Index k = 0; k < values.size(); ++k) {
        if (values(k).real() <= zero_tol) continue;
        if (values(k).imag() < 0) continue;
        candidates.push_back(k);
    }
    if (candidates.empty())
        throw invariant_error("no positive eigenvalue found for the normalised Laplacian");
    std::sort(candidates.begin(), candidates.end(), [&](Eigen::Index a, Eigen::Index b) {
        if (values(a).real() != values(b).real()) return values(a).real() < values(b).real();
        return a < b;
    });

    out.lambda1 = values(candidates[0]).real();
    out.lambda2 = candidates.size() > 1 ? values(candidates[1]).real() : out.lambda1;
    out.delta_lambda = out.lambda2 - out.lambda1;

    out.fiedler = solver.eigenvectors().col(candidates[0]).real();
    for (Eigen::Index i = 0; i < out.fiedler.size(); ++i) {
        if (std::abs(out.fiedler(i)) <= 1e-12) continue;
        if (out.fiedler(i) < 0) out.fiedler = -out.fiedler;
        break;
    }
    return out;
}

Eigen::VectorXd eigenvector_centrality(const PinSnapshot& s, double tol, int max_iter,
                                       bool left) {
    const int n = s.size();
    if (n < 2) throw invariant_error("centrality needs at least two nodes");
    Eigen::MatrixXd w = left ? s.weights.transpose() : s.weights;

    // shift by the mean edge weight: keeps the iteration convergent for
    // periodic weight patterns and cancels out of the final direction
    const double mean_weight = s.volume() / static_cast<double>(s.edge_count());
    w.diagonal().array() += mean_weight;

    Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
    double residual = 0;
    for (int it = 0; it < max_iter; ++it) {
        Eigen::VectorXd y = w * x;
        double norm = y.norm();
        if (!(norm > 0)) throw numeric_error("power iteration collapsed to the zero vector");
        y /= norm;
        residual = (y - x).norm();
        x = std::move(y);
        if (residual < tol) {
            if (x.minCoeff() <= 0)
                throw numeric_error("centrality vector is not strictly positive");
            return x;
        }
    }
    throw numeric_error("power iteration did not converge in " + std::to_string(max_iter) +
                        " iterations (last residual " + std::to_string(residual) + ")");
}

Bisection fiedler_bisection(const SpectralSummary& summary) {
    if (summary.fiedler.size() == 0) throw invariant_error("missing Fiedler vector");
    Bisection b;
    for (Eigen::Index i = 0; i < summary.fiedler.size(); ++i) {
        if (summary.fiedler(i) < -1e-12)
            b.s_minus.push_back(static_cast<int>(i));
        else
            b.s_plus.push_back(static_cast<int>(i));  // zeros join the plus side
    }
    if (b.s_plus.empty() || b.s_minus.empty())
        throw invariant_error("degenerate Fiedler vector: all entries share one sign");
    b.f_small = static_cast<double>(std::min(b.s_plus.size(), b.s_minus.size())) /
                static_cast<double>(summary.fiedler.size());
    return b;
}

}  // namespace pin
