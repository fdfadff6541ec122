#pragma once

#include <Eigen/Dense>
#include <vector>

#include "pin/netcore.hpp"
#include "pin/types.hpp"

namespace pin {

/**
 * Spectrum of the in-strength-normalised Laplacian of one snapshot.
 * lambda1 is the real part of the smallest non-zero eigenvalue, lambda2 the
 * next-smallest (counted with multiplicity for real eigenvalues; a complex
 * conjugate pair contributes a single value). The fiedler vector is the real
 * part of an eigenvector at lambda1, sign-normalised so its first non-zero
 * entry is positive.
 */
struct SpectralSummary {
    double lambda1 = 0;
    double lambda2 = 0;
    double delta_lambda = 0;
    Eigen::VectorXd fiedler;
    int zero_count = 0;
};

/// Node partition by Fiedler-vector sign. Entries are positional indices.
struct Bisection {
    std::vector<int> s_plus;
    std::vector<int> s_minus;
    double f_small = 0;
};

/// L_N = I - D_in^{-1} W^T for an arbitrary weight matrix with positive
/// in-strengths (column sums). Each row of L_N sums to zero.
Eigen::MatrixXd normalized_laplacian(const Eigen::MatrixXd& weights);
Eigen::MatrixXd normalized_laplacian(const PinSnapshot& s);

/// Full dense eigensolve of L_N. zero_tol < 0 selects the default 1e-9 * N.
/// Throws invariant_error when the zero-eigenvalue count is not exactly one
/// and numeric_error when the eigensolver fails.
SpectralSummary spectrum_summary(const PinSnapshot& s, double zero_tol = -1.0);

/**
 * Dominant right eigenvector of W by power iteration, strictly positive and
 * of unit Euclidean norm. A diagonal shift proportional to the mean edge
 * weight keeps the iteration convergent for periodic weight patterns; the
 * result is unchanged by it. Set left = true for the left eigenvector
 * (iteration on W^T).
 */
Eigen::VectorXd eigenvector_centrality(const PinSnapshot& s, double tol = 1e-12,
                                       int max_iter = 200000, bool left = false);

/// Signs of the Fiedler vector: entries > 0 (and |entry| < 1e-12) go to
/// s_plus, entries < 0 to s_minus. Throws invariant_error when one side is empty.
Bisection fiedler_bisection(const SpectralSummary& summary);

}  // namespace pin
