#pragma once

// Test-side oracles, kept independent of the library's solver paths:
// a long-double Hessenberg-QR eigensolver with inverse iteration, plus the
// synthetic graph families used across the unit and acceptance suites.

#include <Eigen/Dense>
#include <vector>

#include "pin/netcore.hpp"
#include "pin/rng.hpp"

namespace oracle {

using Real = long double;

struct Cplx {
    Real re = 0, im = 0;
};

/// All eigenvalues of a dense real matrix via elimination Hessenberg
/// reduction followed by double-shift QR, entirely in long double.
std::vector<Cplx> eigenvalues(const Eigen::MatrixXd& a);

/// Eigenvector for an (approximately) known real eigenvalue by shifted
/// inverse iteration, sign-normalised so the first significant entry is
/// positive.
std::vector<Real> inverse_iteration(const Eigen::MatrixXd& a, Real shift, int iters = 60);

/// lambda1 from an oracle spectrum: smallest real part above `zero_tol`,
/// one representative per conjugate pair.
Real smallest_positive_real(const std::vector<Cplx>& values, Real zero_tol);

// ---- synthetic graph families -------------------------------------------

Eigen::MatrixXd complete_digraph(int n, double w = 1.0);

/// Two `clique_size`-cliques of unit weight joined by one bridge edge per
/// direction (node 0 <-> node clique_size) of weight eps.
Eigen::MatrixXd barbell(int clique_size, double eps);

/// Two 6-cliques where node 0 alone carries both bridges (0 <-> 6, 0 <-> 7).
/// Removing {0} splits the graph; removing {6,7} is the only other minimal cut.
Eigen::MatrixXd fanout_barbell(double eps = 1e-3);

/// 12-node instance with an 8-clique core and a weakly attached 4-clique
/// {8,9,10,11}; removal of at least three of the four lifts lambda1.
Eigen::MatrixXd trap_instance(double eps = 1e-3);

/// Weighted core (8-clique at core_w) with shell nodes attached both ways at
/// shell_w; the scan loses the shells exactly past shell_w.
Eigen::MatrixXd two_tier(int shells, double core_w = 100.0, double shell_w = 10.0);

/// Random strongly-connected digraph: a random Hamiltonian cycle plus
/// density-p extra edges, weights drawn by `heavy_tail` (lognormal) or
/// uniform in [1, 100].
Eigen::MatrixXd random_scc(int n, double density, pin::Philox& rng, bool heavy_tail = false);

/// Strongly-connected digraph with multiplicative node factors,
/// w_ij ~ f_i * f_j with lognormal f. Hub-hub edges dominate the volume, so
/// unbalanced random cuts cross mostly light edges.
Eigen::MatrixXd hub_graph(int n, double density, pin::Philox& rng);

/// Random digraph with no connectivity guarantee (for component tests).
Eigen::MatrixXd random_digraph(int n, double density, pin::Philox& rng);

/// Wraps a weight matrix whose active nodes form one strongly-connected
/// component into a snapshot (node ids = positions).
pin::PinSnapshot snapshot_of(const Eigen::MatrixXd& w, int year = 2000,
                             pin::AssetClass cls = pin::AssetClass::E);

/// Position records reproducing the matrix for build-path tests.
std::vector<pin::PositionRecord> records_of(const Eigen::MatrixXd& w, int year);

}  // namespace oracle
