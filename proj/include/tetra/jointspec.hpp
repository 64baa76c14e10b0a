#pragma once

// Joint spectrum of a commuting pair of matrices. For commuting matrices the
// Taylor spectrum is the set of joint eigenvalues, which are the diagonal
// pairs of any simultaneous upper-triangular form.

#include <random>
#include <vector>

#include "tetra/linalg.hpp"

namespace tetra {

struct CommutingPair {
    ComplexMatrix a;
    ComplexMatrix b;
    double residual = 0.0; ///< ||AB - BA|| at construction
};

/// Builds a CommutingPair; throws NotCommuting when
/// ||AB - BA|| > tol * (||A|| ||B|| + 1).
CommutingPair verify_commuting(const ComplexMatrix& a, const ComplexMatrix& b, double tol = 1e-10);

struct JointEigenvalue {
    cplx lambda{};
    cplx mu{};
    /// sigma_min of [A - lambda I; B - mu I] on the input pair
    double residual = 0.0;
};

struct JointSpectrum {
    std::vector<JointEigenvalue> pairs; ///< n entries, with multiplicity
};

struct JointSpecOptions {
    /// Joint eigenvector acceptance: ||Av - lv||, ||Bv - mv|| <= tol * (||A|| + ||B|| + 1).
    double tol = 1e-8;
    /// Diagonal entries of one coordinate closer than
    /// cluster_width * (||A|| + 1) are replaced by their cluster mean; 0 disables.
    double cluster_width = 1e-3;
};

/// Simultaneous unitary triangularization by deflation. At each step an
/// eigenvector of A + gamma B (gamma drawn from `rng`) is tested as a joint
/// eigenvector; if none qualifies, the common kernel of the stacked shifted
/// matrices is located by SVD. A Householder reflector moves the vector to
/// the first coordinate and the trailing block is processed next. The
/// multiset is read off the resulting triangular diagonals, with clusters of
/// nearby entries in each coordinate replaced by their mean.
JointSpectrum joint_eigenvalues(const CommutingPair& pair, std::mt19937_64& rng,
                                const JointSpecOptions& opts = {});

/// Same, with a generator seeded from `seed`.
JointSpectrum joint_eigenvalues(const CommutingPair& pair, std::uint64_t seed = 42,
                                const JointSpecOptions& opts = {});

/// sigma_min of [A - lambda I; B - mu I].
double joint_residual(const ComplexMatrix& a, const ComplexMatrix& b, cplx lambda, cplx mu);

/// Greedy matching distance between two pair-multisets, measured as
/// max(|dl|, |dm|) per matched pair. Infinity when the sizes differ.
double joint_multiset_distance(const std::vector<std::pair<cplx, cplx>>& lhs,
                               const std::vector<std::pair<cplx, cplx>>& rhs);

std::vector<std::pair<cplx, cplx>> as_pairs(const JointSpectrum& js);

} // namespace tetra
