#pragma once

// Dense complex linear algebra for small operators (n up to a few dozen).
// Storage and the factorizations are Eigen; everything here is a pure
// function of its arguments.

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "tetra/error.hpp"

namespace tetra {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Absolute + relative tolerance. The effective bound for a quantity of
/// magnitude `scale` is abs + rel * scale.
struct Tolerance {
    double abs = 1e-10;
    double rel = 1e-12;

    double bound(double scale) const { return abs + rel * scale; }
};

ComplexMatrix identity(Eigen::Index n);

/// Throws DimensionMismatch unless `m` is square.
void require_square(const ComplexMatrix& m, const char* what);

/// Throws DimensionMismatch unless both are square of the same order.
void require_same_order(const ComplexMatrix& a, const ComplexMatrix& b, const char* what);

bool all_finite(const ComplexMatrix& m);

/// AB - BA.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker product, `a` indexes the outer blocks.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Integer power by repeated squaring.
ComplexMatrix matrix_power(const ComplexMatrix& a, unsigned k);

struct EigenOptions {
    /// Total QR sweeps allowed per unit of matrix order.
    int iterations_per_row = 500;
};

/// All n eigenvalues (with algebraic multiplicity) via Hessenberg reduction
/// and shifted QR. Throws NoConvergence carrying the largest remaining
/// subdiagonal entry.
std::vector<cplx> eigenvalues(const ComplexMatrix& a, const EigenOptions& opts = {});

struct EigenPairs {
    std::vector<cplx> values;
    ComplexMatrix vectors; ///< unit columns, vectors.col(i) goes with values[i]
};

EigenPairs eigen_decompose(const ComplexMatrix& a, const EigenOptions& opts = {});

/// Ascending eigenvalues of the Hermitian part (a + a*)/2.
Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& a);

double spectral_radius(const ComplexMatrix& a);

/// Largest singular value, sqrt(lambda_max(A*A)). Works for rectangular input.
double operator_norm(const ComplexMatrix& a);

/// Smallest singular value.
double min_singular_value(const ComplexMatrix& a);

struct CircleMax {
    double value = 0.0;
    double theta = 0.0;
    double grid_max = 0.0;
};

/// Maximizes f over [0, 2 pi): uniform sweep of `grid` points, then
/// golden-section search in the two cells around each of the best
/// `candidates` local grid maxima.
CircleMax maximize_on_circle(const std::function<double(double)>& f, int grid, int candidates = 4,
                             int iterations = 80);

struct NumericalRadiusOptions {
    int grid = 512;
    int refine_candidates = 4;
    int refine_iterations = 80;
};

struct NumericalRadius {
    double value = 0.0;
    double theta = 0.0;       ///< maximizing rotation
    double grid_max = 0.0;    ///< best value on the uniform grid alone
    double grid_error = 0.0;  ///< ||A|| * pi / grid, bound on (true - grid_max)
};

/// w(A) = max over theta of lambda_max((e^{i theta} A + e^{-i theta} A*)/2),
/// swept on a uniform grid and refined by golden-section search around the
/// best grid maxima. The sweep function is ||A||-Lipschitz in theta.
NumericalRadius numerical_radius_report(const ComplexMatrix& a,
                                        const NumericalRadiusOptions& opts = {});

double numerical_radius(const ComplexMatrix& a, const NumericalRadiusOptions& opts = {});

bool is_hermitian(const ComplexMatrix& a, double tol);

/// Hermitian PSD square root. Eigenvalues in [-tol, 0) are clamped to zero,
/// anything below -tol throws NotPsd.
ComplexMatrix sqrt_psd(const ComplexMatrix& a, const Tolerance& tol = {});

struct RangeSolve {
    ComplexMatrix x;       ///< D^+ R D^+, supported on ran(D)
    ComplexMatrix basis;   ///< orthonormal columns spanning ran(D), by decreasing singular value
    Eigen::VectorXd singular_values; ///< retained singular values of D, decreasing
    double residual = 0.0; ///< ||D X D - R||
};

/// Solves D X D = R for X supported on ran(D). Singular values of the
/// Hermitian PSD D below abs + rel * sigma_max are treated as zero. Throws
/// UnsolvableOnRange when the residual exceeds tol.bound(||R||).
RangeSolve range_restricted_solve(const ComplexMatrix& d, const ComplexMatrix& r,
                                  const Tolerance& tol = {});

/// Greedy nearest-first matching distance between two multisets of equal
/// size: repeatedly pair the closest remaining elements, return the largest
/// paired distance. Infinity when sizes differ.
double multiset_distance(std::vector<cplx> a, std::vector<cplx> b);

} // namespace tetra
