#pragma once

// Truncated Hardy-space models. The space H^2 (x) C^n is cut to its first N
// Fourier modes and laid out mode-major: block k (rows k n .. k n + n - 1)
// holds the coefficient of z^k. The shift S sends e_k to e_{k+1} and kills
// the last mode.

#include <array>
#include <optional>

#include "tetra/fundops.hpp"

namespace tetra {

inline constexpr const char* kModeMajorLayout = "mode-major";

/// N x N truncated shift, S e_k = e_{k+1}, S e_{N-1} = 0.
ComplexMatrix shift_matrix(Eigen::Index modes);

/// N x N cyclic shift, e_{N-1} wraps to e_0.
ComplexMatrix circulant_shift(Eigen::Index modes);

struct ModelTriple {
    ComplexMatrix q1, q2, v;
    ComplexMatrix a1, a2;
    Eigen::Index n = 0;       ///< fiber dimension
    Eigen::Index modes = 0;   ///< N
    double commutator = 0.0;  ///< ||[A1, A2]||
    double normality_gap = 0.0; ///< ||[A1*, A1] - [A2*, A2]||
    std::array<double, 3> residuals{}; ///< ||[Q1,Q2]||, ||[Q1,V]||, ||[Q2,V]||
    bool periodic = false;

    OperatorTriple triple() const { return {q1, q2, v, residuals}; }
};

/// Q1 = I (x) A1* + S (x) A2, Q2 = I (x) A2* + S (x) A1, V = S (x) I.
/// Refuses parameters that violate [A1, A2] = 0 or [A1*, A1] = [A2*, A2]
/// beyond tol * (||A1|| ||A2|| + 1) (HypothesisViolated).
ModelTriple build_model(const ComplexMatrix& a1, const ComplexMatrix& a2, Eigen::Index modes,
                        double tol = 1e-9);

/// Same blocks with the cyclic shift in place of S; V is then unitary.
ModelTriple build_periodic_model(const ComplexMatrix& a1, const ComplexMatrix& a2, Eigen::Index modes,
                                 double tol = 1e-9);

/// P_m Q_i restricted to the first m modes. The span of the first m modes
/// is invariant under every Q_i*, so the result is a compression to a
/// co-invariant subspace with nilpotent T3.
OperatorTriple compress_to_comodel(const ModelTriple& mt, Eigen::Index m);

struct Embedding {
    ComplexMatrix w;     ///< (N r) x d, mode-major
    ComplexMatrix basis; ///< d x r, orthonormal basis of ran D_{T3*}
    double tail = 0.0;   ///< ||T3*^N||
};

/// W h = sum_k z^k (x) B* D_{T3*} T3*^k h for k < N, with B = `basis` or the
/// defect basis of T3*. Throws NotPure unless T3 is pure, TailNotReached
/// when ||T3*^N|| > tail_tol.
Embedding embed_W(const OperatorTriple& tr, Eigen::Index modes,
                  const std::optional<ComplexMatrix>& basis = std::nullopt, double tail_tol = 1e-6);

struct Dilation {
    ModelTriple model;
    Embedding embedding;
    FundamentalPair adjoint_fundamental; ///< of (T1*, T2*, T3*)
};

/// Model on ran D_{T3*} from the fundamental operators of the adjoint
/// triple, together with the matching W.
Dilation dilate(const OperatorTriple& tr, Eigen::Index modes, double tail_tol = 1e-6);

struct DilationReport {
    std::array<double, 3> intertwining{}; ///< ||W*Q1 - T1 W*||, ||W*Q2 - T2 W*||, ||W*V - T3 W*||
    double monomial_max = 0.0;            ///< max ||W* Q1^a Q2^b V^c W - T1^a T2^b T3^c||
    std::array<int, 3> worst_monomial{};
    double isometry_defect = 0.0;         ///< ||W*W - I||
    int monomials = 0;
};

/// Report only; nothing is thrown for large residuals.
DilationReport verify_dilation(const OperatorTriple& tr, const ModelTriple& mt, const ComplexMatrix& w,
                               int max_degree);

/// Theta_T(z) = [-T + z D_{T*} (I - z T*)^{-1} D_T] restricted to ran D_T,
/// as an r* x r matrix from the defect basis of T to that of T*. Throws
/// OutsideResolventSet when I - z T* is numerically singular.
ComplexMatrix characteristic_function(const ComplexMatrix& t, cplx z);

/// || I - Theta(w) Theta(z)* - (1 - w conj(z)) B* D_{T*} (I - w T*)^{-1} (I - conj(z) T)^{-1} D_{T*} B ||
/// with B the defect basis of T*.
double kernel_identity_residual(const ComplexMatrix& t, cplx z, cplx w);

struct ModelIdentityReport {
    double residual = 0.0;     ///< ||(W W* + M M* - I)|| on the leading modes
    double tail = 0.0;         ///< ||T3*^N||
    Eigen::Index modes_checked = 0;
};

/// Block-Toeplitz section M of multiplication by Theta_{T3} (Taylor
/// coefficients -T3 and D_{T3*} T3*^{k-1} D_{T3}) against W W*, on the first
/// N - buffer modes.
ModelIdentityReport verify_model_identity(const OperatorTriple& tr, Eigen::Index modes, Eigen::Index buffer = 8,
                                          double tail_tol = 1e-6);

} // namespace tetra
