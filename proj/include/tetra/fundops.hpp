#pragma once

// Defect operators, fundamental operators and class predicates for commuting
// triples (T1, T2, T3).

#include <array>
#include <string>
#include <vector>

#include "tetra/linalg.hpp"

namespace tetra {

struct OperatorTriple {
    ComplexMatrix t1, t2, t3;
    std::array<double, 3> residuals{}; ///< ||[T1,T2]||, ||[T1,T3]||, ||[T2,T3]||

    Eigen::Index order() const { return t3.rows(); }
};

/// Throws DimensionMismatch / NotCommuting. Commutators are compared
/// against tol * (||Ti|| ||Tj|| + 1).
OperatorTriple make_triple(const ComplexMatrix& t1, const ComplexMatrix& t2, const ComplexMatrix& t3,
                           double tol = 1e-10);

/// (T1*, T2*, T3*).
OperatorTriple adjoint(const OperatorTriple& tr);

struct Defect {
    ComplexMatrix d;     ///< (I - T*T)^{1/2}
    ComplexMatrix basis; ///< orthonormal columns spanning ran(D), decreasing singular value
};

/// Defect operator of a contraction. Eigenvalues of I - T*T at or below
/// tol.abs + tol.rel * lambda_max are set to zero before the square root, so
/// D has the exact rank of the defect space. When I - T*T is exactly
/// diagonal the basis is made of coordinate vectors (ties keep index order).
/// Throws NotContraction when ||T|| > 1 + tol.
Defect defect(const ComplexMatrix& t, const Tolerance& tol = {});

struct FundamentalPair {
    ComplexMatrix a1, a2;      ///< r x r, in defect-basis coordinates
    ComplexMatrix basis;       ///< d x r, orthonormal, spans ran(D_{T3})
    double residual1 = 0.0;    ///< ||D X1 D - (T1 - T2* T3)||
    double residual2 = 0.0;    ///< ||D X2 D - (T2 - T1* T3)||

    /// A1 and A2 lifted back to the ambient space, B A B*.
    ComplexMatrix ambient_a1() const { return basis * a1 * basis.adjoint(); }
    ComplexMatrix ambient_a2() const { return basis * a2 * basis.adjoint(); }
};

/// Solves T1 - T2* T3 = D A1 D and T2 - T1* T3 = D A2 D on the defect space
/// of T3. Throws NotContraction or FundamentalEquationsFail.
FundamentalPair extract_fundamental(const OperatorTriple& tr, const Tolerance& tol = {});

struct RadiusCheck {
    bool ok = false;
    double max_radius = 0.0;
    cplx argmax{1.0, 0.0};
};

/// max over |z| = 1 of w(A1 + z A2), swept on `grid` points and refined by
/// golden-section search, compared with 1 + tol. The map z -> w(A1 + z A2)
/// is convex (w is a norm), so its maximum over the closed disc is attained
/// on the circle.
RadiusCheck verify_fundamental_radius(const ComplexMatrix& a1, const ComplexMatrix& a2, int grid = 64,
                                      double tol = 1e-8, const NumericalRadiusOptions& nr = {});

inline RadiusCheck verify_fundamental_radius(const FundamentalPair& fp, int grid = 64, double tol = 1e-8,
                                             const NumericalRadiusOptions& nr = {}) {
    return verify_fundamental_radius(fp.a1, fp.a2, grid, tol, nr);
}

enum class SufficiencyVerdict { Certified, Inconclusive, NotContraction };

const char* to_string(SufficiencyVerdict v);

struct Sufficiency {
    SufficiencyVerdict verdict = SufficiencyVerdict::Inconclusive;
    double commutator = 0.0;     ///< ||[A1, A2]||
    double normality_gap = 0.0;  ///< ||[A1*, A1] - [A2*, A2]||
    double max_radius = 0.0;
    std::vector<std::string> notes;
};

struct SufficiencyOptions {
    double tol = 1e-9;
    int radius_grid = 64;
    NumericalRadiusOptions nr{};
};

/// Sufficient-only certificate: commuting A1, A2 with equal self-commutators
/// and w(A1 + z A2) <= 1 on the circle certify an E-contraction. Failing the
/// test never disproves membership; only ||Ti|| > 1 yields NotContraction.
Sufficiency check_sufficiency(const OperatorTriple& tr, const FundamentalPair& fp,
                              const SufficiencyOptions& opts = {});

/// Extracts the fundamental pair first; extraction failure is reported in
/// the verdict rather than thrown.
Sufficiency check_sufficiency(const OperatorTriple& tr, const SufficiencyOptions& opts = {});

/// T3 isometry, ||T2|| <= 1 and T1 = T2* T3.
bool check_E_isometry(const OperatorTriple& tr, double tol = 1e-9);

/// T3 unitary, ||T2|| <= 1 and T1 = T2* T3. A triple passing these tests is
/// also required to have normal T1, T2.
bool check_E_unitary(const OperatorTriple& tr, double tol = 1e-9);

/// T3*^k -> 0. In finite dimension this means spectral radius below one;
/// also accepted when some power up to `powers` vanishes numerically.
bool check_pure(const ComplexMatrix& t3, int powers = 64, double tol = 1e-9);

} // namespace tetra
