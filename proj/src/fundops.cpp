#include "tetra/fundops.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace tetra {

OperatorTriple make_triple(const ComplexMatrix& t1, const ComplexMatrix& t2, const ComplexMatrix& t3, double tol) {
    require_same_order(t1, t2, "make_triple");
    require_same_order(t2, t3, "make_triple");
    const double n1 = operator_norm(t1), n2 = operator_norm(t2), n3 = operator_norm(t3);
    OperatorTriple tr{t1, t2, t3, {}};
    tr.residuals = {operator_norm(commutator(t1, t2)), operator_norm(commutator(t1, t3)),
                    operator_norm(commutator(t2, t3))};
    const std::array<double, 3> bounds = {tol * (n1 * n2 + 1.0), tol * (n1 * n3 + 1.0), tol * (n2 * n3 + 1.0)};
    for (std::size_t i = 0; i < 3; ++i) {
        if (tr.residuals[i] > bounds[i]) {
            throw Error(ErrorKind::NotCommuting,
                        "triple does not commute: commutator norm " + std::to_string(tr.residuals[i]),
                        tr.residuals[i]);
        }
    }
    return tr;
}

OperatorTriple adjoint(const OperatorTriple& tr) {
    return {tr.t1.adjoint(), tr.t2.adjoint(), tr.t3.adjoint(), tr.residuals};
}

Defect defect(const ComplexMatrix& t, const Tolerance& tol) {
    require_square(t, "defect");
    const Eigen::Index n = t.rows();
    const double norm = operator_norm(t);
    if (norm > 1.0 + tol.bound(1.0)) {
        throw Error(ErrorKind::NotContraction, "not a contraction: ||T|| = " + std::to_string(norm), norm);
    }
    Defect out;
    out.d = ComplexMatrix::Zero(n, n);
    out.basis = ComplexMatrix::Zero(n, 0);
    if (n == 0) return out;

    const ComplexMatrix gap = identity(n) - t.adjoint() * t;

    // exactly diagonal gap: keep coordinate vectors, stable by decreasing value
    bool diagonal = true;
    for (Eigen::Index j = 0; j < n && diagonal; ++j)
        for (Eigen::Index i = 0; i < n && diagonal; ++i)
            if (i != j && gap(i, j) != 0.0) diagonal = false;
    if (diagonal) {
        Eigen::VectorXd lam = gap.diagonal().real();
        const double cutoff = tol.abs + tol.rel * std::max(lam.maxCoeff(), 0.0);
        std::vector<Eigen::Index> keep;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (lam(i) > cutoff) {
                out.d(i, i) = std::sqrt(lam(i));
                keep.push_back(i);
            }
        }
        std::stable_sort(keep.begin(), keep.end(), [&](Eigen::Index a, Eigen::Index b) { return lam(a) > lam(b); });
        out.basis = ComplexMatrix::Zero(n, static_cast<Eigen::Index>(keep.size()));
        for (std::size_t k = 0; k < keep.size(); ++k) out.basis(keep[k], static_cast<Eigen::Index>(k)) = 1.0;
        return out;
    }

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (gap + gap.adjoint()));
    const Eigen::VectorXd& lam = solver.eigenvalues(); // ascending
    const double cutoff = tol.abs + tol.rel * std::max(lam.maxCoeff(), 0.0);

    Eigen::VectorXd root = Eigen::VectorXd::Zero(n);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (lam(i) > cutoff) {
            root(i) = std::sqrt(lam(i));
            ++rank;
        }
    }
    const ComplexMatrix& v = solver.eigenvectors();
    out.d = v * root.cast<cplx>().asDiagonal() * v.adjoint();
    out.basis.resize(n, rank);
    for (Eigen::Index k = 0; k < rank; ++k) out.basis.col(k) = v.col(n - 1 - k);
    return out;
}

FundamentalPair extract_fundamental(const OperatorTriple& tr, const Tolerance& tol) {
    const Defect def = defect(tr.t3, tol);
    const ComplexMatrix r1 = tr.t1 - tr.t2.adjoint() * tr.t3;
    const ComplexMatrix r2 = tr.t2 - tr.t1.adjoint() * tr.t3;

    FundamentalPair fp;
    fp.basis = def.basis;
    try {
        const RangeSolve s1 = range_restricted_solve(def.d, r1, tol);
        const RangeSolve s2 = range_restricted_solve(def.d, r2, tol);
        fp.a1 = def.basis.adjoint() * s1.x * def.basis;
        fp.a2 = def.basis.adjoint() * s2.x * def.basis;
        fp.residual1 = s1.residual;
        fp.residual2 = s2.residual;
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::UnsolvableOnRange) throw;
        throw Error(ErrorKind::FundamentalEquationsFail,
                    std::string("fundamental equations fail: ") + e.what(), e.residual());
    }
    return fp;
}

RadiusCheck verify_fundamental_radius(const ComplexMatrix& a1, const ComplexMatrix& a2, int grid, double tol,
                                      const NumericalRadiusOptions& nr) {
    require_same_order(a1, a2, "verify_fundamental_radius");
    grid = std::max(grid, 16);
    const CircleMax cm = maximize_on_circle(
        [&](double t) { return numerical_radius(a1 + std::polar(1.0, t) * a2, nr); }, grid);
    RadiusCheck out;
    out.max_radius = cm.value;
    out.argmax = std::polar(1.0, cm.theta);
    out.ok = out.max_radius <= 1.0 + tol;
    return out;
}

const char* to_string(SufficiencyVerdict v) {
    switch (v) {
    case SufficiencyVerdict::Certified: return "Certified";
    case SufficiencyVerdict::Inconclusive: return "Inconclusive";
    case SufficiencyVerdict::NotContraction: return "NotContraction";
    }
    return "Unknown";
}

Sufficiency check_sufficiency(const OperatorTriple& tr, const FundamentalPair& fp, const SufficiencyOptions& opts) {
    Sufficiency out;
    const std::array<const ComplexMatrix*, 3> ts = {&tr.t1, &tr.t2, &tr.t3};
    for (std::size_t i = 0; i < 3; ++i) {
        const double nrm = operator_norm(*ts[i]);
        if (nrm > 1.0 + opts.tol) {
            out.verdict = SufficiencyVerdict::NotContraction;
            out.notes.push_back("not contraction: ||T" + std::to_string(i + 1) + "|| = " + std::to_string(nrm));
        }
    }
    if (out.verdict == SufficiencyVerdict::NotContraction) return out;

    const double scale = std::max(1.0, operator_norm(fp.a1) * operator_norm(fp.a2));
    out.commutator = operator_norm(commutator(fp.a1, fp.a2));
    out.normality_gap =
        operator_norm(commutator(fp.a1.adjoint(), fp.a1) - commutator(fp.a2.adjoint(), fp.a2));
    const RadiusCheck rc = verify_fundamental_radius(fp, opts.radius_grid, opts.tol, opts.nr);
    out.max_radius = rc.max_radius;

    bool certified = true;
    if (out.commutator > opts.tol * scale) {
        certified = false;
        out.notes.push_back("A1 and A2 do not commute");
    }
    if (out.normality_gap > opts.tol * scale) {
        certified = false;
        out.notes.push_back("[A1*,A1] != [A2*,A2]");
    }
    if (!rc.ok) {
        certified = false;
        out.notes.push_back("numerical radius of A1 + z A2 exceeds 1");
    }
    out.verdict = certified ? SufficiencyVerdict::Certified : SufficiencyVerdict::Inconclusive;
    return out;
}

Sufficiency check_sufficiency(const OperatorTriple& tr, const SufficiencyOptions& opts) {
    try {
        return check_sufficiency(tr, extract_fundamental(tr), opts);
    } catch (const Error& e) {
        Sufficiency out;
        out.verdict = e.kind() == ErrorKind::NotContraction ? SufficiencyVerdict::NotContraction
                                                            : SufficiencyVerdict::Inconclusive;
        out.notes.emplace_back(e.what());
        return out;
    }
}

bool check_E_isometry(const OperatorTriple& tr, double tol) {
    const Eigen::Index n = tr.order();
    return operator_norm(tr.t3.adjoint() * tr.t3 - identity(n)) <= tol &&
           operator_norm(tr.t2) <= 1.0 + tol &&
           operator_norm(tr.t1 - tr.t2.adjoint() * tr.t3) <= tol;
}

bool check_E_unitary(const OperatorTriple& tr, double tol) {
    const Eigen::Index n = tr.order();
    const bool unitary = operator_norm(tr.t3.adjoint() * tr.t3 - identity(n)) <= tol &&
                         operator_norm(tr.t3 * tr.t3.adjoint() - identity(n)) <= tol;
    if (!unitary || operator_norm(tr.t2) > 1.0 + tol ||
        operator_norm(tr.t1 - tr.t2.adjoint() * tr.t3) > tol)
        return false;
    // E-unitaries consist of normal operators
    const double normal_tol = std::sqrt(tol);
    return operator_norm(commutator(tr.t1.adjoint(), tr.t1)) <= normal_tol &&
           operator_norm(commutator(tr.t2.adjoint(), tr.t2)) <= normal_tol;
}

bool check_pure(const ComplexMatrix& t3, int powers, double tol) {
    require_square(t3, "check_pure");
    if (t3.rows() == 0) return true;
    ComplexMatrix p = t3.adjoint();
    const ComplexMatrix step = t3.adjoint();
    for (int k = 1; k <= powers; ++k) {
        if (operator_norm(p) <= tol) return true;
        p = p * step;
    }
    return spectral_radius(t3) < 1.0 - tol;
}

} // namespace tetra
