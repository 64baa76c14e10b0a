#pragma once

// Polynomial calculus for commuting triples and a sampled check of the
// von Neumann inequality over the boundary part of the variety attached to
// a triple.

#include <optional>
#include <string>
#include <vector>

#include "tetra/fundops.hpp"
#include "tetra/poly.hpp"
#include "tetra/variety.hpp"

namespace tetra {

/// sum c T1^i T2^j T3^k, powers by repeated squaring.
ComplexMatrix eval_poly_triple(const Poly3& p, const OperatorTriple& tr);

cplx eval_poly_point(const Poly3& p, const TetraPoint& pt);

/// sum C (x) T1^i T2^j T3^k, coefficient index outermost.
ComplexMatrix eval_poly_triple(const MatrixPoly3& p, const OperatorTriple& tr);

ComplexMatrix eval_poly_point(const MatrixPoly3& p, const TetraPoint& pt);

struct VarietySup {
    double sup = 0.0;
    TetraPoint argmax;
};

/// max |p| over the cloud; with boundary_only, over points tagged
/// DistinguishedBoundary. Throws EmptyFilter when nothing survives.
VarietySup variety_sup(const Poly3& p, const VarietyPointCloud& cloud, bool boundary_only = true);
VarietySup variety_sup(const MatrixPoly3& p, const VarietyPointCloud& cloud, bool boundary_only = true);

struct VnOptions {
    int boundary_grid = 2048;
    double tol = 1e-9;
    SampleOptions sampling{};
};

struct VnEntry {
    std::string poly;
    double lhs = 0.0;     ///< ||p(T1, T2, T3)||
    double rhs = 0.0;     ///< sampled max over the boundary cloud
    double margin = 0.0;  ///< Lipschitz(p) * pi / grid * scale + tol
    double slack = 0.0;   ///< rhs + margin - lhs
    bool pass = false;
    TetraPoint argmax;
};

struct VnReport {
    bool hypotheses_met = false;
    std::vector<std::string> notes;
    ComplexMatrix a1, a2;            ///< fundamental operators of the triple
    double fundamental_commutator = 0.0;
    double fundamental_normality_gap = 0.0;
    std::size_t boundary_points = 0;
    std::size_t dropped_points = 0;  ///< boundary samples not tagged DistinguishedBoundary
    double margin_scale = 1.0;       ///< max(1, sqrt(||A1||^2 + ||A2||^2))
    std::vector<VnEntry> entries;

    bool all_pass() const;
    std::size_t violations() const;
};

/// Checks ||p(T)|| <= max |p| over the boundary of the variety. The
/// comparison set is the joint spectrum of (A1 + x3 A2*, A2 + x3 A1*) at
/// |x3| = 1, where (A1, A2) are the fundamental operators of the triple:
/// the dilation bound runs through p_*(x) = conj(p(conj x)) on the variety
/// of (A1* + x3 A2, A2* + x3 A1), and conjugating that variety gives this
/// set. Hypotheses (extraction, [A1, A2] = 0, equal self-commutators,
/// purity of T3*) that fail are reported with no entries.
VnReport verify_vn(const OperatorTriple& tr, const std::vector<Poly3>& polys, const VnOptions& opts = {});
VnReport verify_vn(const OperatorTriple& tr, const std::vector<MatrixPoly3>& polys, const VnOptions& opts = {});

} // namespace tetra
