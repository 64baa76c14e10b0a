#include "tetra/vn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

namespace tetra {

namespace {

int max_exponent(const auto& terms, std::size_t v) {
    int m = 0;
    for (const auto& [e, c] : terms) m = std::max(m, e[v]);
    return m;
}

std::array<std::vector<ComplexMatrix>, 3> power_tables(const auto& terms, const OperatorTriple& tr) {
    const std::array<const ComplexMatrix*, 3> ts = {&tr.t1, &tr.t2, &tr.t3};
    std::array<std::vector<ComplexMatrix>, 3> out;
    for (std::size_t v = 0; v < 3; ++v) {
        const int m = max_exponent(terms, v);
        out[v].reserve(static_cast<std::size_t>(m) + 1);
        for (int k = 0; k <= m; ++k) out[v].push_back(matrix_power(*ts[v], static_cast<unsigned>(k)));
    }
    return out;
}

cplx ipow(cplx x, int k) {
    cplx r = 1.0;
    while (k) {
        if (k & 1) r *= x;
        k >>= 1;
        if (k) x *= x;
    }
    return r;
}

cplx monomial(const Exponent& e, const TetraPoint& pt) {
    return ipow(pt.x1, e[0]) * ipow(pt.x2, e[1]) * ipow(pt.x3, e[2]);
}

double point_norm(const Poly3& p, const TetraPoint& pt) {
    return std::abs(eval_poly_point(p, pt));
}

double point_norm(const MatrixPoly3& p, const TetraPoint& pt) {
    return operator_norm(eval_poly_point(p, pt));
}

template <class P>
VarietySup sup_over(const P& p, const VarietyPointCloud& cloud, bool boundary_only) {
    VarietySup out;
    bool any = false;
    for (const auto& rec : cloud.records) {
        for (std::size_t j = 0; j < rec.points.size(); ++j) {
            if (boundary_only && rec.tags[j] != RegionTag::DistinguishedBoundary) continue;
            const double v = point_norm(p, rec.points[j]);
            if (!any || v > out.sup) {
                out.sup = v;
                out.argmax = rec.points[j];
            }
            any = true;
        }
    }
    if (!any) {
        throw Error(ErrorKind::EmptyFilter,
                    "no boundary points in the cloud; sample |x3| = 1 more densely");
    }
    return out;
}

std::string describe(const Poly3& p) { return to_string(p); }

std::string describe(const MatrixPoly3& p) {
    return "matrix polynomial of size " + std::to_string(p.size) + ", degree " + std::to_string(p.degree());
}

template <class P>
VnReport run_vn(const OperatorTriple& tr, const std::vector<P>& polys, const VnOptions& opts) {
    VnReport rep;
    FundamentalPair fp;
    try {
        fp = extract_fundamental(tr);
    } catch (const Error& e) {
        rep.notes.push_back(std::string("theorem hypotheses not met: ") + e.what());
        return rep;
    }
    rep.a1 = fp.a1;
    rep.a2 = fp.a2;
    const double n1 = operator_norm(fp.a1), n2 = operator_norm(fp.a2);
    rep.fundamental_commutator = operator_norm(commutator(fp.a1, fp.a2));
    rep.fundamental_normality_gap =
        operator_norm(commutator(fp.a1.adjoint(), fp.a1) - commutator(fp.a2.adjoint(), fp.a2));
    bool ok = true;
    if (rep.fundamental_commutator > opts.tol * (n1 * n2 + 1.0)) {
        ok = false;
        rep.notes.push_back("theorem hypotheses not met: fundamental operators do not commute");
    }
    if (rep.fundamental_normality_gap > opts.tol * (n1 * n1 + n2 * n2 + 1.0)) {
        ok = false;
        rep.notes.push_back("theorem hypotheses not met: [A1*,A1] != [A2*,A2]");
    }
    if (!check_pure(tr.t3.adjoint())) {
        ok = false;
        rep.notes.push_back("theorem hypotheses not met: T3* is not pure");
    }
    if (!ok) return rep;
    rep.hypotheses_met = true;
    rep.margin_scale = std::max(1.0, std::sqrt(n1 * n1 + n2 * n2));

    VarietyParams vp;
    vp.a1 = fp.a1.adjoint();
    vp.a2 = fp.a2.adjoint();
    vp.commutator = rep.fundamental_commutator;
    vp.normality_gap = rep.fundamental_normality_gap;
    const int grid = std::max(opts.boundary_grid, 1);
    const VarietyPointCloud cloud = sample_variety(vp, x3_circle_samples({1.0}, grid), opts.sampling);
    for (const auto& rec : cloud.records) {
        if (rec.failed) rep.notes.push_back("boundary sample failed: " + rec.error);
        for (const RegionTag tag : rec.tags) {
            if (tag == RegionTag::DistinguishedBoundary)
                ++rep.boundary_points;
            else
                ++rep.dropped_points;
        }
    }

    if (rep.boundary_points == 0 && !polys.empty()) {
        throw Error(ErrorKind::EmptyFilter, "no boundary points in the cloud; sample |x3| = 1 more densely");
    }

    const double spacing = std::numbers::pi / grid;
    rep.entries.resize(polys.size());
    auto work = [&](std::size_t i) {
        const P& p = polys[i];
        VnEntry& e = rep.entries[i];
        e.poly = describe(p);
        e.lhs = operator_norm(eval_poly_triple(p, tr));
        const VarietySup vs = sup_over(p, cloud, true);
        e.rhs = vs.sup;
        e.argmax = vs.argmax;
        e.margin = p.lipschitz() * spacing * rep.margin_scale + opts.tol;
        e.slack = e.rhs + e.margin - e.lhs;
        e.pass = e.lhs <= e.rhs + e.margin;
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(opts.sampling.threads,
                                                             static_cast<unsigned>(polys.size())));
    if (workers == 1) {
        for (std::size_t i = 0; i < polys.size(); ++i) work(i);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < polys.size(); i += workers) work(i);
            });
        for (auto& t : pool) t.join();
    }
    return rep;
}

} // namespace

ComplexMatrix eval_poly_triple(const Poly3& p, const OperatorTriple& tr) {
    const Eigen::Index n = tr.order();
    const auto pw = power_tables(p.terms, tr);
    ComplexMatrix out = ComplexMatrix::Zero(n, n);
    for (const auto& [e, c] : p.terms) out += c * (pw[0][e[0]] * pw[1][e[1]] * pw[2][e[2]]);
    return out;
}

cplx eval_poly_point(const Poly3& p, const TetraPoint& pt) {
    cplx out = 0.0;
    for (const auto& [e, c] : p.terms) out += c * monomial(e, pt);
    return out;
}

ComplexMatrix eval_poly_triple(const MatrixPoly3& p, const OperatorTriple& tr) {
    const Eigen::Index n = tr.order();
    const auto pw = power_tables(p.terms, tr);
    ComplexMatrix out = ComplexMatrix::Zero(p.size * n, p.size * n);
    for (const auto& [e, c] : p.terms) {
        require_square(c, "eval_poly_triple");
        if (c.rows() != p.size) throw Error(ErrorKind::DimensionMismatch, "matrix coefficient of wrong size");
        out += kron(c, pw[0][e[0]] * pw[1][e[1]] * pw[2][e[2]]);
    }
    return out;
}

ComplexMatrix eval_poly_point(const MatrixPoly3& p, const TetraPoint& pt) {
    ComplexMatrix out = ComplexMatrix::Zero(p.size, p.size);
    for (const auto& [e, c] : p.terms) out += monomial(e, pt) * c;
    return out;
}

VarietySup variety_sup(const Poly3& p, const VarietyPointCloud& cloud, bool boundary_only) {
    return sup_over(p, cloud, boundary_only);
}

VarietySup variety_sup(const MatrixPoly3& p, const VarietyPointCloud& cloud, bool boundary_only) {
    return sup_over(p, cloud, boundary_only);
}

bool VnReport::all_pass() const {
    return hypotheses_met && std::all_of(entries.begin(), entries.end(), [](const VnEntry& e) { return e.pass; });
}

std::size_t VnReport::violations() const {
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(), [](const VnEntry& e) { return !e.pass; }));
}

VnReport verify_vn(const OperatorTriple& tr, const std::vector<Poly3>& polys, const VnOptions& opts) {
    return run_vn(tr, polys, opts);
}

VnReport verify_vn(const OperatorTriple& tr, const std::vector<MatrixPoly3>& polys, const VnOptions& opts) {
    return run_vn(tr, polys, opts);
}

} // namespace tetra
