#include "tetra/model.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace tetra {

ComplexMatrix shift_matrix(Eigen::Index modes) {
    ComplexMatrix s = ComplexMatrix::Zero(modes, modes);
    for (Eigen::Index k = 0; k + 1 < modes; ++k) s(k + 1, k) = 1.0;
    return s;
}

ComplexMatrix circulant_shift(Eigen::Index modes) {
    ComplexMatrix s = shift_matrix(modes);
    if (modes > 0) s(0, modes - 1) = 1.0;
    return s;
}

namespace {

ModelTriple assemble(const ComplexMatrix& a1, const ComplexMatrix& a2, Eigen::Index modes, double tol,
                     const ComplexMatrix& s, bool periodic) {
    require_same_order(a1, a2, "build_model");
    if (modes < 2) throw Error(ErrorKind::DimensionMismatch, "build_model: at least 2 modes required");
    ModelTriple mt;
    mt.a1 = a1;
    mt.a2 = a2;
    mt.n = a1.rows();
    mt.modes = modes;
    mt.periodic = periodic;

    const double n1 = operator_norm(a1), n2 = operator_norm(a2);
    mt.commutator = operator_norm(commutator(a1, a2));
    mt.normality_gap = operator_norm(commutator(a1.adjoint(), a1) - commutator(a2.adjoint(), a2));
    const double bound = tol * (n1 * n2 + 1.0);
    if (mt.commutator > bound) {
        throw Error(ErrorKind::HypothesisViolated,
                    "model refused: ||[A1,A2]|| = " + std::to_string(mt.commutator), mt.commutator);
    }
    if (mt.normality_gap > tol * (n1 * n1 + n2 * n2 + 1.0)) {
        throw Error(ErrorKind::HypothesisViolated,
                    "model refused: ||[A1*,A1] - [A2*,A2]|| = " + std::to_string(mt.normality_gap),
                    mt.normality_gap);
    }

    const ComplexMatrix id_modes = identity(modes);
    mt.q1 = kron(id_modes, a1.adjoint()) + kron(s, a2);
    mt.q2 = kron(id_modes, a2.adjoint()) + kron(s, a1);
    mt.v = kron(s, identity(mt.n));
    mt.residuals = {operator_norm(commutator(mt.q1, mt.q2)), operator_norm(commutator(mt.q1, mt.v)),
                    operator_norm(commutator(mt.q2, mt.v))};
    return mt;
}

ComplexMatrix block(const ComplexMatrix& m, Eigen::Index n, Eigen::Index modes) {
    return m.topLeftCorner(n * modes, n * modes);
}

} // namespace

ModelTriple build_model(const ComplexMatrix& a1, const ComplexMatrix& a2, Eigen::Index modes, double tol) {
    return assemble(a1, a2, modes, tol, shift_matrix(modes), false);
}

ModelTriple build_periodic_model(const ComplexMatrix& a1, const ComplexMatrix& a2, Eigen::Index modes,
                                 double tol) {
    return assemble(a1, a2, modes, tol, circulant_shift(modes), true);
}

OperatorTriple compress_to_comodel(const ModelTriple& mt, Eigen::Index m) {
    if (m < 2 || m > mt.modes)
        throw Error(ErrorKind::DimensionMismatch, "compress_to_comodel: need 2 <= m <= N");
    OperatorTriple tr{block(mt.q1, mt.n, m), block(mt.q2, mt.n, m), block(mt.v, mt.n, m), {}};
    tr.residuals = {operator_norm(commutator(tr.t1, tr.t2)), operator_norm(commutator(tr.t1, tr.t3)),
                    operator_norm(commutator(tr.t2, tr.t3))};
    return tr;
}

Embedding embed_W(const OperatorTriple& tr, Eigen::Index modes, const std::optional<ComplexMatrix>& basis,
                  double tail_tol) {
    const ComplexMatrix& t = tr.t3;
    require_square(t, "embed_W");
    if (!check_pure(t)) throw Error(ErrorKind::NotPure, "embed_W: T3 is not pure");
    const Eigen::Index d = t.rows();
    const ComplexMatrix ts = t.adjoint();

    Embedding emb;
    emb.tail = operator_norm(matrix_power(ts, static_cast<unsigned>(modes)));
    if (emb.tail > tail_tol) {
        throw Error(ErrorKind::TailNotReached,
                    "embed_W: ||T3*^N|| = " + std::to_string(emb.tail) + " at N = " + std::to_string(modes),
                    emb.tail);
    }
    const Defect def = defect(ts);
    emb.basis = basis ? *basis : def.basis;
    const Eigen::Index r = emb.basis.cols();
    const ComplexMatrix lead = emb.basis.adjoint() * def.d;

    emb.w = ComplexMatrix::Zero(modes * r, d);
    ComplexMatrix power = identity(d);
    for (Eigen::Index k = 0; k < modes; ++k) {
        emb.w.middleRows(k * r, r) = lead * power;
        power = power * ts;
    }
    return emb;
}

Dilation dilate(const OperatorTriple& tr, Eigen::Index modes, double tail_tol) {
    Dilation out;
    out.adjoint_fundamental = extract_fundamental(adjoint(tr));
    out.model = build_model(out.adjoint_fundamental.a1, out.adjoint_fundamental.a2, modes);
    out.embedding = embed_W(tr, modes, out.adjoint_fundamental.basis, tail_tol);
    return out;
}

DilationReport verify_dilation(const OperatorTriple& tr, const ModelTriple& mt, const ComplexMatrix& w,
                               int max_degree) {
    DilationReport rep;
    const ComplexMatrix ws = w.adjoint();
    rep.intertwining = {operator_norm(ws * mt.q1 - tr.t1 * ws), operator_norm(ws * mt.q2 - tr.t2 * ws),
                        operator_norm(ws * mt.v - tr.t3 * ws)};
    rep.isometry_defect = operator_norm(ws * w - identity(w.cols()));

    max_degree = std::max(max_degree, 0);
    auto powers = [&](const ComplexMatrix& m) {
        std::vector<ComplexMatrix> p{identity(m.rows())};
        for (int k = 1; k <= max_degree; ++k) p.push_back(p.back() * m);
        return p;
    };
    const auto q1 = powers(mt.q1), q2 = powers(mt.q2), v = powers(mt.v);
    const auto t1 = powers(tr.t1), t2 = powers(tr.t2), t3 = powers(tr.t3);
    for (int a = 0; a <= max_degree; ++a) {
        for (int b = 0; a + b <= max_degree; ++b) {
            const ComplexMatrix qab = q1[a] * q2[b];
            const ComplexMatrix tab = t1[a] * t2[b];
            for (int c = 0; a + b + c <= max_degree; ++c) {
                const double r = operator_norm(ws * qab * v[c] * w - tab * t3[c]);
                ++rep.monomials;
                if (rep.monomials == 1 || r > rep.monomial_max) {
                    rep.monomial_max = r;
                    rep.worst_monomial = {a, b, c};
                }
            }
        }
    }
    return rep;
}

namespace {

ComplexMatrix resolvent(const ComplexMatrix& t, cplx z) {
    // (I - z T*)^{-1}
    const Eigen::Index n = t.rows();
    const Eigen::PartialPivLU<ComplexMatrix> lu(identity(n) - z * t.adjoint());
    if (n > 0 && !(lu.rcond() > 1e-14)) {
        throw Error(ErrorKind::OutsideResolventSet, "z outside the resolvent set: I - z T* is singular",
                    lu.rcond());
    }
    return lu.inverse();
}

} // namespace

ComplexMatrix characteristic_function(const ComplexMatrix& t, cplx z) {
    require_square(t, "characteristic_function");
    const Defect dt = defect(t), dts = defect(t.adjoint());
    const ComplexMatrix theta = -t + z * dts.d * resolvent(t, z) * dt.d;
    return dts.basis.adjoint() * theta * dt.basis;
}

double kernel_identity_residual(const ComplexMatrix& t, cplx z, cplx w) {
    require_square(t, "kernel_identity_residual");
    const Defect dts = defect(t.adjoint());
    const ComplexMatrix tw = characteristic_function(t, w), tz = characteristic_function(t, z);
    const Eigen::Index r = dts.basis.cols();
    const ComplexMatrix lhs = identity(r) - tw * tz.adjoint();
    // (I - conj(z) T)^{-1} is the adjoint of (I - z T*)^{-1}
    const ComplexMatrix rhs = (1.0 - w * std::conj(z)) * dts.basis.adjoint() * dts.d * resolvent(t, w) *
                              resolvent(t, z).adjoint() * dts.d * dts.basis;
    return operator_norm(lhs - rhs);
}

ModelIdentityReport verify_model_identity(const OperatorTriple& tr, Eigen::Index modes, Eigen::Index buffer,
                                          double tail_tol) {
    const Embedding emb = embed_W(tr, modes, std::nullopt, tail_tol);
    const ComplexMatrix& t = tr.t3;
    const Defect dt = defect(t), dts = defect(t.adjoint());
    const Eigen::Index rs = dts.basis.cols(), r = dt.basis.cols();

    ModelIdentityReport rep;
    rep.tail = emb.tail;
    rep.modes_checked = std::max<Eigen::Index>(modes - std::max<Eigen::Index>(buffer, 0), 1);
    const Eigen::Index lead = rep.modes_checked;

    std::vector<ComplexMatrix> coeff;
    coeff.push_back(-dts.basis.adjoint() * t * dt.basis);
    const ComplexMatrix left = dts.basis.adjoint() * dts.d, right = dt.d * dt.basis;
    ComplexMatrix power = identity(t.rows());
    for (Eigen::Index k = 1; k < lead; ++k) {
        coeff.push_back(left * power * right);
        power = power * t.adjoint();
    }

    ComplexMatrix m = ComplexMatrix::Zero(lead * rs, lead * r);
    for (Eigen::Index i = 0; i < lead; ++i)
        for (Eigen::Index j = 0; j <= i; ++j) m.block(i * rs, j * r, rs, r) = coeff[i - j];

    const ComplexMatrix w = emb.w.topRows(lead * rs);
    rep.residual = operator_norm(w * w.adjoint() + m * m.adjoint() - identity(lead * rs));
    return rep;
}

} // namespace tetra
