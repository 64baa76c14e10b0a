#include <doctest.h>

#include <cmath>

#include "support/generators.hpp"
#include "tetra/fundops.hpp"
#include "tetra/jointspec.hpp"
#include "tetra/model.hpp"

using namespace tetra;
using namespace tetra::testing;

namespace {

ComplexMatrix scalar(cplx x) { return ComplexMatrix::Constant(1, 1, x); }

OperatorTriple scalar_triple(const TetraPoint& p) { return make_triple(scalar(p.x1), scalar(p.x2), scalar(p.x3)); }

ComplexMatrix nil2() {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 1) = 1;
    return m;
}

// (N2* N3, N2, N3) with N3 diagonal unitary and N2 a diagonal contraction.
OperatorTriple e_unitary(Eigen::Index n, std::mt19937_64& rng) {
    ComplexVector d3(n), d2(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        d3(k) = on_circle(rng);
        d2(k) = in_disc(rng);
    }
    const ComplexMatrix u = random_unitary(n, rng);
    const ComplexMatrix n3 = u * d3.asDiagonal() * u.adjoint();
    const ComplexMatrix n2 = u * d2.asDiagonal() * u.adjoint();
    return make_triple(n2.adjoint() * n3, n2, n3);
}

} // namespace

TEST_CASE("make_triple rejects non-commuting input") {
    try {
        make_triple(nil2(), nil2().adjoint(), identity(2));
        FAIL("expected NotCommuting");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotCommuting);
    }
    CHECK_THROWS_AS(make_triple(identity(2), identity(3), identity(2)), Error);
}

TEST_CASE("defect examples") {
    std::mt19937_64 rng(21);
    const Defect du = defect(random_unitary(4, rng));
    CHECK(du.d.norm() < 1e-7);
    CHECK(du.basis.cols() == 0);

    const Defect d0 = defect(ComplexMatrix::Zero(3, 3));
    CHECK((d0.d - identity(3)).norm() < 1e-14);
    CHECK(d0.basis.cols() == 3);

    const Eigen::Index n = 6;
    const Defect ds = defect(shift_matrix(n));
    ComplexMatrix proj = ComplexMatrix::Zero(n, n);
    proj(n - 1, n - 1) = 1;
    CHECK((ds.d - proj).norm() == 0.0);
    REQUIRE(ds.basis.cols() == 1);
    CHECK(std::abs(std::abs(ds.basis(n - 1, 0)) - 1.0) < 1e-15);

    try {
        defect(2.0 * identity(2));
        FAIL("expected NotContraction");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotContraction);
    }
}

TEST_CASE("extract_fundamental examples") {
    std::mt19937_64 rng(22);
    const OperatorTriple eu = e_unitary(3, rng);
    const FundamentalPair fe = extract_fundamental(eu);
    CHECK(fe.a1.size() == 0);
    CHECK(fe.basis.cols() == 0);
    CHECK((eu.t1 - eu.t2.adjoint() * eu.t3).norm() < 1e-12);

    const TetraPoint p = beta_compose({0.3, cplx(0, 0.2)}, cplx(0.4, 0.3));
    const FundamentalPair fs = extract_fundamental(scalar_triple(p));
    const BetaPair b = beta_decompose(p);
    CHECK(std::abs(fs.a1(0, 0) - b.beta1) < 1e-13);
    CHECK(std::abs(fs.a2(0, 0) - b.beta2) < 1e-13);

    // compression of a model recovers (A1*, A2*) on the last-mode block
    ComplexMatrix a1 = ComplexMatrix::Zero(3, 3), a2 = ComplexMatrix::Zero(3, 3);
    a1(1, 2) = 0.4;
    a1(2, 1) = 0.4;
    a2(0, 0) = 0.5;
    const Eigen::Index m = 4;
    const OperatorTriple comp = compress_to_comodel(build_model(a1, a2, 8), m);
    const FundamentalPair fm = extract_fundamental(comp);
    ComplexMatrix last = ComplexMatrix::Zero(m, m);
    last(m - 1, m - 1) = 1;
    CHECK((fm.ambient_a1() - kron(last, a1.adjoint())).norm() < 1e-13);
    CHECK((fm.ambient_a2() - kron(last, a2.adjoint())).norm() < 1e-13);
}

TEST_CASE("extract_fundamental fails off the contraction class") {
    // T1 - T2* T3 = 1 with D_{T3} = 0
    try {
        extract_fundamental(make_triple(scalar(1.0), scalar(0.0), scalar(1.0)));
        FAIL("expected FundamentalEquationsFail");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::FundamentalEquationsFail);
    }
}

TEST_CASE("verify_fundamental_radius examples") {
    const RadiusCheck zero = verify_fundamental_radius(ComplexMatrix::Zero(2, 2), ComplexMatrix::Zero(2, 2));
    CHECK(zero.ok);
    CHECK(zero.max_radius == 0.0);

    const RadiusCheck diag = verify_fundamental_radius(scalar(0.6), scalar(cplx(0, 0.4)));
    CHECK(diag.ok);
    CHECK(std::abs(diag.max_radius - 1.0) < 1e-9);

    const RadiusCheck nn = verify_fundamental_radius(nil2(), nil2());
    CHECK(nn.ok);
    CHECK(std::abs(nn.max_radius - 1.0) < 1e-9);
    CHECK(std::abs(nn.argmax - 1.0) < 1e-6);
    // numerical radius oracle: w([[0,2],[0,0]]) = 1
    CHECK(std::abs(numerical_radius(2.0 * nil2()) - 1.0) < 1e-10);

    CHECK_FALSE(verify_fundamental_radius(scalar(0.7), scalar(0.7)).ok);
}

TEST_CASE("check_sufficiency examples") {
    const TetraPoint p = beta_compose({0.3, cplx(0.1, 0.2)}, cplx(-0.5, 0.2));
    CHECK(check_sufficiency(scalar_triple(p)).verdict == SufficiencyVerdict::Certified);

    ComplexMatrix a1 = ComplexMatrix::Zero(2, 2);
    a1(0, 1) = 0.5;
    const OperatorTriple comp = compress_to_comodel(build_model(a1, a1, 6), 3);
    CHECK(check_sufficiency(comp).verdict == SufficiencyVerdict::Certified);

    const Sufficiency big = check_sufficiency(make_triple(scalar(0), scalar(0), scalar(1.5)));
    CHECK(big.verdict == SufficiencyVerdict::NotContraction);
    CHECK_FALSE(big.notes.empty());
}

TEST_CASE("check_E_isometry and check_E_unitary examples") {
    ComplexMatrix a = ComplexMatrix::Zero(1, 1);
    a(0, 0) = 0.5;
    const ModelTriple trunc = build_model(a, a, 6);
    CHECK_FALSE(check_E_isometry(trunc.triple()));

    const ModelTriple periodic = build_periodic_model(a, ComplexMatrix::Zero(1, 1), 6);
    CHECK(check_E_unitary(periodic.triple()) == check_E_isometry(periodic.triple()));

    std::mt19937_64 rng(23);
    const OperatorTriple eu = e_unitary(4, rng);
    CHECK(check_E_isometry(eu));
    CHECK(check_E_unitary(eu));

    CHECK(check_E_unitary(make_triple(scalar(0), scalar(0), scalar(1))));
    const cplx x2(0.3, -0.4), x3 = std::polar(1.0, 0.7);
    CHECK(check_E_unitary(make_triple(scalar(std::conj(x2) * x3), scalar(x2), scalar(x3))));
    CHECK_FALSE(check_E_unitary(make_triple(scalar(0), scalar(0), scalar(0.9))));
}

TEST_CASE("check_pure examples") {
    std::mt19937_64 rng(24);
    CHECK(check_pure(ComplexMatrix::Zero(3, 3)));
    CHECK_FALSE(check_pure(random_unitary(3, rng)));
    CHECK(check_pure(shift_matrix(10)));
}

TEST_CASE("property: fundamental solutions are unique and live on the defect space") {
    std::mt19937_64 rng(25);
    for (int t = 0; t < 20; ++t) {
        const auto [a1, a2] = hypothesis_pair(1 + t % 3, rng);
        const OperatorTriple comp = compress_to_comodel(build_model(a1, a2, 6), 3);
        const FundamentalPair fp = extract_fundamental(comp);
        const Defect d = defect(comp.t3);
        // any other solution X on ran D satisfies D (X - A) D = 0, hence X = A there
        const ComplexMatrix x1 = fp.ambient_a1();
        CHECK((d.d * x1 * d.d - (comp.t1 - comp.t2.adjoint() * comp.t3)).norm() < 1e-10);
        const ComplexMatrix p = fp.basis * fp.basis.adjoint();
        CHECK((p * x1 * p - x1).norm() < 1e-12);
    }
}

TEST_CASE("property: adjoint triples of model compressions also extract") {
    std::mt19937_64 rng(26);
    for (int t = 0; t < 20; ++t) {
        const auto [a1, a2] = hypothesis_pair(1 + t % 4, rng);
        const OperatorTriple comp = compress_to_comodel(build_model(a1, a2, 8), 4);
        CHECK_NOTHROW(extract_fundamental(adjoint(comp)));
    }
}

TEST_CASE("property: radius check is closed under the adjoint swaps") {
    std::mt19937_64 rng(27);
    for (int t = 0; t < 30; ++t) {
        const Eigen::Index n = 1 + t % 4;
        ComplexMatrix a1 = random_matrix(n, rng), a2 = random_matrix(n, rng);
        const double s = verify_fundamental_radius(a1, a2, 256).max_radius;
        a1 /= s;
        a2 /= s;
        CHECK(verify_fundamental_radius(a1.adjoint(), a2, 256, 1e-6).ok);
        CHECK(verify_fundamental_radius(a1, a2.adjoint(), 256, 1e-6).ok);
    }
}

TEST_CASE("property: E-unitary implies E-isometry and spectrum on the distinguished boundary") {
    std::mt19937_64 rng(28);
    for (int t = 0; t < 20; ++t) {
        const OperatorTriple eu = e_unitary(1 + t % 5, rng);
        REQUIRE(check_E_unitary(eu));
        CHECK(check_E_isometry(eu));
        // pair (x1, x2) with (x2, x3) through the shared x2
        const JointSpectrum js = joint_eigenvalues(verify_commuting(eu.t1, eu.t2, 1e-8), rng);
        const JointSpectrum j3 = joint_eigenvalues(verify_commuting(eu.t2, eu.t3, 1e-8), rng);
        for (const auto& pr : js.pairs) {
            double best = INFINITY;
            cplx x3{};
            for (const auto& q : j3.pairs)
                if (std::abs(q.lambda - pr.mu) < best) {
                    best = std::abs(q.lambda - pr.mu);
                    x3 = q.mu;
                }
            CHECK(classify_tetra({pr.lambda, pr.mu, x3}, Semantics::Open, 1e-7) ==
                  RegionTag::DistinguishedBoundary);
        }
    }
}
