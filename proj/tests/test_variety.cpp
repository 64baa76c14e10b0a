#include <doctest.h>

#include <cmath>

#include "support/generators.hpp"
#include "tetra/variety.hpp"

using namespace tetra;
using namespace tetra::testing;

namespace {

ComplexMatrix scalar(cplx x) { return ComplexMatrix::Constant(1, 1, x); }

// self-adjoint pair with sup-norm exactly 1
VarietyParams reflection_pair() {
    ComplexMatrix a = ComplexMatrix::Zero(3, 3), b = ComplexMatrix::Zero(3, 3);
    a(1, 2) = 1;
    a(2, 1) = 1;
    b(0, 0) = 1;
    return make_variety_params(a, b);
}

// A1 = A2 = E12 on C^3
VarietyParams nilpotent_pair() {
    ComplexMatrix a = ComplexMatrix::Zero(3, 3);
    a(0, 1) = 1;
    return make_variety_params(a, a);
}

double point_distance(const TetraPoint& p, const TetraPoint& q) {
    return std::max({std::abs(p.x1 - q.x1), std::abs(p.x2 - q.x2), std::abs(p.x3 - q.x3)});
}

// greedy multiset distance between point lists
double cloud_distance(std::vector<TetraPoint> got, std::vector<TetraPoint> want) {
    if (got.size() != want.size()) return INFINITY;
    double worst = 0.0;
    for (const TetraPoint& w : want) {
        auto best = got.begin();
        for (auto it = got.begin(); it != got.end(); ++it)
            if (point_distance(*it, w) < point_distance(*best, w)) best = it;
        worst = std::max(worst, point_distance(*best, w));
        got.erase(best);
    }
    return worst;
}

} // namespace

TEST_CASE("make_variety_params checks the hypotheses") {
    const VarietyParams r = reflection_pair();
    CHECK(std::abs(r.sup_norm - 1.0) < 1e-12);
    const VarietyParams e = nilpotent_pair();
    CHECK(std::abs(e.sup_norm - 1.0) < 1e-12);

    ComplexMatrix n = ComplexMatrix::Zero(2, 2);
    n(0, 1) = 1;
    try {
        make_variety_params(n, ComplexMatrix::Zero(2, 2));
        FAIL("expected HypothesisViolated");
    } catch (const Error& err) {
        CHECK(err.kind() == ErrorKind::HypothesisViolated);
        CHECK(err.residual() > 0.5);
    }
}

TEST_CASE("sample_variety examples") {
    const VarietyParams zero = make_variety_params(ComplexMatrix::Zero(3, 3), ComplexMatrix::Zero(3, 3));
    const cplx x3(0.3, -0.2);
    const VarietyPointCloud zc = sample_variety(zero, {x3});
    REQUIRE(zc.records.size() == 1);
    CHECK(zc.records[0].points.size() == 3);
    for (const TetraPoint& p : zc.records[0].points) CHECK(point_distance(p, {0, 0, x3}) < 1e-14);

    const cplx a(0.3, 0.1), b(-0.2, 0.25);
    const VarietyParams sc = make_variety_params(scalar(a), scalar(b));
    const VarietyPointCloud s = sample_variety(sc, {x3});
    REQUIRE(s.records[0].points.size() == 1);
    CHECK(point_distance(s.records[0].points[0], {std::conj(a) + x3 * b, std::conj(b) + x3 * a, x3}) < 1e-14);

    const VarietyPointCloud e = sample_variety(nilpotent_pair(), {0.25});
    CHECK(cloud_distance(e.records[0].points, {{0, 0, 0.25}, {0.5, 0.5, 0.25}, {-0.5, -0.5, 0.25}}) < 1e-12);
}

TEST_CASE("sample_variety is independent of the thread count") {
    const VarietyParams vp = reflection_pair();
    const std::vector<cplx> xs = x3_circle_samples({0.0, 0.5, 1.0}, 32);
    SampleOptions one, four;
    four.threads = 4;
    const VarietyPointCloud a = sample_variety(vp, xs, one), b = sample_variety(vp, xs, four);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        CHECK(a.records[i].x3 == b.records[i].x3);
        for (std::size_t k = 0; k < a.records[i].points.size(); ++k)
            CHECK(a.records[i].points[k] == b.records[i].points[k]);
    }
    CHECK(a.point_count() == 3 * xs.size());
}

TEST_CASE("x3_circle_samples layout") {
    const std::vector<cplx> xs = x3_circle_samples({0.0, 0.5}, 4);
    REQUIRE(xs.size() == 5);
    CHECK(xs[0] == cplx(0));
    CHECK(std::abs(xs[1] - 0.5) < 1e-15);
    CHECK(std::abs(xs[2] - cplx(0, 0.5)) < 1e-15);
}

TEST_CASE("pencil_det examples") {
    const VarietyParams zero = make_variety_params(ComplexMatrix::Zero(2, 2), ComplexMatrix::Zero(2, 2));
    CHECK(std::abs(std::abs(pencil_det(zero, {1, 0, 0}, 1, 0)) - 1.0) < 1e-15);

    const VarietyParams e = nilpotent_pair();
    for (const double x : {0.0, 0.5, -0.5}) CHECK(std::abs(pencil_det(e, {x, x, 0.25}, 0.5, 0.5)) < 1e-15);
    CHECK(std::abs(pencil_det(e, {0.3, 0.3, 0.25}, 0.5, 0.5)) > 1e-3);
}

TEST_CASE("classify_distinguished examples") {
    const VarietyParams zero = make_variety_params(ComplexMatrix::Zero(2, 2), ComplexMatrix::Zero(2, 2));
    CHECK(classify_distinguished(zero).verdict == DistinguishedVerdict::Distinguished);

    const DistinguishedReport r46 = classify_distinguished(reflection_pair());
    CHECK(r46.verdict == DistinguishedVerdict::NotDistinguished);
    REQUIRE(r46.witness.has_value());
    CHECK(r46.witness_tag == RegionTag::OtherTopBoundary);
    CHECK(point_distance(*r46.witness, {1, 0, 0}) < 1e-8);

    const DistinguishedReport r47 = classify_distinguished(nilpotent_pair());
    CHECK(r47.verdict == DistinguishedVerdict::DistinguishedEmpirical);
    CHECK(r47.boundary_points > 0);

    ComplexMatrix a = ComplexMatrix::Zero(1, 1);
    a(0, 0) = 0.8;
    CHECK(classify_distinguished(make_variety_params(a, a)).verdict == DistinguishedVerdict::HypothesisViolated);
}

TEST_CASE("check_bDE_criterion examples") {
    const BdeCriterion zero = check_bDE_criterion(make_variety_params(ComplexMatrix::Zero(2, 2), ComplexMatrix::Zero(2, 2)));
    CHECK(zero.disjoint_from_bde);
    CHECK(zero.sup_norm_lt_1);
    CHECK(zero.agree);

    const BdeCriterion e = check_bDE_criterion(nilpotent_pair());
    CHECK_FALSE(e.sup_norm_lt_1);

    // a = b = 1/2: the angle-0 sample x3 = 1 gives (1, 1, 1), which is in bD_E
    const BdeCriterion half = check_bDE_criterion(make_variety_params(scalar(0.5), scalar(0.5)));
    CHECK_FALSE(half.sup_norm_lt_1);
    CHECK_FALSE(half.disjoint_from_bde);
    REQUIRE(half.hit.has_value());
    CHECK(point_distance(*half.hit, {1, 1, 1}) < 1e-12);
}

TEST_CASE("project_to_gamma examples") {
    const std::vector<cplx> xs = x3_circle_samples({0.0, 0.5, 1.0}, 16);

    const VarietyParams zero = make_variety_params(ComplexMatrix::Zero(2, 2), ComplexMatrix::Zero(2, 2));
    for (const GammaProjection& g : project_to_gamma(zero, sample_variety(zero, xs))) {
        CHECK(std::abs(g.point.s) < 1e-15);
        CHECK(g.residual < 1e-15);
    }

    const cplx a(0.3, 0.1), b(-0.2, 0.25);
    const VarietyParams sc = make_variety_params(scalar(a), scalar(b));
    for (const GammaProjection& g : project_to_gamma(sc, sample_variety(sc, xs))) {
        CHECK(std::abs(g.point.s - (std::conj(a + b) + g.point.p * (a + b))) < 1e-14);
        CHECK(g.residual < 1e-14);
    }

    const VarietyParams e = nilpotent_pair();
    for (const GammaProjection& g : project_to_gamma(e, sample_variety(e, xs))) CHECK(g.residual < 1e-12);
}

TEST_CASE("property: strict sup-norm below one keeps the variety inside") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 15; ++t) {
        const auto [a1, a2] = hypothesis_pair(1 + t % 4, rng, 0.9);
        const VarietyParams vp = make_variety_params(a1, a2);
        CHECK(vp.sup_norm < 1.0);
        const VarietyPointCloud cloud = sample_variety(vp, x3_circle_samples(default_radii(), 32));
        for (const VarietyRecord& rec : cloud.records) {
            CHECK(rec.points.size() == static_cast<std::size_t>(vp.order()));
            for (std::size_t k = 0; k < rec.points.size(); ++k) {
                const TetraPoint& p = rec.points[k];
                CHECK(pencil_max_det(vp, p) < 1e-8);
                if (std::abs(p.x3) < 1.0 - 1e-12) {
                    CHECK(rec.tags[k] == RegionTag::Interior);
                    const BetaPair bp = beta_decompose(p);
                    CHECK(std::abs(bp.beta1) + std::abs(bp.beta2) < 1.0);
                } else {
                    CHECK(std::abs(p.x1 - std::conj(p.x2) * p.x3) < 1e-9);
                }
            }
        }
        CHECK(classify_distinguished(vp).verdict == DistinguishedVerdict::Distinguished);
    }
}

TEST_CASE("property: boundary samples satisfy x1 = conj(x2) x3 at sup-norm one") {
    for (const VarietyParams& vp : {reflection_pair(), nilpotent_pair()}) {
        const VarietyPointCloud cloud = sample_variety(vp, x3_circle_samples({1.0}, 64));
        for (const VarietyRecord& rec : cloud.records)
            for (const TetraPoint& p : rec.points) CHECK(std::abs(p.x1 - std::conj(p.x2) * p.x3) < 1e-8);
    }
}

TEST_CASE("property: pencil determinant separates off-variety points") {
    std::mt19937_64 rng(32);
    for (int t = 0; t < 30; ++t) {
        const auto [a1, a2] = hypothesis_pair(2 + t % 3, rng, 0.9);
        const VarietyParams vp = make_variety_params(a1, a2);
        const cplx x3 = in_disc(rng);
        const VarietyRecord rec = sample_variety(vp, {x3}).records[0];
        const TetraPoint on = rec.points[0];
        const TetraPoint off{on.x1 + 0.3 * on_circle(rng), on.x2, x3};
        double gap = INFINITY;
        for (const TetraPoint& p : rec.points) gap = std::min(gap, std::abs(p.x1 - off.x1));
        if (gap < 0.1) continue;
        CHECK(pencil_max_det(vp, on) < 1e-10);
        CHECK(pencil_max_det(vp, off) > 1e-4);
    }
}

TEST_CASE("property: gamma projection lands in the closure") {
    std::mt19937_64 rng(33);
    for (int t = 0; t < 10; ++t) {
        const auto [a1, a2] = hypothesis_pair(1 + t % 3, rng, 0.9);
        const VarietyParams vp = make_variety_params(a1, a2);
        CHECK(numerical_radius(a1 + a2) < 1.0);
        const VarietyPointCloud cloud = sample_variety(vp, x3_circle_samples({0.0, 0.5, 0.9}, 32));
        for (const GammaProjection& g : project_to_gamma(vp, cloud)) {
            CHECK(in_closure(gamma_classify(g.point, Semantics::Closed, 1e-9)));
            CHECK(g.residual < 1e-10);
        }
    }
}
