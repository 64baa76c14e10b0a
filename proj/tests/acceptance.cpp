// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Seeds are fixed, so every run checks the same instances.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "support/generators.hpp"
#include "tetra/fundops.hpp"
#include "tetra/jointspec.hpp"
#include "tetra/model.hpp"
#include "tetra/variety.hpp"
#include "tetra/vn.hpp"

using namespace tetra;
using namespace tetra::testing;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond && pass) detail << "first failure: " << what << "; ";
        pass = pass && cond;
    }
};

ComplexMatrix scalar(cplx x) { return ComplexMatrix::Constant(1, 1, x); }

ComplexMatrix e12(Eigen::Index n) {
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    m(0, 1) = 1;
    return m;
}

OperatorTriple t3_only(const ComplexMatrix& t3) {
    const ComplexMatrix z = ComplexMatrix::Zero(t3.rows(), t3.cols());
    return make_triple(z, z, t3);
}

double point_distance(const TetraPoint& p, const TetraPoint& q) {
    return std::max({std::abs(p.x1 - q.x1), std::abs(p.x2 - q.x2), std::abs(p.x3 - q.x3)});
}

// m x m projection onto the last mode
ComplexMatrix last_mode(Eigen::Index m) {
    ComplexMatrix p = ComplexMatrix::Zero(m, m);
    p(m - 1, m - 1) = 1;
    return p;
}

Outcome criterion1() {
    Outcome o;
    ComplexMatrix a = ComplexMatrix::Zero(3, 3), b = ComplexMatrix::Zero(3, 3);
    a(1, 2) = 1;
    a(2, 1) = 1;
    b(0, 0) = 1;
    double worst = 0.0;
    for (int k = 0; k < 512; ++k) {
        const cplx z = std::polar(1.0, 2.0 * std::numbers::pi * k / 512);
        worst = std::max(worst, std::abs(numerical_radius(a + z * b) - 1.0));
    }
    o.require(worst <= 1e-8, "numerical radius off 1");
    const DistinguishedReport r = classify_distinguished(make_variety_params(a, b));
    o.require(r.verdict == DistinguishedVerdict::NotDistinguished, "verdict");
    o.require(r.witness.has_value(), "witness");
    double dist = INFINITY;
    if (r.witness) dist = point_distance(*r.witness, {1, 0, 0});
    o.require(r.witness_tag == RegionTag::OtherTopBoundary, "witness tag");
    o.require(dist <= 1e-8, "witness location");
    o.detail << "max |w - 1| = " << worst << ", verdict " << to_string(r.verdict) << ", witness distance " << dist;
    return o;
}

Outcome criterion2() {
    Outcome o;
    const VarietyParams vp = make_variety_params(e12(3), e12(3));
    const VarietyPointCloud cloud = sample_variety(vp, x3_circle_samples(default_radii(), 256));
    double worst = 0.0;
    std::size_t boundary = 0, mistagged = 0, failed = 0;
    for (const VarietyRecord& rec : cloud.records) {
        if (rec.failed) ++failed;
        for (std::size_t i = 0; i < rec.points.size(); ++i) {
            const cplx x = rec.points[i].x1;
            o.require(std::abs(rec.points[i].x1 - rec.points[i].x2) <= 1e-8, "x1 = x2");
            worst = std::max(worst, std::abs(x * (rec.x3 - x * x)));
            if (std::abs(std::abs(rec.x3) - 1.0) <= 1e-12) {
                ++boundary;
                if (rec.tags[i] != RegionTag::DistinguishedBoundary) ++mistagged;
            }
        }
    }
    o.require(failed == 0, "sampling failures");
    o.require(worst <= 1e-8, "curve residual");
    o.require(boundary == 3 * 256 && mistagged == 0, "boundary tags");
    DistinguishedOptions opts;
    opts.boundary_grid = 256;
    const DistinguishedReport r = classify_distinguished(vp, opts);
    o.require(r.verdict == DistinguishedVerdict::DistinguishedEmpirical, "verdict");
    o.detail << "max |x(x3 - x^2)| = " << worst << ", boundary points " << boundary << " (" << mistagged
             << " mistagged), verdict " << to_string(r.verdict);
    return o;
}

Outcome criterion3() {
    Outcome o;
    std::mt19937_64 rng(3003);
    double worst = 0.0;
    int passed = 0;
    for (int t = 0; t < 100; ++t) {
        const Eigen::Index n = 1 + t % 8;
        const PlantedPair pp = planted_commuting_pair(n, t % 3, rng);
        const JointSpectrum js = joint_eigenvalues(verify_commuting(pp.a, pp.b, 1e-9), rng);
        const double d = joint_multiset_distance(as_pairs(js), pp.pairs);
        worst = std::max(worst, d);
        if (d <= 1e-7) ++passed;
    }
    o.require(passed == 100, "planted recovery");
    o.detail << passed << "/100 recovered, worst distance " << worst;
    return o;
}

struct Compression {
    ComplexMatrix a1, a2;
    OperatorTriple tr;
};

std::vector<Compression> round_trip_set() {
    std::mt19937_64 rng(4004);
    std::vector<Compression> out;
    for (int t = 0; t < 50; ++t) {
        const auto [a1, a2] = hypothesis_pair(1 + t % 4, rng, 0.9);
        out.push_back({a1, a2, compress_to_comodel(build_model(a1, a2, 16), 8)});
    }
    return out;
}

Outcome criterion4(const std::vector<Compression>& set) {
    Outcome o;
    double worst = 0.0;
    int passed = 0;
    for (const Compression& c : set) {
        double d = INFINITY;
        try {
            const FundamentalPair fp = extract_fundamental(c.tr);
            const ComplexMatrix p = last_mode(8);
            d = std::max(operator_norm(fp.ambient_a1() - kron(p, ComplexMatrix(c.a1.adjoint()))),
                         operator_norm(fp.ambient_a2() - kron(p, ComplexMatrix(c.a2.adjoint()))));
        } catch (const Error& e) {
            o.require(false, e.what());
        }
        worst = std::max(worst, d);
        if (d <= 1e-9) ++passed;
    }
    o.require(passed == 50, "round trip");
    o.detail << passed << "/50 within 1e-9, worst " << worst;
    return o;
}

Outcome criterion5(const std::vector<Compression>& set) {
    Outcome o;
    double worst = 0.0, tail = 0.0;
    for (const Compression& c : set) {
        try {
            const Dilation d = dilate(c.tr, 16);
            const DilationReport r = verify_dilation(c.tr, d.model, d.embedding.w, 4);
            worst = std::max({worst, r.monomial_max, r.isometry_defect, r.intertwining[0], r.intertwining[1],
                              r.intertwining[2]});
            tail = std::max(tail, d.embedding.tail);
        } catch (const Error& e) {
            o.require(false, e.what());
        }
    }
    o.require(worst <= 1e-9, "dilation residual");
    o.require(tail == 0.0, "nonzero tail");
    o.detail << "max residual " << worst << ", max tail " << tail;
    return o;
}

Outcome criterion6() {
    Outcome o;
    std::mt19937_64 rng(6006);
    double nil = 0.0;
    for (int t = 0; t < 20; ++t) {
        const Eigen::Index m = 2 + t % 4;
        const auto [a1, a2] = hypothesis_pair(1 + t % 3, rng, 0.9);
        const OperatorTriple tr = compress_to_comodel(build_model(a1, a2, 2 * m), m);
        nil = std::max(nil, verify_model_identity(tr, 2 * m + 8).residual);
        nil = std::max(nil, verify_model_identity(t3_only(shift_matrix(m)), 2 * m + 8).residual);
    }
    const ModelIdentityReport s = verify_model_identity(t3_only(scalar(0.9)), 256, 16);
    o.require(nil <= 1e-8, "nilpotent residual");
    o.require(s.residual <= 1e-6, "scalar residual");
    o.detail << "nilpotent max " << nil << ", scalar 0.9 residual " << s.residual << " on " << s.modes_checked
             << " modes";
    return o;
}

Outcome criterion7() {
    Outcome o;
    std::mt19937_64 rng(7007);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        const ComplexMatrix c = random_contraction(1 + t % 4, rng);
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) {
                const cplx z = std::polar(0.9 * i / 4, 2 * std::numbers::pi * j / 5);
                const cplx w = std::polar(0.9 * j / 4, 2 * std::numbers::pi * i / 5 + 0.3);
                worst = std::max(worst, kernel_identity_residual(c, z, w));
            }
    }
    o.require(worst <= 1e-8, "kernel residual");
    o.detail << "max residual " << worst;
    return o;
}

// compressions of hypothesis pairs of varied size and depth
std::vector<OperatorTriple> factory_triples() {
    std::mt19937_64 rng(8008);
    std::vector<OperatorTriple> out;
    for (int t = 0; t < 20; ++t) {
        const Eigen::Index n = 1 + t % 3, m = 2 + t % 3;
        const auto [a1, a2] = hypothesis_pair(n, rng, t % 2 ? 0.9 : 1.0);
        out.push_back(compress_to_comodel(build_model(a1, a2, 2 * m), m));
    }
    return out;
}

Outcome criterion8() {
    Outcome o;
    std::mt19937_64 rng(8009);
    std::vector<Poly3> polys;
    for (int i = 0; i < 200; ++i) polys.push_back(random_poly(rng));
    std::size_t violations = 0, checks = 0, unmet = 0;
    double min_slack = INFINITY;
    VnOptions opts;
    opts.boundary_grid = 2048;
    for (const OperatorTriple& tr : factory_triples()) {
        const VnReport r = verify_vn(tr, polys, opts);
        if (!r.hypotheses_met) ++unmet;
        violations += r.violations();
        checks += r.entries.size();
        for (const VnEntry& e : r.entries) min_slack = std::min(min_slack, e.slack);
    }
    o.require(unmet == 0, "hypotheses not met");
    o.require(checks == 200 * 20, "entry count");
    o.require(violations == 0, "violations");
    o.detail << checks << " checks, " << violations << " violations, min slack " << min_slack;
    return o;
}

Outcome criterion9() {
    Outcome o;
    std::mt19937_64 rng(9009);
    int disagree_in = 0, disagree_out = 0;
    for (int t = 0; t < 1000; ++t) {
        const TetraPoint p = interior_point(rng);
        if (classify_tetra(p) != RegionTag::Interior || !kernel_check(p, 128).nonvanishing ||
            !gamma_lift_check(p, 64))
            ++disagree_in;
        const TetraPoint q = outside_point(rng);
        if (classify_tetra(q) != RegionTag::Outside || kernel_check(q, 128).nonvanishing || gamma_lift_check(q, 64))
            ++disagree_out;
    }
    int sandwich = 0;
    for (int t = 0; t < 500; ++t) {
        const ComplexMatrix a = random_matrix(1 + t % 6, rng);
        const double w = numerical_radius(a), nrm = operator_norm(a);
        if (w < 0.5 * nrm - 1e-9 || w > nrm + 1e-9) ++sandwich;
    }
    o.require(disagree_in == 0 && disagree_out == 0, "membership tests disagree");
    o.require(sandwich == 0, "numerical radius sandwich");
    o.detail << "disagreements interior " << disagree_in << ", outside " << disagree_out << ", sandwich failures "
             << sandwich;
    return o;
}

Outcome criterion10() {
    Outcome o;
    std::mt19937_64 rng(10010);
    double worst = 0.0;
    int admitted = 0;
    for (int t = 0; t < 100; ++t) {
        const Eigen::Index n = 1 + t % 4;
        ComplexMatrix a1 = random_matrix(n, rng), a2 = random_matrix(n, rng);
        const double s = verify_fundamental_radius(a1, a2, 256).max_radius;
        a1 /= s;
        a2 /= s;
        if (!verify_fundamental_radius(a1, a2).ok) continue;
        ++admitted;
        worst = std::max({worst, verify_fundamental_radius(a1.adjoint(), a2, 256).max_radius,
                          verify_fundamental_radius(a1, a2.adjoint(), 256).max_radius});
    }
    o.require(admitted == 100, "pairs admitted");
    o.require(worst <= 1 + 1e-8, "swept radius");
    o.detail << admitted << " pairs, max swapped radius - 1 = " << worst - 1.0;
    return o;
}

bool report(int k, double limit_s, const std::function<Outcome()>& run) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = run();
    } catch (const std::exception& e) {
        o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (limit_s > 0) o.require(secs < limit_s, "runtime over " + std::to_string(limit_s) + " s");
    std::printf("%s criterion %d: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", k, o.detail.str().c_str(), secs);
    std::fflush(stdout);
    return o.pass;
}

} // namespace

int main() {
    bool ok = true;
    ok &= report(1, 1.0, criterion1);
    ok &= report(2, 5.0, criterion2);
    ok &= report(3, 0, criterion3);
    const std::vector<Compression> set = round_trip_set();
    ok &= report(4, 0, [&] { return criterion4(set); });
    ok &= report(5, 30.0, [&] { return criterion5(set); });
    ok &= report(6, 0, criterion6);
    ok &= report(7, 0, criterion7);
    ok &= report(8, 120.0, criterion8);
    ok &= report(9, 0, criterion9);
    ok &= report(10, 0, criterion10);
    return ok ? 0 : 1;
}
