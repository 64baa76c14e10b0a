#include "tetra/variety.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

namespace tetra {

VarietyParams make_variety_params(const ComplexMatrix& a1, const ComplexMatrix& a2, const VarietyOptions& opts) {
    require_same_order(a1, a2, "make_variety_params");
    VarietyParams vp;
    vp.a1 = a1;
    vp.a2 = a2;
    const double n1 = operator_norm(a1), n2 = operator_norm(a2);
    vp.commutator = operator_norm(commutator(a1, a2));
    vp.normality_gap = operator_norm(commutator(a1.adjoint(), a1) - commutator(a2.adjoint(), a2));
    if (vp.commutator > opts.hypothesis_tol * (n1 * n2 + 1.0)) {
        throw Error(ErrorKind::HypothesisViolated,
                    "hypothesis violated: ||[A1,A2]|| = " + std::to_string(vp.commutator), vp.commutator);
    }
    if (vp.normality_gap > opts.hypothesis_tol * (n1 * n1 + n2 * n2 + 1.0)) {
        throw Error(ErrorKind::HypothesisViolated,
                    "hypothesis violated: ||[A1*,A1] - [A2*,A2]|| = " + std::to_string(vp.normality_gap),
                    vp.normality_gap);
    }
    if (a1.rows() > 0) {
        const ComplexMatrix a1s = a1.adjoint();
        const CircleMax cm = maximize_on_circle(
            [&](double t) { return operator_norm(a1s + std::polar(1.0, t) * a2); }, opts.sup_grid);
        vp.sup_norm = cm.value;
        vp.sup_theta = cm.theta;
    }
    return vp;
}

std::pair<ComplexMatrix, ComplexMatrix> variety_pencil(const VarietyParams& vp, cplx x3) {
    return {vp.a1.adjoint() + x3 * vp.a2, vp.a2.adjoint() + x3 * vp.a1};
}

std::size_t VarietyPointCloud::point_count() const {
    std::size_t n = 0;
    for (const auto& r : records) n += r.points.size();
    return n;
}

std::vector<cplx> x3_circle_samples(const std::vector<double>& radii, int angles) {
    std::vector<cplx> out;
    for (double r : radii) {
        if (r == 0.0) {
            out.emplace_back(0.0, 0.0);
            continue;
        }
        for (int k = 0; k < angles; ++k) out.push_back(std::polar(r, 2.0 * std::numbers::pi * k / angles));
    }
    return out;
}

namespace {

bool canonical_before(const JointEigenvalue& l, const JointEigenvalue& r) {
    if (l.lambda.real() != r.lambda.real()) return l.lambda.real() > r.lambda.real();
    if (l.lambda.imag() != r.lambda.imag()) return l.lambda.imag() > r.lambda.imag();
    if (l.mu.real() != r.mu.real()) return l.mu.real() > r.mu.real();
    return l.mu.imag() > r.mu.imag();
}

VarietyRecord sample_one(const VarietyParams& vp, cplx x3, std::size_t index, const SampleOptions& opts) {
    VarietyRecord rec;
    rec.x3 = x3;
    std::seed_seq seq{static_cast<std::uint32_t>(opts.seed), static_cast<std::uint32_t>(opts.seed >> 32),
                      static_cast<std::uint32_t>(index)};
    std::mt19937_64 rng(seq);
    try {
        const auto [m1, m2] = variety_pencil(vp, x3);
        const CommutingPair pair = verify_commuting(m1, m2, 1e-9);
        JointSpectrum js = joint_eigenvalues(pair, rng, opts.jointspec);
        std::sort(js.pairs.begin(), js.pairs.end(), canonical_before);
        for (const auto& p : js.pairs) {
            const TetraPoint pt{p.lambda, p.mu, x3};
            rec.points.push_back(pt);
            rec.tags.push_back(classify_tetra(pt, Semantics::Open, opts.band));
            rec.residuals.push_back(p.residual);
        }
    } catch (const Error& e) {
        rec.failed = true;
        rec.error = e.what();
        rec.points.clear();
        rec.tags.clear();
        rec.residuals.clear();
    }
    return rec;
}

} // namespace

VarietyPointCloud sample_variety(const VarietyParams& vp, const std::vector<cplx>& x3_samples,
                                 const SampleOptions& opts) {
    VarietyPointCloud cloud;
    cloud.records.resize(x3_samples.size());
    const unsigned workers =
        std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(x3_samples.size())));
    auto work = [&](unsigned w) {
        for (std::size_t i = w; i < x3_samples.size(); i += workers)
            cloud.records[i] = sample_one(vp, x3_samples[i], i, opts);
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    return cloud;
}

cplx pencil_det(const VarietyParams& vp, const TetraPoint& x, cplx z1, cplx z2) {
    const Eigen::Index n = vp.order();
    const auto [m1, m2] = variety_pencil(vp, x.x3);
    const ComplexMatrix m = z1 * (m1 - x.x1 * identity(n)) + z2 * (m2 - x.x2 * identity(n));
    return m.determinant();
}

double pencil_max_det(const VarietyParams& vp, const TetraPoint& x, int grid) {
    grid = std::max(grid, 1);
    std::vector<cplx> zs = {0.0};
    for (double r : {0.5, 1.0})
        for (int k = 0; k < grid; ++k) zs.push_back(std::polar(r, 2.0 * std::numbers::pi * k / grid));
    double worst = 0.0;
    for (const cplx z1 : zs) {
        for (const cplx z2 : zs) {
            if (z1 == 0.0 && z2 == 0.0) continue;
            worst = std::max(worst, std::abs(pencil_det(vp, x, z1, z2)));
        }
    }
    return worst;
}

const char* to_string(DistinguishedVerdict v) {
    switch (v) {
    case DistinguishedVerdict::Distinguished: return "Distinguished";
    case DistinguishedVerdict::DistinguishedEmpirical: return "Distinguished-Empirical";
    case DistinguishedVerdict::NotDistinguished: return "NotDistinguished";
    case DistinguishedVerdict::Inconclusive: return "Inconclusive";
    case DistinguishedVerdict::HypothesisViolated: return "HypothesisViolated";
    }
    return "Unknown";
}

DistinguishedReport classify_distinguished(const VarietyParams& vp, const DistinguishedOptions& opts) {
    DistinguishedReport rep;
    rep.sup_norm = vp.sup_norm;
    if (vp.sup_norm < 1.0 - opts.tol) {
        rep.verdict = DistinguishedVerdict::Distinguished;
        return rep;
    }
    if (vp.sup_norm > 1.0 + opts.tol) {
        rep.verdict = DistinguishedVerdict::HypothesisViolated;
        rep.notes.push_back("sup-norm of A1* + A2 z exceeds 1");
        return rep;
    }

    // ||A1* + A2 z|| = 1 somewhere on the circle: sampled exit test
    std::vector<double> radii;
    for (double r : default_radii())
        if (r <= 1.0 - opts.delta + 1e-15) radii.push_back(r);
    std::vector<cplx> samples = x3_circle_samples(radii, opts.interior_grid);
    const std::size_t interior_count = samples.size();
    for (const cplx z : x3_circle_samples({1.0}, opts.boundary_grid)) samples.push_back(z);
    rep.cloud = sample_variety(vp, samples, opts.sampling);

    bool failed = false, outside = false, boundary_bad = false;
    for (std::size_t i = 0; i < rep.cloud.records.size(); ++i) {
        const VarietyRecord& rec = rep.cloud.records[i];
        failed = failed || rec.failed;
        const bool interior = i < interior_count;
        for (std::size_t j = 0; j < rec.points.size(); ++j) {
            const RegionTag tag = rec.tags[j];
            if (!interior) {
                ++rep.boundary_points;
                boundary_bad = boundary_bad || tag != RegionTag::DistinguishedBoundary;
                continue;
            }
            ++rep.interior_points;
            if (tag == RegionTag::OtherTopBoundary && !rep.witness) {
                rep.witness = rec.points[j];
                rep.witness_tag = tag;
            } else if (tag == RegionTag::Outside) {
                outside = true;
            } else if (tag == RegionTag::Interior) {
                const BetaPair b = beta_decompose(rec.points[j], 0.0);
                rep.min_interior_margin =
                    std::min(rep.min_interior_margin, 1.0 - std::abs(b.beta1) - std::abs(b.beta2));
            }
        }
    }

    if (failed) rep.notes.push_back("some samples failed in the joint-spectrum step");
    if (outside) rep.notes.push_back("interior sample produced a point outside the closure");
    if (boundary_bad) rep.notes.push_back("boundary sample produced a point off the distinguished boundary");
    if (rep.min_interior_margin < opts.near_band)
        rep.notes.push_back("interior points within the near band of the boundary");

    if (rep.witness)
        rep.verdict = DistinguishedVerdict::NotDistinguished;
    else if (failed || outside || boundary_bad || rep.min_interior_margin < opts.near_band)
        rep.verdict = DistinguishedVerdict::Inconclusive;
    else
        rep.verdict = DistinguishedVerdict::DistinguishedEmpirical;
    return rep;
}

BdeCriterion check_bDE_criterion(const VarietyParams& vp, int boundary_grid, double tol, const SampleOptions& sampling) {
    BdeCriterion out;
    out.sup_norm = vp.sup_norm;
    out.sup_norm_lt_1 = vp.sup_norm < 1.0 - tol;
    const VarietyPointCloud cloud = sample_variety(vp, x3_circle_samples({1.0}, boundary_grid), sampling);
    for (const auto& rec : cloud.records) {
        for (const auto& pt : rec.points) {
            if (in_bDE(pt, sampling.band)) {
                out.disjoint_from_bde = false;
                if (!out.hit) out.hit = pt;
            }
        }
    }
    out.agree = out.disjoint_from_bde == out.sup_norm_lt_1;
    return out;
}

std::vector<GammaProjection> project_to_gamma(const VarietyParams& vp, const VarietyPointCloud& cloud) {
    const Eigen::Index n = vp.order();
    const ComplexMatrix sum = vp.a1 + vp.a2;
    std::vector<GammaProjection> out;
    out.reserve(cloud.point_count());
    for (const auto& rec : cloud.records) {
        for (const auto& pt : rec.points) {
            const GammaPoint gp{pt.x1 + pt.x2, pt.x3};
            const ComplexMatrix m = sum.adjoint() + gp.p * sum - gp.s * identity(n);
            out.push_back({gp, std::abs(m.determinant())});
        }
    }
    return out;
}

} // namespace tetra
