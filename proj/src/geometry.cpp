#include "tetra/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace tetra {

const char* to_string(RegionTag tag) {
    switch (tag) {
    case RegionTag::Interior: return "Interior";
    case RegionTag::DistinguishedBoundary: return "DistinguishedBoundary";
    case RegionTag::OtherTopBoundary: return "OtherTopBoundary";
    case RegionTag::ClosureInteriorFace: return "ClosureInteriorFace";
    case RegionTag::Outside: return "Outside";
    }
    return "Unknown";
}

bool in_closure(RegionTag tag) { return tag != RegionTag::Outside; }

BetaPair beta_decompose(const TetraPoint& pt, double tol) {
    const double r = std::abs(pt.x3);
    if (r >= 1.0 - tol) {
        throw Error(ErrorKind::BetaUndefined,
                    "beta undefined on |x3|=1 (|x3| = " + std::to_string(r) + ")", r);
    }
    const double denom = 1.0 - r * r;
    return {(pt.x1 - std::conj(pt.x2) * pt.x3) / denom, (pt.x2 - std::conj(pt.x1) * pt.x3) / denom};
}

TetraPoint beta_compose(const BetaPair& beta, cplx x3) {
    return {beta.beta1 + std::conj(beta.beta2) * x3, beta.beta2 + std::conj(beta.beta1) * x3, x3};
}

RegionTag classify_tetra(const TetraPoint& pt, Semantics sem, double tol) {
    const double r = std::abs(pt.x3);
    // |x3| = 1 is decided before the beta branch, where beta is undefined
    if (std::abs(r - 1.0) <= tol) {
        const bool on_shilov = std::abs(pt.x2) <= 1.0 + tol &&
                               std::abs(pt.x1 - std::conj(pt.x2) * pt.x3) <= tol;
        return on_shilov ? RegionTag::DistinguishedBoundary : RegionTag::Outside;
    }
    if (r > 1.0) return RegionTag::Outside;

    const BetaPair b = beta_decompose(pt, 0.0);
    const double sum = std::abs(b.beta1) + std::abs(b.beta2);
    RegionTag tag = RegionTag::Outside;
    if (sum < 1.0 - tol)
        tag = RegionTag::Interior;
    else if (sum <= 1.0 + tol)
        tag = RegionTag::OtherTopBoundary;
    if (sem == Semantics::Closed && tag != RegionTag::Outside) tag = RegionTag::ClosureInteriorFace;
    return tag;
}

KernelCheck kernel_check(const TetraPoint& pt, int grid, double tol) {
    grid = std::max(grid, 8);
    // the w = 0 slice: 1 - z x1 has a zero in the closed disc when |x1| >= 1
    double margin = 1.0 - std::abs(pt.x1);
    for (int k = 0; k < grid; ++k) {
        const cplx z = std::polar(1.0, 2.0 * std::numbers::pi * k / grid);
        margin = std::min(margin, std::abs(1.0 - z * pt.x1) - std::abs(pt.x2 - z * pt.x3));
    }
    return {margin > tol, std::max(margin, 0.0)};
}

namespace {

std::pair<cplx, cplx> quadratic_roots(cplx s, cplx p) {
    // roots of l^2 - s l + p, avoiding cancellation in the smaller root
    const cplx disc = std::sqrt(s * s - 4.0 * p);
    const cplx big = std::abs(s + disc) >= std::abs(s - disc) ? 0.5 * (s + disc) : 0.5 * (s - disc);
    if (big == cplx{0.0, 0.0}) return {0.0, 0.0};
    return {big, p / big};
}

} // namespace

RegionTag gamma_classify(const GammaPoint& gp, Semantics sem, double tol) {
    const auto [l1, l2] = quadratic_roots(gp.s, gp.p);
    const double m1 = std::abs(l1);
    const double m2 = std::abs(l2);
    if (std::max(m1, m2) > 1.0 + tol) return RegionTag::Outside;
    if (std::abs(m1 - 1.0) <= tol && std::abs(m2 - 1.0) <= tol) return RegionTag::DistinguishedBoundary;
    RegionTag tag = std::max(m1, m2) < 1.0 - tol ? RegionTag::Interior : RegionTag::OtherTopBoundary;
    if (sem == Semantics::Closed) tag = RegionTag::ClosureInteriorFace;
    return tag;
}

bool gamma_lift_check(const TetraPoint& pt, int samples, double tol) {
    samples = std::max(samples, 8);
    for (int k = 0; k < samples; ++k) {
        const cplx z = std::polar(1.0, 2.0 * std::numbers::pi * k / samples);
        if (!in_closure(gamma_classify({pt.x1 + z * pt.x2, z * pt.x3}, Semantics::Closed, tol))) return false;
    }
    return true;
}

bool in_bDE(const TetraPoint& pt, double tol) {
    return std::abs(std::abs(pt.x1) - 1.0) <= tol && std::abs(std::abs(pt.x2) - 1.0) <= tol &&
           std::abs(pt.x3 - pt.x1 * pt.x2) <= tol;
}

} // namespace tetra
