#pragma once

// Membership and boundary classification for the tetrablock E and the
// symmetrized bidisc Gamma.
//
// A point (x1, x2, x3) with |x3| < 1 has a unique beta pair
//   beta1 = (x1 - conj(x2) x3) / (1 - |x3|^2),  beta2 = (x2 - conj(x1) x3) / (1 - |x3|^2)
// with x1 = beta1 + conj(beta2) x3 and x2 = beta2 + conj(beta1) x3; the point
// is in E iff |beta1| + |beta2| < 1. The part of the boundary with |x3| = 1
// is the distinguished boundary bE = { x1 = conj(x2) x3, |x3| = 1, |x2| <= 1 }.

#include <optional>

#include "tetra/linalg.hpp"

namespace tetra {

struct TetraPoint {
    cplx x1{}, x2{}, x3{};

    friend bool operator==(const TetraPoint&, const TetraPoint&) = default;
};

struct BetaPair {
    cplx beta1{}, beta2{};
};

struct GammaPoint {
    cplx s{}, p{};
};

enum class RegionTag {
    Interior,
    DistinguishedBoundary,
    OtherTopBoundary,
    ClosureInteriorFace,
    Outside,
};

const char* to_string(RegionTag tag);

/// Open semantics separates Interior from OtherTopBoundary; closed semantics
/// reports both as ClosureInteriorFace.
enum class Semantics { Open, Closed };

/// Width of the band around a defining equality inside which a point counts
/// as lying on it.
inline constexpr double kBoundaryBand = 1e-9;

bool in_closure(RegionTag tag);

/// Throws BetaUndefined when |x3| >= 1 - tol.
BetaPair beta_decompose(const TetraPoint& pt, double tol = kBoundaryBand);

TetraPoint beta_compose(const BetaPair& beta, cplx x3);

RegionTag classify_tetra(const TetraPoint& pt, Semantics sem = Semantics::Open,
                         double tol = kBoundaryBand);

struct KernelCheck {
    bool nonvanishing = false;
    /// Sampled lower margin for |1 - z x1 - w x2 + z w x3| on the closed
    /// bidisc, clamped at zero (0 when the expression vanishes somewhere).
    double min_modulus = 0.0;
};

/// Decides whether 1 - z x1 - w x2 + z w x3 stays away from zero on the
/// closed bidisc, sampling z on `grid` points of the unit circle.
///
/// For fixed z the expression is affine in w, (1 - z x1) - w (x2 - z x3), so
/// its minimum modulus over |w| <= 1 is |1 - z x1| - |x2 - z x3| when that is
/// positive and 0 otherwise. Given |x1| < 1 the quotient
/// (x2 - z x3) / (1 - z x1) is holomorphic on the closed disc, so by the
/// maximum-modulus principle it stays below 1 there iff it does on |z| = 1.
/// The decision therefore reduces to |x1| < 1 plus the margin on the circle.
KernelCheck kernel_check(const TetraPoint& pt, int grid = 128, double tol = kBoundaryBand);

/// Region of (s, p) relative to Gamma, from the roots of l^2 - s l + p.
RegionTag gamma_classify(const GammaPoint& gp, Semantics sem = Semantics::Open,
                         double tol = kBoundaryBand);

/// True iff (x1 + z x2, z x3) lies in Gamma for every sampled z on the
/// circle; this characterizes the closure of E.
bool gamma_lift_check(const TetraPoint& pt, int samples = 64, double tol = kBoundaryBand);

/// Membership in { (x1, x2, x1 x2) : |x1| = |x2| = 1 }.
bool in_bDE(const TetraPoint& pt, double tol = kBoundaryBand);

} // namespace tetra
