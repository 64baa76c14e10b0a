#pragma once

// Varieties Omega = { x : (x1, x2) joint eigenvalue of (A1* + x3 A2, A2* + x3 A1) }
// for commuting A1, A2 with [A1*, A1] = [A2*, A2].

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tetra/geometry.hpp"
#include "tetra/jointspec.hpp"

namespace tetra {

struct VarietyParams {
    ComplexMatrix a1, a2;
    double commutator = 0.0;     ///< ||[A1, A2]||
    double normality_gap = 0.0;  ///< ||[A1*, A1] - [A2*, A2]||
    double sup_norm = 0.0;       ///< max over the circle of ||A1* + A2 z||
    double sup_theta = 0.0;

    Eigen::Index order() const { return a1.rows(); }
};

struct VarietyOptions {
    double hypothesis_tol = 1e-9; ///< scaled by ||A1|| ||A2|| + 1
    int sup_grid = 256;
};

/// Validates the hypotheses and measures the sup-norm of A1* + A2 z on the
/// circle (grid sweep plus golden-section refinement). Throws
/// HypothesisViolated with the offending commutator norm.
VarietyParams make_variety_params(const ComplexMatrix& a1, const ComplexMatrix& a2,
                                  const VarietyOptions& opts = {});

/// A1* + x3 A2 and A2* + x3 A1.
std::pair<ComplexMatrix, ComplexMatrix> variety_pencil(const VarietyParams& vp, cplx x3);

struct VarietyRecord {
    cplx x3{};
    std::vector<TetraPoint> points;   ///< n points with multiplicity, canonical order
    std::vector<RegionTag> tags;      ///< classify_tetra, open semantics
    std::vector<double> residuals;    ///< joint-eigenvalue certificate per point
    bool failed = false;
    std::string error;
};

struct VarietyPointCloud {
    std::vector<VarietyRecord> records;

    std::size_t point_count() const;
};

struct SampleOptions {
    std::uint64_t seed = 42;
    unsigned threads = 1;
    double band = kBoundaryBand;
    JointSpecOptions jointspec{};
};

/// Concentric circles: radius 0 contributes one sample, every other radius
/// `angles` equally spaced samples starting at angle 0.
std::vector<cplx> x3_circle_samples(const std::vector<double>& radii, int angles);

inline const std::vector<double>& default_radii() {
    static const std::vector<double> r = {0.0, 0.25, 0.5, 0.75, 0.9, 0.99, 1.0};
    return r;
}

/// One record per x3 sample. Each sample draws from its own generator
/// seeded by (seed, index), so results do not depend on thread count.
/// Failures of the joint-spectrum step are recorded, not thrown.
VarietyPointCloud sample_variety(const VarietyParams& vp, const std::vector<cplx>& x3_samples,
                                 const SampleOptions& opts = {});

/// det[z1 (A1* + x3 A2 - x1 I) + z2 (A2* + x3 A1 - x2 I)].
cplx pencil_det(const VarietyParams& vp, const TetraPoint& x, cplx z1, cplx z2);

/// max |pencil_det| over a grid of (z1, z2) in the closed bidisc: every
/// pair from { r e^{2 pi i k / grid} : r in {0.5, 1} } plus the axes.
double pencil_max_det(const VarietyParams& vp, const TetraPoint& x, int grid = 8);

enum class DistinguishedVerdict {
    Distinguished,
    DistinguishedEmpirical,
    NotDistinguished,
    Inconclusive,
    HypothesisViolated,
};

const char* to_string(DistinguishedVerdict v);

struct DistinguishedOptions {
    int boundary_grid = 256;
    int interior_grid = 256;
    double delta = 0.01;    ///< interior samples satisfy |x3| <= 1 - delta
    double tol = 1e-9;      ///< band around ||A1* + A2 z|| = 1
    double near_band = 1e-7; ///< interior margins below this are not trusted
    SampleOptions sampling{};
};

struct DistinguishedReport {
    DistinguishedVerdict verdict = DistinguishedVerdict::Inconclusive;
    double sup_norm = 0.0;
    std::optional<TetraPoint> witness;
    RegionTag witness_tag = RegionTag::Interior;
    std::size_t boundary_points = 0;
    std::size_t interior_points = 0;
    double min_interior_margin = 1.0; ///< min of 1 - |beta1| - |beta2| over interior samples
    std::vector<std::string> notes;
    VarietyPointCloud cloud;          ///< empty unless the empirical test ran
};

/// sup-norm s below 1 - tol: Distinguished. Above 1 + tol:
/// HypothesisViolated. Otherwise the sampled exit test: boundary samples
/// must land in bE and interior samples in E; a point of the topological
/// boundary outside bE found at |x3| < 1 is a witness for NotDistinguished.
DistinguishedReport classify_distinguished(const VarietyParams& vp, const DistinguishedOptions& opts = {});

struct BdeCriterion {
    bool disjoint_from_bde = true;
    bool sup_norm_lt_1 = false;
    double sup_norm = 0.0;
    std::optional<TetraPoint> hit;
    bool agree = false;
};

/// Samples |x3| = 1 and tests the boundary points against
/// { (x1, x2, x1 x2) : |x1| = |x2| = 1 }; compares with sup-norm < 1.
BdeCriterion check_bDE_criterion(const VarietyParams& vp, int boundary_grid = 256, double tol = 1e-9,
                                 const SampleOptions& sampling = {});

struct GammaProjection {
    GammaPoint point;
    double residual = 0.0; ///< |det((A1 + A2)* + p (A1 + A2) - s I)|
};

/// (x1, x2, x3) -> (x1 + x2, x3) for every sampled point.
std::vector<GammaProjection> project_to_gamma(const VarietyParams& vp, const VarietyPointCloud& cloud);

} // namespace tetra
