#include "tetra/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace tetra {

ComplexMatrix identity(Eigen::Index n) { return ComplexMatrix::Identity(n, n); }

void require_square(const ComplexMatrix& m, const char* what) {
    if (m.rows() != m.cols()) {
        throw Error(ErrorKind::DimensionMismatch,
                    std::string(what) + ": expected a square matrix, got " +
                        std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

void require_same_order(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
    require_square(a, what);
    require_square(b, what);
    if (a.rows() != b.rows()) {
        throw Error(ErrorKind::DimensionMismatch,
                    std::string(what) + ": orders differ (" + std::to_string(a.rows()) +
                        " vs " + std::to_string(b.rows()) + ")");
    }
}

bool all_finite(const ComplexMatrix& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    return true;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_order(a, b, "commutator");
    return a * b - b * a;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

ComplexMatrix matrix_power(const ComplexMatrix& a, unsigned k) {
    require_square(a, "matrix_power");
    ComplexMatrix result = identity(a.rows());
    ComplexMatrix base = a;
    while (k > 0) {
        if (k & 1u) result = result * base;
        k >>= 1u;
        if (k > 0) base = base * base;
    }
    return result;
}

namespace {

double largest_subdiagonal(const ComplexMatrix& t) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i + 1 < t.rows(); ++i) worst = std::max(worst, std::abs(t(i + 1, i)));
    return worst;
}

} // namespace

std::vector<cplx> eigenvalues(const ComplexMatrix& a, const EigenOptions& opts) {
    require_square(a, "eigenvalues");
    const Eigen::Index n = a.rows();
    if (n == 0) return {};
    Eigen::ComplexSchur<ComplexMatrix> schur(n);
    schur.setMaxIterations(opts.iterations_per_row * n);
    schur.compute(a, false);
    if (schur.info() != Eigen::Success) {
        const double res = largest_subdiagonal(schur.matrixT());
        throw Error(ErrorKind::NoConvergence,
                    "eigenvalues: QR iteration did not converge, residual " + std::to_string(res),
                    res);
    }
    std::vector<cplx> out(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = schur.matrixT()(i, i);
    return out;
}

EigenPairs eigen_decompose(const ComplexMatrix& a, const EigenOptions& opts) {
    require_square(a, "eigen_decompose");
    const Eigen::Index n = a.rows();
    EigenPairs out;
    if (n == 0) return out;
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(n);
    solver.setMaxIterations(opts.iterations_per_row * n);
    solver.compute(a, true);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::NoConvergence, "eigen_decompose: QR iteration did not converge");
    }
    out.values.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    out.vectors = solver.eigenvectors();
    for (Eigen::Index j = 0; j < n; ++j) {
        const double nrm = out.vectors.col(j).norm();
        if (nrm > 0) out.vectors.col(j) /= nrm;
    }
    return out;
}

Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& a) {
    require_square(a, "hermitian_eigenvalues");
    if (a.rows() == 0) return {};
    const ComplexMatrix h = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

double spectral_radius(const ComplexMatrix& a) {
    double r = 0.0;
    for (const auto& v : eigenvalues(a)) r = std::max(r, std::abs(v));
    return r;
}

double operator_norm(const ComplexMatrix& a) {
    if (a.size() == 0) return 0.0;
    const ComplexMatrix gram = a.cols() <= a.rows() ? ComplexMatrix(a.adjoint() * a)
                                                    : ComplexMatrix(a * a.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(gram, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
}

double min_singular_value(const ComplexMatrix& a) {
    if (a.size() == 0) return 0.0;
    Eigen::JacobiSVD<ComplexMatrix> svd(a);
    return svd.singularValues().minCoeff();
}

namespace {

double rotated_top_eigenvalue(const ComplexMatrix& a, double theta) {
    const cplx phase = std::polar(1.0, theta);
    const ComplexMatrix h = 0.5 * (phase * a + std::conj(phase) * a.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(h.rows() - 1);
}

} // namespace

CircleMax maximize_on_circle(const std::function<double(double)>& f, int grid, int candidates, int iterations) {
    grid = std::max(grid, 8);
    const double step = 2.0 * std::numbers::pi / grid;
    std::vector<double> sweep(static_cast<std::size_t>(grid));
    for (int k = 0; k < grid; ++k) sweep[static_cast<std::size_t>(k)] = f(k * step);
    auto at = [&](int k) { return sweep[static_cast<std::size_t>((k % grid + grid) % grid)]; };

    std::vector<int> peaks;
    for (int k = 0; k < grid; ++k)
        if (at(k) >= at(k - 1) && at(k) >= at(k + 1)) peaks.push_back(k);
    std::sort(peaks.begin(), peaks.end(), [&](int l, int r) { return at(l) > at(r); });
    if (peaks.size() > static_cast<std::size_t>(std::max(candidates, 0)))
        peaks.resize(static_cast<std::size_t>(std::max(candidates, 0)));

    CircleMax out;
    const int best = static_cast<int>(std::max_element(sweep.begin(), sweep.end()) - sweep.begin());
    out.grid_max = out.value = at(best);
    out.theta = best * step;

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int k : peaks) {
        double lo = (k - 1) * step;
        double hi = (k + 1) * step;
        double x1 = hi - inv_phi * (hi - lo);
        double x2 = lo + inv_phi * (hi - lo);
        double f1 = f(x1);
        double f2 = f(x2);
        for (int it = 0; it < iterations && hi - lo > 1e-13; ++it) {
            if (f1 < f2) {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + inv_phi * (hi - lo);
                f2 = f(x2);
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - inv_phi * (hi - lo);
                f1 = f(x1);
            }
        }
        const double val = std::max(f1, f2);
        if (val > out.value) {
            out.value = val;
            out.theta = std::fmod((f1 > f2 ? x1 : x2) + 2.0 * std::numbers::pi, 2.0 * std::numbers::pi);
        }
    }
    return out;
}

NumericalRadius numerical_radius_report(const ComplexMatrix& a, const NumericalRadiusOptions& opts) {
    require_square(a, "numerical_radius");
    NumericalRadius out;
    if (a.rows() == 0) return out;
    const int grid = std::max(opts.grid, 8);
    const CircleMax cm = maximize_on_circle([&](double t) { return rotated_top_eigenvalue(a, t); }, grid,
                                            opts.refine_candidates, opts.refine_iterations);
    out.value = std::max(cm.value, 0.0);
    out.theta = cm.theta;
    out.grid_max = cm.grid_max;
    out.grid_error = operator_norm(a) * std::numbers::pi / grid;
    return out;
}

double numerical_radius(const ComplexMatrix& a, const NumericalRadiusOptions& opts) {
    return numerical_radius_report(a, opts).value;
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
    if (a.rows() != a.cols()) return false;
    return operator_norm(a - a.adjoint()) <= tol;
}

ComplexMatrix sqrt_psd(const ComplexMatrix& a, const Tolerance& tol) {
    require_square(a, "sqrt_psd");
    const Eigen::Index n = a.rows();
    if (n == 0) return a;
    const double scale = operator_norm(a);
    const double bound = tol.bound(scale);
    const double skew = operator_norm(a - a.adjoint());
    if (skew > bound) {
        throw Error(ErrorKind::NotPsd, "sqrt_psd: matrix is not Hermitian, skew part " +
                                           std::to_string(skew), skew);
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (a + a.adjoint()));
    Eigen::VectorXd lam = solver.eigenvalues();
    if (lam.minCoeff() < -bound) {
        throw Error(ErrorKind::NotPsd, "sqrt_psd: eigenvalue " + std::to_string(lam.minCoeff()) +
                                           " below -tol", -lam.minCoeff());
    }
    Eigen::VectorXd root = lam.cwiseMax(0.0).cwiseSqrt();
    const ComplexMatrix& v = solver.eigenvectors();
    return v * root.cast<cplx>().asDiagonal() * v.adjoint();
}

RangeSolve range_restricted_solve(const ComplexMatrix& d, const ComplexMatrix& r, const Tolerance& tol) {
    require_same_order(d, r, "range_restricted_solve");
    const Eigen::Index n = d.rows();
    RangeSolve out;
    out.x = ComplexMatrix::Zero(n, n);
    out.basis = ComplexMatrix::Zero(n, 0);
    if (n == 0) return out;

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (d + d.adjoint()));
    const Eigen::VectorXd sig = solver.eigenvalues().cwiseAbs();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index l, Eigen::Index rr) { return sig(l) > sig(rr); });

    const double cutoff = tol.abs + tol.rel * sig.maxCoeff();
    std::vector<Eigen::Index> kept;
    for (auto idx : order)
        if (sig(idx) > cutoff) kept.push_back(idx);

    const auto rank = static_cast<Eigen::Index>(kept.size());
    out.basis.resize(n, rank);
    out.singular_values.resize(rank);
    for (Eigen::Index k = 0; k < rank; ++k) {
        out.basis.col(k) = solver.eigenvectors().col(kept[static_cast<std::size_t>(k)]);
        out.singular_values(k) = sig(kept[static_cast<std::size_t>(k)]);
    }
    if (rank > 0) {
        const Eigen::VectorXd inv = out.singular_values.cwiseInverse();
        const ComplexMatrix coords = inv.cast<cplx>().asDiagonal() * (out.basis.adjoint() * r * out.basis) *
                                     inv.cast<cplx>().asDiagonal();
        out.x = out.basis * coords * out.basis.adjoint();
    }
    out.residual = operator_norm(d * out.x * d - r);
    if (out.residual > tol.bound(operator_norm(r))) {
        throw Error(ErrorKind::UnsolvableOnRange,
                    "range_restricted_solve: equation unsolvable on range, residual " +
                        std::to_string(out.residual),
                    out.residual);
    }
    return out;
}

double multiset_distance(std::vector<cplx> a, std::vector<cplx> b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    struct Cand {
        double dist;
        std::size_t i, j;
    };
    std::vector<Cand> cands;
    cands.reserve(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) cands.push_back({std::abs(a[i] - b[j]), i, j});
    std::sort(cands.begin(), cands.end(), [](const Cand& l, const Cand& r) { return l.dist < r.dist; });
    std::vector<bool> used_a(a.size()), used_b(b.size());
    double worst = 0.0;
    std::size_t matched = 0;
    for (const auto& c : cands) {
        if (used_a[c.i] || used_b[c.j]) continue;
        used_a[c.i] = used_b[c.j] = true;
        worst = std::max(worst, c.dist);
        if (++matched == a.size()) break;
    }
    return worst;
}

} // namespace tetra
