#include "tetra/jointspec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace tetra {

CommutingPair verify_commuting(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
    require_same_order(a, b, "verify_commuting");
    const double res = operator_norm(commutator(a, b));
    const double bound = tol * (operator_norm(a) * operator_norm(b) + 1.0);
    if (res > bound) {
        throw Error(ErrorKind::NotCommuting,
                    "pair does not commute: ||AB - BA|| = " + std::to_string(res), res);
    }
    return {a, b, res};
}

double joint_residual(const ComplexMatrix& a, const ComplexMatrix& b, cplx lambda, cplx mu) {
    const Eigen::Index n = a.rows();
    if (n == 0) return 0.0;
    ComplexMatrix stack(2 * n, n);
    stack.topRows(n) = a - lambda * identity(n);
    stack.bottomRows(n) = b - mu * identity(n);
    return min_singular_value(stack);
}

namespace {

struct Candidate {
    ComplexVector v;
    double residual = std::numeric_limits<double>::infinity();
};

double vector_residual(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexVector& v) {
    const cplx l = v.dot(a * v);
    const cplx m = v.dot(b * v);
    return std::max((a * v - l * v).norm(), (b * v - m * v).norm());
}

Candidate from_random_combination(const ComplexMatrix& a, const ComplexMatrix& b, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    const cplx gamma{normal(rng), normal(rng)};
    const EigenPairs ep = eigen_decompose(a + gamma * b);
    Candidate best;
    for (Eigen::Index j = 0; j < ep.vectors.cols(); ++j) {
        const ComplexVector v = ep.vectors.col(j);
        const double res = vector_residual(a, b, v);
        if (res < best.residual) best = {v, res};
    }
    return best;
}

// Common approximate kernel of [A - lI; B - mI] over all candidate (l, m).
Candidate from_eigenspace_intersection(const ComplexMatrix& a, const ComplexMatrix& b) {
    const Eigen::Index n = a.rows();
    const auto la = eigenvalues(a);
    const auto lb = eigenvalues(b);
    Candidate best;
    double best_sigma = std::numeric_limits<double>::infinity();
    ComplexMatrix stack(2 * n, n);
    for (const cplx l : la) {
        for (const cplx m : lb) {
            stack.topRows(n) = a - l * identity(n);
            stack.bottomRows(n) = b - m * identity(n);
            Eigen::JacobiSVD<ComplexMatrix> svd(stack, Eigen::ComputeThinV);
            const double sigma = svd.singularValues()(n - 1);
            if (sigma < best_sigma) {
                best_sigma = sigma;
                best.v = svd.matrixV().col(n - 1);
            }
        }
    }
    if (best.v.size() == n) best.residual = vector_residual(a, b, best.v);
    return best;
}

// Replaces each value by the mean of its single-linkage cluster at width
// `width`. The diagonal of a unitarily triangularized matrix sums to the trace
// over each invariant block, so a cluster mean is accurate to rounding even
// when the individual entries of a defective cluster are not.
void average_clusters(std::vector<cplx*>& vals, double width) {
    const std::size_t n = vals.size();
    std::vector<std::size_t> parent(n);
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(*vals[i] - *vals[j]) <= width) parent[find(i)] = find(j);
    std::vector<cplx> sum(n, 0.0);
    std::vector<int> count(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        sum[find(i)] += *vals[i];
        ++count[find(i)];
    }
    for (std::size_t i = 0; i < n; ++i) *vals[i] = sum[find(i)] / static_cast<double>(count[find(i)]);
}

} // namespace

JointSpectrum joint_eigenvalues(const CommutingPair& pair, std::mt19937_64& rng, const JointSpecOptions& opts) {
    const Eigen::Index n = pair.a.rows();
    JointSpectrum out;
    out.pairs.reserve(static_cast<std::size_t>(n));
    const double threshold = opts.tol * (operator_norm(pair.a) + operator_norm(pair.b) + 1.0);

    ComplexMatrix cur_a = pair.a;
    ComplexMatrix cur_b = pair.b;
    while (cur_a.rows() > 0) {
        const Eigen::Index m = cur_a.rows();
        if (m == 1) {
            out.pairs.push_back({cur_a(0, 0), cur_b(0, 0), 0.0});
            break;
        }
        Candidate c = from_random_combination(cur_a, cur_b, rng);
        if (c.residual > threshold) {
            const Candidate retry = from_random_combination(cur_a, cur_b, rng);
            if (retry.residual < c.residual) c = retry;
        }
        if (c.residual > threshold) {
            const Candidate fallback = from_eigenspace_intersection(cur_a, cur_b);
            if (fallback.residual < c.residual) c = fallback;
        }
        if (c.residual > threshold) {
            throw Error(ErrorKind::DeflationFailed,
                        "deflation failed on a " + std::to_string(m) + "x" + std::to_string(m) +
                            " block: best joint eigenvector residual " + std::to_string(c.residual),
                        c.residual);
        }

        // unitary Q with first column proportional to v
        Eigen::HouseholderQR<ComplexMatrix> qr(ComplexMatrix(c.v));
        const ComplexMatrix q = qr.householderQ();
        const ComplexMatrix ta = q.adjoint() * cur_a * q;
        const ComplexMatrix tb = q.adjoint() * cur_b * q;
        out.pairs.push_back({ta(0, 0), tb(0, 0), 0.0});
        cur_a = ta.bottomRightCorner(m - 1, m - 1);
        cur_b = tb.bottomRightCorner(m - 1, m - 1);
    }

    if (opts.cluster_width > 0) {
        std::vector<cplx*> ls, ms;
        for (auto& p : out.pairs) {
            ls.push_back(&p.lambda);
            ms.push_back(&p.mu);
        }
        average_clusters(ls, opts.cluster_width * (operator_norm(pair.a) + 1.0));
        average_clusters(ms, opts.cluster_width * (operator_norm(pair.b) + 1.0));
    }
    for (auto& p : out.pairs) p.residual = joint_residual(pair.a, pair.b, p.lambda, p.mu);
    return out;
}

JointSpectrum joint_eigenvalues(const CommutingPair& pair, std::uint64_t seed, const JointSpecOptions& opts) {
    std::mt19937_64 rng(seed);
    return joint_eigenvalues(pair, rng, opts);
}

double joint_multiset_distance(const std::vector<std::pair<cplx, cplx>>& lhs,
                               const std::vector<std::pair<cplx, cplx>>& rhs) {
    if (lhs.size() != rhs.size()) return std::numeric_limits<double>::infinity();
    struct Cand {
        double dist;
        std::size_t i, j;
    };
    std::vector<Cand> cands;
    for (std::size_t i = 0; i < lhs.size(); ++i)
        for (std::size_t j = 0; j < rhs.size(); ++j)
            cands.push_back({std::max(std::abs(lhs[i].first - rhs[j].first),
                                      std::abs(lhs[i].second - rhs[j].second)),
                             i, j});
    std::sort(cands.begin(), cands.end(), [](const Cand& l, const Cand& r) { return l.dist < r.dist; });
    std::vector<bool> ul(lhs.size()), ur(rhs.size());
    double worst = 0.0;
    for (const auto& c : cands) {
        if (ul[c.i] || ur[c.j]) continue;
        ul[c.i] = ur[c.j] = true;
        worst = std::max(worst, c.dist);
    }
    return worst;
}

std::vector<std::pair<cplx, cplx>> as_pairs(const JointSpectrum& js) {
    std::vector<std::pair<cplx, cplx>> out;
    out.reserve(js.pairs.size());
    for (const auto& p : js.pairs) out.emplace_back(p.lambda, p.mu);
    return out;
}

} // namespace tetra
