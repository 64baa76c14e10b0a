#include <doctest.h>

#include <cmath>

#include "support/generators.hpp"
#include "tetra/geometry.hpp"

using namespace tetra;
using namespace tetra::testing;

TEST_CASE("beta_decompose examples") {
    const BetaPair zero = beta_decompose({0, 0, 0});
    CHECK(zero.beta1 == cplx(0));
    CHECK(zero.beta2 == cplx(0));

    const BetaPair b = beta_decompose({0, 1, 0});
    CHECK(std::abs(b.beta1) < 1e-15);
    CHECK(std::abs(b.beta2 - 1.0) < 1e-15);

    // forward-construct from (1/4, 1/8) at x3 = 1/2, then invert
    const TetraPoint pt{0.25 + 0.125 * 0.5, 0.125 + 0.25 * 0.5, 0.5};
    const BetaPair back = beta_decompose(pt);
    CHECK(std::abs(back.beta1 - 0.25) < 1e-15);
    CHECK(std::abs(back.beta2 - 0.125) < 1e-15);

    try {
        beta_decompose({0, 0, 1});
        FAIL("expected BetaUndefined");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BetaUndefined);
    }
}

TEST_CASE("classify_tetra examples") {
    CHECK(classify_tetra({0, 0, 0}) == RegionTag::Interior);
    CHECK(classify_tetra({1, 0, 0}) == RegionTag::OtherTopBoundary);
    CHECK(classify_tetra({0, 0, 1}) == RegionTag::DistinguishedBoundary);
    CHECK(classify_tetra({2, 0, 0}) == RegionTag::Outside);
    CHECK(classify_tetra({0, 0, 1.5}) == RegionTag::Outside);
    CHECK(classify_tetra({0, 0, 0}, Semantics::Closed) == RegionTag::ClosureInteriorFace);
    CHECK(classify_tetra({1, 0, 0}, Semantics::Closed) == RegionTag::ClosureInteriorFace);
    CHECK(classify_tetra({0, 0, 1}, Semantics::Closed) == RegionTag::DistinguishedBoundary);
}

TEST_CASE("kernel_check examples") {
    const KernelCheck origin = kernel_check({0, 0, 0});
    CHECK(origin.nonvanishing);
    CHECK(std::abs(origin.min_modulus - 1.0) < 1e-15);

    const KernelCheck x1 = kernel_check({1, 0, 0});
    CHECK_FALSE(x1.nonvanishing);
    CHECK(x1.min_modulus == 0.0);

    const KernelCheck x2 = kernel_check({0, 1, 0});
    CHECK_FALSE(x2.nonvanishing);
    CHECK(x2.min_modulus == 0.0);

    CHECK_FALSE(kernel_check({2, 0, 0}).nonvanishing);
}

TEST_CASE("kernel_check agrees with a brute-force bidisc sample") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 40; ++t) {
        const TetraPoint pt = t % 2 ? interior_point(rng) : outside_point(rng);
        double brute = INFINITY;
        for (int i = 0; i < 64; ++i)
            for (int j = 0; j < 64; ++j)
                for (const double r : {0.5, 1.0}) {
                    const cplx z = std::polar(1.0, 2 * std::numbers::pi * i / 64);
                    const cplx w = std::polar(r, 2 * std::numbers::pi * j / 64);
                    brute = std::min(brute, std::abs(1.0 - z * pt.x1 - w * pt.x2 + z * w * pt.x3));
                }
        const KernelCheck kc = kernel_check(pt, 256);
        // the sampled minimum can only overestimate the true minimum
        CHECK(kc.min_modulus <= brute + 1e-12);
    }
}

TEST_CASE("gamma_classify examples") {
    CHECK(gamma_classify({0, 0}) == RegionTag::Interior);
    CHECK(gamma_classify({2, 1}) == RegionTag::DistinguishedBoundary);
    CHECK(gamma_classify({0, 1}) == RegionTag::DistinguishedBoundary);
    CHECK(gamma_classify({3, 0}) == RegionTag::Outside);
}

TEST_CASE("gamma_lift_check examples") {
    CHECK(gamma_lift_check({0, 0, 0}));
    CHECK_FALSE(gamma_lift_check({2, 0, 0}));
    CHECK(gamma_lift_check({0, 0, 1}));
}

TEST_CASE("in_bDE examples") {
    CHECK(in_bDE({1, 1, 1}));
    CHECK(in_bDE({1, -1, -1}));
    CHECK_FALSE(in_bDE({0, 0, 1}));
}

TEST_CASE("property: interior points agree across the three tests") {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 300; ++t) {
        const TetraPoint pt = interior_point(rng);
        CHECK(classify_tetra(pt) == RegionTag::Interior);
        CHECK(kernel_check(pt).nonvanishing);
        CHECK(gamma_lift_check(pt));
        CHECK(std::max({std::abs(pt.x1), std::abs(pt.x2), std::abs(pt.x3)}) < 1.0);
    }
}

TEST_CASE("property: large beta sum at x3 = 0 is not interior") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 200; ++t) {
        const double total = 1.01 + u(rng), split = u(rng);
        const TetraPoint pt = beta_compose({std::polar(total * split, 6.0 * u(rng)),
                                            std::polar(total * (1 - split), 6.0 * u(rng))},
                                           0.0);
        CHECK(classify_tetra(pt) == RegionTag::Outside);
        CHECK_FALSE(kernel_check(pt, 512).nonvanishing);
    }
}

TEST_CASE("property: gamma lift matches closure membership") {
    std::mt19937_64 rng(14);
    for (int t = 0; t < 300; ++t) {
        const TetraPoint pt = t % 2 ? interior_point(rng) : outside_point(rng);
        CHECK(gamma_lift_check(pt) == in_closure(classify_tetra(pt)));
    }
    // distinguished boundary points are in the closure too
    for (int t = 0; t < 50; ++t) {
        const cplx x2 = in_disc(rng), x3 = on_circle(rng);
        const TetraPoint pt{std::conj(x2) * x3, x2, x3};
        CHECK(classify_tetra(pt) == RegionTag::DistinguishedBoundary);
        CHECK(gamma_lift_check(pt));
    }
}

TEST_CASE("property: bDE sits inside the distinguished boundary") {
    std::mt19937_64 rng(15);
    for (int t = 0; t < 200; ++t) {
        const cplx a = on_circle(rng), b = on_circle(rng);
        const TetraPoint pt{a, b, a * b};
        CHECK(in_bDE(pt));
        CHECK(classify_tetra(pt) == RegionTag::DistinguishedBoundary);
    }
}

TEST_CASE("property: beta round trip") {
    std::mt19937_64 rng(16);
    for (int t = 0; t < 300; ++t) {
        const TetraPoint pt{gaussian(rng), gaussian(rng), in_disc(rng, 0.99)};
        const TetraPoint back = beta_compose(beta_decompose(pt), pt.x3);
        CHECK(std::abs(back.x1 - pt.x1) <= 1e-12 * std::max(1.0, std::abs(pt.x1)));
        CHECK(std::abs(back.x2 - pt.x2) <= 1e-12 * std::max(1.0, std::abs(pt.x2)));
    }
}
