#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ellmot/weierstrass.hpp"
#include "test_support.hpp"

using namespace ellmot;
using namespace ellmot::testing;

namespace {

double rel(const cplx& a, const cplx& b) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

} // namespace

TEST_CASE("wp parity and Laurent behaviour") {
    auto rng = make_rng(10);
    const CurveData curve = random_curve(rng);

    SUBCASE("parity") {
        for (int i = 0; i < 50; ++i) {
            const cplx z = random_cell_point(rng, curve.lattice);
            const auto [p, pp] = wp_and_prime(z, curve);
            const auto [pm, ppm] = wp_and_prime(-z, curve);
            CHECK(rel(p, pm) < 1e-9);
            CHECK(rel(pp, -ppm) < 1e-9);
        }
    }
    SUBCASE("z^2 wp(z) -> 1 near the origin") {
        for (double r : {1e-4, 1e-5}) {
            const cplx z = r * std::polar(1.0, 0.7);
            CHECK(std::abs(z * z * wp(z, curve) - 1.0) < 1e-7);
        }
    }
    SUBCASE("pole is rejected") {
        CHECK_THROWS_AS((void)wp(cplx(0.0), curve), pole_error);
        CHECK_THROWS_AS((void)zeta(curve.lattice.omega1(), curve), pole_error);
    }
}

TEST_CASE("Weierstrass differential equation residual") {
    auto rng = make_rng(11);
    const CurveData curve = random_curve(rng);
    for (int i = 0; i < 100; ++i) {
        const cplx z = random_cell_point(rng, curve.lattice);
        const auto [p, pp] = wp_and_prime(z, curve);
        const cplx lhs = pp * pp;
        const cplx rhs = 4.0 * p * p * p - curve.g2 * p - curve.g3;
        const double scale = std::max({1.0, std::abs(lhs), 4.0 * std::pow(std::abs(p), 3)});
        CHECK(std::abs(lhs - rhs) / scale < 1e-8);
    }
}

TEST_CASE("zeta quasi-periodicity and derivative") {
    auto rng = make_rng(12);
    const CurveData curve = random_curve(rng);
    const auto& b = curve.lattice;

    SUBCASE("oddness") {
        for (int i = 0; i < 20; ++i) {
            const cplx z = random_cell_point(rng, b);
            CHECK(rel(zeta(-z, curve), -zeta(z, curve)) < 1e-9);
        }
    }
    SUBCASE("zeta(z + omega_i) = zeta(z) + eta_i") {
        for (int i = 0; i < 50; ++i) {
            const cplx z = random_cell_point(rng, b);
            CHECK(rel(zeta(z + b.omega1(), curve), zeta(z, curve) + curve.eta1) < 1e-9);
            CHECK(rel(zeta(z + b.omega2(), curve), zeta(z, curve) + curve.eta2) < 1e-9);
        }
    }
    SUBCASE("d zeta / dz = -wp by central differences") {
        const double h = 1e-5;
        for (int i = 0; i < 20; ++i) {
            const cplx z = random_cell_point(rng, b);
            const cplx fd = (zeta(z + h, curve) - zeta(z - h, curve)) / (2.0 * h);
            CHECK(std::abs(fd + wp(z, curve)) / std::max(1.0, std::abs(wp(z, curve))) < 1e-6);
        }
    }
}

TEST_CASE("sigma normalization, parity, transformation") {
    auto rng = make_rng(13);
    const CurveData curve = random_curve(rng);
    const auto& b = curve.lattice;

    SUBCASE("sigma(z)/z near 0") {
        const cplx z = 1e-3 * std::polar(1.0, 1.1);
        CHECK(std::abs(sigma(z, curve) / z - 1.0) < 1e-9);
    }
    SUBCASE("oddness") {
        for (int i = 0; i < 20; ++i) {
            const cplx z = random_cell_point(rng, b);
            CHECK(rel(sigma(-z, curve), -sigma(z, curve)) < 1e-9);
        }
    }
    SUBCASE("transformation law under both periods") {
        for (int i = 0; i < 50; ++i) {
            const cplx z = random_cell_point(rng, b);
            const cplx lhs1 = sigma(z + b.omega1(), curve);
            const cplx rhs1 = -sigma(z, curve) * std::exp(curve.eta1 * (z + b.omega1() / 2.0));
            CHECK(rel(lhs1, rhs1) < 1e-9);
            const cplx lhs2 = sigma(z + b.omega2(), curve);
            const cplx rhs2 = -sigma(z, curve) * std::exp(curve.eta2 * (z + b.omega2() / 2.0));
            CHECK(rel(lhs2, rhs2) < 1e-9);
        }
    }
    SUBCASE("d log sigma / dz = zeta by central differences") {
        const double h = 1e-5;
        for (int i = 0; i < 20; ++i) {
            const cplx z = random_cell_point(rng, b);
            const cplx num = sigma(z + h, curve) / sigma(z - h, curve);
            const cplx fd = std::log(num) / (2.0 * h);
            CHECK(std::abs(fd - zeta(z, curve)) / std::max(1.0, std::abs(zeta(z, curve))) < 1e-6);
        }
    }
}

TEST_CASE("quasi-period consistency") {
    auto rng = make_rng(14);
    for (int i = 0; i < 10; ++i) {
        const CurveData curve = random_curve(rng);
        const auto [e1, e2] = quasi_periods(curve);
        // Route 1 (theta constants, stored) vs route 2 (2 zeta(omega/2)).
        CHECK(rel(e1, curve.eta1) < 1e-9);
        CHECK(rel(e2, curve.eta2) < 1e-9);
        // Route 3: zeta(z + omega) - zeta(z) at a random point.
        const cplx z = random_cell_point(rng, curve.lattice);
        CHECK(rel(zeta(z + curve.lattice.omega1(), curve) - zeta(z, curve), e1) < 1e-9);
        // Legendre.
        const cplx leg = e1 * curve.lattice.omega2() - e2 * curve.lattice.omega1();
        CHECK(std::abs(leg - two_pi_i) < 1e-9);
    }
}

TEST_CASE("quasi-period scaling under lattice homothety") {
    auto rng = make_rng(15);
    const cplx w1 = random_scale(rng);
    const cplx w2 = w1 * random_tau(rng);
    const cplx lam = random_scale(rng);
    const CurveData curve = curve_from_periods(w1, w2);
    const CurveData scaled = curve_from_periods(lam * w1, lam * w2);
    CHECK(rel(scaled.eta1, curve.eta1 / lam) < 1e-9);
    CHECK(rel(scaled.eta2, curve.eta2 / lam) < 1e-9);
}

TEST_CASE("pseudo-addition formula") {
    auto rng = make_rng(16);
    const CurveData curve = random_curve(rng);
    for (int i = 0; i < 50; ++i) {
        const cplx z = random_cell_point(rng, curve.lattice);
        const cplx y = random_cell_point(rng, curve.lattice, {z});
        if (curve.lattice.distance(z + y) < 5e-2 || curve.lattice.distance(z - y) < 5e-2) {
            continue;
        }
        const auto [pz, ppz] = wp_and_prime(z, curve);
        const auto [py, ppy] = wp_and_prime(y, curve);
        const cplx lhs = zeta(z + y, curve) - zeta(z, curve) - zeta(y, curve);
        const cplx rhs = 0.5 * (ppz - ppy) / (pz - py);
        CHECK(rel(lhs, rhs) < 1e-9);
    }
}

TEST_CASE("evaluation is consistent across lattice shifts") {
    auto rng = make_rng(17);
    const CurveData curve = random_curve(rng);
    const auto& b = curve.lattice;
    for (int i = 0; i < 20; ++i) {
        const cplx z = random_cell_point(rng, b);
        const cplx shift = 3.0 * b.omega1() - 2.0 * b.omega2();
        CHECK(rel(wp(z + shift, curve), wp(z, curve)) < 1e-10);
        const cplx expect_zeta = zeta(z, curve) + 3.0 * curve.eta1 - 2.0 * curve.eta2;
        CHECK(rel(zeta(z + shift, curve), expect_zeta) < 1e-10);
    }
}

TEST_CASE("elliptic exponential") {
    auto rng = make_rng(18);
    const CurveData curve = random_curve(rng);
    const auto& b = curve.lattice;

    SUBCASE("lattice points map to infinity") {
        CHECK(elliptic_exp(cplx(0.0), curve).at_infinity);
        CHECK(elliptic_exp(b.omega1() + 2.0 * b.omega2(), curve).at_infinity);
    }
    SUBCASE("half period is 2-torsion") {
        const AffinePoint p = elliptic_exp(b.omega1() / 2.0, curve);
        CHECK(std::abs(p.y) < 1e-9 * std::max(1.0, std::abs(p.x)));
    }
    SUBCASE("periodicity") {
        for (int i = 0; i < 20; ++i) {
            const cplx z = random_cell_point(rng, b);
            const AffinePoint p = elliptic_exp(z, curve);
            const AffinePoint ps = elliptic_exp(z + b.omega2(), curve);
            CHECK(rel(p.x, ps.x) < 1e-9);
            CHECK(rel(p.y, ps.y) < 1e-9);
        }
    }
    SUBCASE("points satisfy the curve equation") {
        for (int i = 0; i < 20; ++i) {
            const AffinePoint p = elliptic_exp(random_cell_point(rng, b), curve);
            CHECK(curve_equation_residual(p, curve) < 1e-9);
        }
    }
}

TEST_CASE("elliptic logarithm") {
    auto rng = make_rng(19);

    SUBCASE("identity element") {
        const CurveData curve = random_curve(rng);
        CHECK(std::abs(elliptic_log(AffinePoint::infinity(), curve)) == 0.0);
    }
    SUBCASE("2-torsion point maps to the half period") {
        const CurveData curve = random_curve(rng);
        const cplx half = curve.lattice.omega1() / 2.0;
        const AffinePoint p{wp(half, curve), cplx(0.0), false};
        const cplx z = elliptic_log(p, curve);
        CHECK(curve.lattice.distance(z - half) < 1e-8 * curve.lattice.scale());
    }
    SUBCASE("round trip on random points, multiple curves") {
        for (int c = 0; c < 5; ++c) {
            const CurveData curve = random_curve(rng);
            for (int i = 0; i < 10; ++i) {
                const cplx z = random_cell_point(rng, curve.lattice);
                const AffinePoint p = elliptic_exp(z, curve);
                const cplx zl = elliptic_log(p, curve);
                CHECK(curve.lattice.distance(zl - z) < 1e-9 * std::max(1.0, curve.lattice.scale()));
            }
        }
    }
    SUBCASE("off-curve point is rejected") {
        const CurveData curve = random_curve(rng);
        CHECK_THROWS_AS((void)elliptic_log(AffinePoint{cplx(1.0), cplx(1.0), false}, curve),
                        input_error);
    }
}
