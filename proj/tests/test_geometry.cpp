#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "warpband/band.hpp"

using namespace warpband;
namespace num = std::numbers;

namespace {

SymmetricBand round_sphere_band(int n, const Interval& dom = {0.1, num::pi - 0.1}) {
    return SymmetricBand(n, WarpingProfile::sine(1.0, 1.0, 0.0, dom),
                         WarpingProfile::constant(1.0, dom), 0.0);
}

}  // namespace

TEST_CASE("band construction enforces the admissible ranges") {
    const Interval dom{0.1, 1.0};
    const WarpingProfile rho = WarpingProfile::linear(1.0, 0.0, dom);
    const WarpingProfile u = WarpingProfile::constant(1.0, dom);
    CHECK_THROWS_AS(SymmetricBand(5, rho, u, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(SymmetricBand(3, rho, u, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(SymmetricBand(3, rho, u, 4.0), std::invalid_argument);
    CHECK_THROWS_AS(SymmetricBand(4, rho, u, 3.5), std::invalid_argument);
    CHECK_NOTHROW(SymmetricBand(3, rho, u, 3.5));
    // mismatched domains
    const WarpingProfile u2 = WarpingProfile::constant(1.0, Interval{0.1, 2.0});
    CHECK_THROWS_AS(SymmetricBand(3, rho, u2, 0.0), std::invalid_argument);
    // non-positive metric profile
    const WarpingProfile bad = WarpingProfile::linear(1.0, 0.5, dom);
    CHECK_THROWS_AS(SymmetricBand(3, bad, u, 0.0), std::invalid_argument);
}

TEST_CASE("scalar curvature of the standard examples") {
    // round n-sphere: R = n(n-1) at every slice
    for (int n : {3, 4}) {
        const SymmetricBand b = round_sphere_band(n);
        for (double t : {0.3, 1.0, num::pi / 2, 2.5})
            CHECK(scalar_curvature(b, t) == doctest::Approx(n * (n - 1.0)).epsilon(1e-12));
    }
    // cylinder over the unit 3-sphere
    {
        const Interval dom{0.0, 1.0};
        const SymmetricBand cyl(4, WarpingProfile::constant(1.0, dom),
                                WarpingProfile::constant(1.0, dom), 0.0);
        CHECK(scalar_curvature(cyl, 0.5) == doctest::Approx(6.0));
    }
    // flat cone rho = t
    {
        const Interval dom{0.0, 1.0};
        const SymmetricBand cone(3, WarpingProfile::linear(1.0, 0.0, dom),
                                 WarpingProfile::constant(1.0, dom), 0.0, /*conical=*/true);
        CHECK(scalar_curvature(cone, 0.7) == doctest::Approx(0.0).epsilon(1e-14));
    }
}

TEST_CASE("round sphere keeps R = n(n-1) on a fine grid") {
    for (int n : {3, 4}) {
        const SymmetricBand b = round_sphere_band(n);
        const Interval dom = b.domain();
        double worst = 0.0;
        for (int i = 0; i <= 1000; ++i) {
            const double t = dom.lo + dom.length() * i / 1000.0;
            worst = std::max(worst, std::abs(scalar_curvature(b, t) - n * (n - 1.0)));
        }
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("slice geometry of round spheres") {
    const SymmetricBand b = round_sphere_band(3);
    SUBCASE("t = pi/4") {
        const SliceGeometry g = slice_geometry(b, num::pi / 4, 2.0);
        CHECK(g.H == doctest::Approx(2.0).epsilon(1e-14));        // 2 cot(pi/4)
        CHECK(g.R_slice == doctest::Approx(4.0).epsilon(1e-14));  // 2 / sin^2(pi/4)
        CHECK(g.eta == doctest::Approx(0.0).epsilon(1e-13));
        CHECK(g.A0_norm2 == 0.0);
    }
    SUBCASE("equator") {
        const SliceGeometry g = slice_geometry(b, num::pi / 2, 0.0);
        CHECK(g.H == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(g.eta == doctest::Approx(0.0).epsilon(1e-14));
    }
}

TEST_CASE("A0 vanishes for every slice of every band") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> c(-0.3, 0.3);
    for (int k = 0; k < 5; ++k) {
        const Interval dom{0.3, 1.9};
        const SymmetricBand b(k % 2 == 0 ? 3 : 4,
                              WarpingProfile::exp_poly({c(rng), c(rng), c(rng)}, dom),
                              WarpingProfile::exp_poly({c(rng), c(rng)}, dom), 0.5 + k * 0.3);
        for (double t : {0.4, 1.0, 1.7}) CHECK(slice_geometry(b, t, 0.0).A0_norm2 == 0.0);
    }
}

TEST_CASE("spectral scalar curvature") {
    SUBCASE("constant weight gives R/2 exactly") {
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> c(-0.2, 0.2);
        const Interval dom{0.3, 1.6};
        const SymmetricBand b(3, WarpingProfile::exp_poly({0.0, c(rng), c(rng)}, dom),
                              WarpingProfile::constant(2.5, dom), 1.5);
        for (int i = 0; i <= 50; ++i) {
            const double t = dom.lo + dom.length() * i / 50.0;
            CHECK(spectral_scalar_curvature(b, t) ==
                  doctest::Approx(0.5 * scalar_curvature(b, t)).epsilon(1e-14));
        }
    }
    SUBCASE("exponential weight on the unit cylinder") {
        const Interval dom{0.0, 2.0};
        const SymmetricBand cyl(3, WarpingProfile::constant(1.0, dom),
                                WarpingProfile::exp_poly({0.0, 1.0}, dom), 1.0);
        // R = 2 and Lap u = u, so the two halves cancel
        CHECK(spectral_scalar_curvature(cyl, 1.0) == doctest::Approx(0.0).epsilon(1e-14));
    }
}

TEST_CASE("sigma reduction identity") {
    SUBCASE("exponential weight, sigma = 1/2, unit cylinder") {
        const Interval dom{0.0, 2.0};
        const SymmetricBand cyl(3, WarpingProfile::constant(1.0, dom),
                                WarpingProfile::exp_poly({0.0, 1.0}, dom), 1.0);
        const double sigma = 0.5;
        const WarpingProfile v = sigma_reduction(cyl.weight(), sigma, 1.0);
        for (double t : {0.3, 1.0, 1.8}) {
            const ProfileValue u = cyl.weight().eval(t);
            const double lhs = -u.ddf / u.f + sigma * (u.df / u.f) * (u.df / u.f);
            const ProfileValue vv = v.eval(t);
            const double rhs = -(1.0 / (1.0 - sigma)) * vv.ddf / vv.f;
            CHECK(lhs == doctest::Approx(-0.5).epsilon(1e-14));
            CHECK(rhs == doctest::Approx(-0.5).epsilon(1e-14));
        }
    }
    SUBCASE("constant weight maps to zero on both sides") {
        const Interval dom{0.0, 1.0};
        const WarpingProfile u = WarpingProfile::constant(3.0, dom);
        const WarpingProfile v = sigma_reduction(u, 0.7, 1.0);
        CHECK(v.eval(0.5).df == 0.0);
    }
    SUBCASE("sigma = 0 is the identity map") {
        const Interval dom{0.5, 1.5};
        const WarpingProfile u =
            WarpingProfile::power_of(WarpingProfile::linear(1.0, 0.0, dom), 0.8);
        const WarpingProfile v = sigma_reduction(u, 0.0, 1.0);
        CHECK(v.eval(1.2).f == doctest::Approx(u.eval(1.2).f).epsilon(1e-15));
        CHECK(v.eval(1.2).ddf == doctest::Approx(u.eval(1.2).ddf).epsilon(1e-13));
    }
    SUBCASE("sigma = 1 is rejected") {
        const Interval dom{0.0, 1.0};
        CHECK_THROWS_AS(sigma_reduction(WarpingProfile::constant(1.0, dom), 1.0, 1.0),
                        std::invalid_argument);
    }
    SUBCASE("random positive tabulated profiles satisfy the identity pointwise") {
        std::mt19937 rng(41);
        std::uniform_real_distribution<double> c(-0.25, 0.25), sdist(-0.8, 0.8);
        const Interval dom{0.4, 1.8};
        for (int k = 0; k < 20; ++k) {
            const WarpingProfile smooth = WarpingProfile::exp_poly({c(rng), c(rng), c(rng)}, dom);
            const int nodes = 2001;
            std::vector<double> vals(nodes);
            for (int i = 0; i < nodes; ++i)
                vals[i] = smooth.eval(dom.lo + dom.length() * i / (nodes - 1)).f;
            const WarpingProfile tab =
                WarpingProfile::tabulated(dom.lo, dom.length() / (nodes - 1), std::move(vals));
            const double sigma = sdist(rng);
            const WarpingProfile red = sigma_reduction(tab, sigma, 1.0);
            double worst = 0.0;
            for (int i = 1; i < 40; ++i) {
                const double t = dom.lo + dom.length() * i / 40.0;
                const ProfileValue u = tab.eval(t);
                const double lhs = -u.ddf / u.f + sigma * (u.df / u.f) * (u.df / u.f);
                const ProfileValue vv = red.eval(t);
                const double rhs = -(1.0 / (1.0 - sigma)) * vv.ddf / vv.f;
                worst = std::max(worst, std::abs(lhs - rhs));
            }
            CHECK(worst < 1e-9);
        }
    }
}

TEST_CASE("singular slices are rejected") {
    const Interval dom{0.0, 1.0};
    const SymmetricBand cone(3, WarpingProfile::linear(1.0, 0.0, dom),
                             WarpingProfile::constant(1.0, dom), 0.0, /*conical=*/true);
    CHECK_THROWS_AS((void)scalar_curvature(cone, 0.0), std::domain_error);
    CHECK_THROWS_AS((void)slice_geometry(cone, 0.0, 0.0), std::domain_error);
}
