#include <doctest.h>

#include <cmath>
#include <numbers>

#include "warpband/model.hpp"
#include "warpband/stability.hpp"

using namespace warpband;
namespace num = std::numbers;

TEST_CASE("gamma coefficient reference values") {
    CHECK(gamma_coefficient(3, 0.0) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(gamma_coefficient(4, 0.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(gamma_coefficient(4, 1.0) == doctest::Approx(0.625).epsilon(1e-15));
    CHECK_THROWS_AS(gamma_coefficient(3, 4.0), std::invalid_argument);  // denominator zero
}

TEST_CASE("stability potentials on model bands reach the bound with equality") {
    for (int n : {3, 4}) {
        for (double g : {0.5, 1.0, 1.5}) {
            const ModelBand mb = make_model_band(ModelSpec{n, g, 2.0, {}}, ModelSign::Positive);
            const Interval dom = mb.band.domain();
            for (int i = 1; i < 20; ++i) {
                const double t = dom.lo + dom.length() * i / 20.0;
                const double mu = mb.profiles.m.eval(t).f;
                const double mu_nu = mb.profiles.m.eval(t).df;
                const StabilityPotentials sp = stability_potentials(mb.band, t, mu, mu_nu, 0.0);
                CHECK(std::abs(sp.Z) < 1e-11);
                CHECK(std::abs(sp.square_term) < 1e-22);
                CHECK(sp.W == doctest::Approx(sp.W_bound).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("Z is eta- and f-homogeneous") {
    const ModelBand mb = make_model_band(ModelSpec{3, 1.0, 2.0, {}}, ModelSign::Positive);
    const double t = 0.5 * (mb.band.domain().lo + mb.band.domain().hi);
    const double mu = mb.profiles.m.eval(t).f;  // eta = 0 at the model prescription
    const StabilityPotentials sp = stability_potentials(mb.band, t, mu, 0.0, 0.0);
    CHECK(sp.Z == 0.0);
}

TEST_CASE("round-sphere equator potential") {
    const Interval dom{0.1, num::pi - 0.1};
    const SymmetricBand sphere(3, WarpingProfile::sine(1.0, 1.0, 0.0, dom),
                               WarpingProfile::constant(1.0, dom), 0.0);
    const double t = num::pi / 2;
    // prescription 2 cot t with normal derivative -2/sin^2 t
    const StabilityPotentials sp = stability_potentials(sphere, t, 0.0, -2.0, 0.0);
    CHECK(sp.W == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(sp.W_bound == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("W stays below the bound when the comparison hypotheses hold") {
    // take the model prescription but a weaker (more negative) mu_nu, as a
    // unit-speed map composition would produce
    const ModelBand mb = make_model_band(ModelSpec{3, 1.0, 2.0, {}}, ModelSign::Positive);
    const Interval dom = mb.band.domain();
    for (int i = 1; i < 10; ++i) {
        const double t = dom.lo + dom.length() * i / 10.0;
        const double mu = mb.profiles.m.eval(t).f;
        const double mu_nu = mb.profiles.m.eval(t).df;
        const StabilityPotentials sp = stability_potentials(mb.band, t, mu, 0.7 * mu_nu, 0.0);
        CHECK(sp.W <= sp.W_bound + 1e-12);
    }
}

TEST_CASE("reduced operator spectrum on round cross-sections") {
    SUBCASE("flat potential reproduces the sphere spectrum") {
        const auto sp = ltilde_spectrum(3, 0.0, 1.0, 1.0, 2);
        REQUIRE(sp.size() == 3);
        CHECK(sp[0].lambda == doctest::Approx(0.0));
        CHECK(sp[1].lambda == doctest::Approx(2.0));
        CHECK(sp[2].lambda == doctest::Approx(6.0));
        CHECK(sp[0].multiplicity == 1);
        CHECK(sp[1].multiplicity == 3);
        CHECK(sp[2].multiplicity == 5);
    }
    SUBCASE("constant potential shift") {
        const auto sp = ltilde_spectrum(3, 0.0, 1.0, 0.9, 0);
        CHECK(sp[0].lambda == doctest::Approx(1.0 - 1.0 / 0.81).epsilon(1e-14));
    }
    SUBCASE("prefactor at gamma = 2") {
        const auto sp = ltilde_spectrum(3, 2.0, 1.0, 1.0, 1);
        CHECK(sp[1].lambda == doctest::Approx(4.0));
    }
    SUBCASE("multiplicities on the three-sphere") {
        const auto sp = ltilde_spectrum(4, 0.0, 1.0, 1.0, 3);
        CHECK(sp[1].multiplicity == 4);
        CHECK(sp[2].multiplicity == 9);
        CHECK(sp[3].multiplicity == 16);
    }
    SUBCASE("lowest eigenvalue is increasing in the comparison size and vanishes at equality") {
        double prev = -1e300;
        for (double xi : {0.5, 0.8, 1.0, 1.3, 2.0}) {
            const double lam0 = ltilde_spectrum(3, 1.0, 1.0, xi, 0)[0].lambda;
            CHECK(lam0 > prev);
            prev = lam0;
        }
        CHECK(ltilde_spectrum(3, 1.0, 1.0, 1.0, 0)[0].lambda == doctest::Approx(0.0));
        CHECK(ltilde_spectrum(3, 1.0, 1.0, 0.99, 0)[0].lambda < 0.0);
    }
}

TEST_CASE("Gauss-Bonnet margin") {
    const Interval dom{0.1, num::pi - 0.1};
    const SymmetricBand sphere(3, WarpingProfile::sine(1.0, 1.0, 0.0, dom),
                               WarpingProfile::constant(1.0, dom), 0.0);
    const WarpingProfile xi = WarpingProfile::sine(1.0, 1.0, 0.0, dom);
    SUBCASE("rigidity slice gives zero margin") {
        const double t = 1.1;
        CHECK(gauss_bonnet_margin(2, sphere, t, xi, t) == doctest::Approx(0.0).epsilon(1e-13));
    }
    SUBCASE("oversized slice drives the margin negative") {
        const SymmetricBand cyl(3, WarpingProfile::constant(1.0, dom),
                                WarpingProfile::constant(1.0, dom), 0.0);
        const WarpingProfile xi9 = WarpingProfile::constant(0.9, dom);
        const double margin = gauss_bonnet_margin(2, cyl, 1.0, xi9, 1.0);
        CHECK(margin == doctest::Approx(4.0 * num::pi * (1.0 - 1.0 / 0.81)).epsilon(1e-13));
        CHECK(margin < 0.0);
    }
    SUBCASE("vanishing Euler characteristic is strictly negative") {
        CHECK(gauss_bonnet_margin(0, sphere, 1.0, xi, 1.3) < 0.0);
    }
    SUBCASE("only defined in dimension three") {
        const SymmetricBand four(4, WarpingProfile::constant(1.0, dom),
                                 WarpingProfile::constant(1.0, dom), 0.0);
        CHECK_THROWS_AS((void)gauss_bonnet_margin(2, four, 1.0, xi, 1.0), std::invalid_argument);
    }
}

TEST_CASE("whole-band dominance makes the margin nonpositive") {
    // margin(chi = 2) <= 0 whenever rho >= xi, equality only at rho = xi
    const Interval dom{0.2, num::pi - 0.2};
    const SymmetricBand sphere(3, WarpingProfile::sine(1.0, 1.0, 0.0, dom),
                               WarpingProfile::constant(1.0, dom), 0.0);
    const WarpingProfile xi = WarpingProfile::sine(0.95, 1.0, 0.0, dom);  // xi <= rho
    for (int i = 0; i <= 50; ++i) {
        const double t = dom.lo + dom.length() * i / 50.0;
        CHECK(gauss_bonnet_margin(2, sphere, t, xi, t) <= 1e-12);
    }
}

TEST_CASE("conformal scalar curvature change") {
    SUBCASE("identity factor leaves the curvature alone") {
        const AxisymmetricPoly one = AxisymmetricPoly::constant(1.0);
        CHECK(listing_conformal_scalar(3, one, 0.25, 1.0, 0.7) == doctest::Approx(6.0));
        CHECK(listing_conformal_scalar(2, one, 0.25, 2.0, 1.1) == doctest::Approx(0.5));
    }
    SUBCASE("constant factor rescales") {
        const AxisymmetricPoly c = AxisymmetricPoly::constant(1.7);
        const double alpha = 0.25;
        CHECK(listing_conformal_scalar(3, c, alpha, 1.0, 0.4) ==
              doctest::Approx(6.0 * std::pow(1.7, -4.0 * alpha)).epsilon(1e-14));
    }
    SUBCASE("axisymmetric factor matches a finite-difference evaluation") {
        // v = 1 + 0.1 cos(theta) on the unit three-sphere, alpha = 1/4
        const AxisymmetricPoly v({1.0, 0.1});
        const double alpha = 0.25, radius = 1.0;
        for (double theta : {0.5, 1.0, 1.9, 2.6}) {
            const double got = listing_conformal_scalar(3, v, alpha, radius, theta);
            // finite differences in theta for the Laplacian and gradient
            const double h = 1e-5;
            auto vv = [&](double th) { return v(std::cos(th)); };
            const double vt = (vv(theta + h) - vv(theta - h)) / (2 * h);
            const double vtt = (vv(theta + h) - 2 * vv(theta) + vv(theta - h)) / (h * h);
            const double lap = (vtt + 2.0 * std::cos(theta) / std::sin(theta) * vt) /
                               (radius * radius);
            const double grad_log2 = vt * vt / (vv(theta) * vv(theta) * radius * radius);
            const double ref = std::pow(vv(theta), -4.0 * alpha) *
                               (6.0 / (radius * radius) - 8.0 * alpha * lap / vv(theta) -
                                8.0 * alpha * (alpha - 1.0) * grad_log2);
            CHECK(got == doctest::Approx(ref).epsilon(1e-6));
        }
    }
    SUBCASE("non-positive factors and out-of-range exponents are rejected") {
        const AxisymmetricPoly bad({0.5, 1.0});  // negative at x = -1
        CHECK_THROWS_AS((void)listing_conformal_scalar(3, bad, 0.25, 1.0, 0.5),
                        std::domain_error);
        const AxisymmetricPoly one = AxisymmetricPoly::constant(1.0);
        CHECK_THROWS_AS((void)listing_conformal_scalar(3, one, 1.5, 1.0, 0.5),
                        std::invalid_argument);
    }
}
