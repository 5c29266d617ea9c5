#include <doctest.h>

#include <cmath>
#include <vector>

#include "warpband/parallel.hpp"

using namespace warpband;

TEST_CASE("parallel max-abs agrees with the serial reference exactly") {
    auto f = [](std::int64_t i) { return std::sin(0.1 * static_cast<double>(i)) * ((i % 7) - 3); };
    CHECK(par::max_abs(100000, f) == par::max_abs_serial(100000, f));
    CHECK(par::max_abs(1, f) == par::max_abs_serial(1, f));
}

TEST_CASE("parallel fill matches serial fill") {
    auto f = [](std::int64_t i) { return std::cos(0.01 * static_cast<double>(i)); };
    std::vector<double> a(5000), b(5000);
    par::fill(a, f);
    par::fill_serial(b, f);
    CHECK(a == b);
}

TEST_CASE("simpson quadrature") {
    SUBCASE("cubic polynomials integrate exactly") {
        auto f = [](double t) { return t * t * t - 2.0 * t + 1.0; };
        const double exact = 0.25 - 1.0 + 1.0;
        CHECK(par::simpson_serial(f, 0.0, 1.0, 101) == doctest::Approx(exact).epsilon(1e-15));
    }
    SUBCASE("parallel and serial sums agree to rounding") {
        auto f = [](double t) { return std::exp(std::sin(3.0 * t)); };
        const double a = par::simpson(f, 0.0, 2.0, 20001);
        const double b = par::simpson_serial(f, 0.0, 2.0, 20001);
        CHECK(a == doctest::Approx(b).epsilon(1e-13));
    }
    SUBCASE("even node counts are promoted to odd") {
        auto f = [](double t) { return t; };
        CHECK(par::simpson_serial(f, 0.0, 1.0, 100) == doctest::Approx(0.5).epsilon(1e-15));
    }
    SUBCASE("too few nodes is an error") {
        CHECK_THROWS_AS((void)par::simpson_serial([](double) { return 1.0; }, 0.0, 1.0, 2),
                        std::invalid_argument);
    }
}
