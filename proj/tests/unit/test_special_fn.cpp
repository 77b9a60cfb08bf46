#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hkloost/errors.hpp"
#include "hkloost/special_fn.hpp"
#include "oracles.hpp"

using namespace hkloost;

constexpr double kPi = std::numbers::pi;

TEST_CASE("half-integer closed forms") {
    CHECK(std::fabs(bessel_j(0.5, kPi)) < 1e-16);
    for (double u : {0.1, 1.0, 5.0, 20.0, 29.5}) {
        CHECK(bessel_j(0.5, u) == doctest::Approx(std::cyl_bessel_j(0.5, u)).epsilon(1e-13));
        CHECK(bessel_j(1.5, u) == doctest::Approx(std::cyl_bessel_j(1.5, u)).epsilon(1e-12));
        CHECK(bessel_j(-0.5, u) == doctest::Approx(std::sqrt(2 / (kPi * u)) * std::cos(u)).epsilon(1e-15));
    }
}

TEST_CASE("series agrees with closed forms to 1e-10 relative") {
    for (double u : {0.1, 1.0, 5.0, 20.0}) {
        CHECK(std::fabs(bessel_j_series(0.5, u) / bessel_j(0.5, u) - 1) < 1e-10);
        CHECK(std::fabs(bessel_j_series(-0.5, u) / bessel_j(-0.5, u) - 1) < 1e-10);
    }
    for (double u = 0.5; u <= 30.0; u += 0.5)
        if (std::fabs(bessel_j(1.5, u)) > 1e-3) CHECK(std::fabs(bessel_j_series(1.5, u) / bessel_j(1.5, u) - 1) < 1e-10);
}

TEST_CASE("real-order series matches the standard library across orders") {
    for (double nu : {0.0, 0.3, 1.0, 2.5, 4.75, 9.0})
        for (double u : {0.01, 0.7, 3.3, 12.0, 25.0, 40.0, 50.0})
            CHECK(bessel_j(nu, u) == doctest::Approx(std::cyl_bessel_j(nu, u)).epsilon(1e-9).scale(1.0));
}

TEST_CASE("negative orders") {
    for (double u : {0.3, 2.0, 11.0}) {
        CHECK(bessel_j(-1.0, u) == doctest::Approx(-std::cyl_bessel_j(1.0, u)).epsilon(1e-12));
        CHECK(bessel_j(-2.0, u) == doctest::Approx(std::cyl_bessel_j(2.0, u)).epsilon(1e-12));
        // Non-integer negative order against the long double series oracle.
        CHECK(bessel_j(-0.3, u) == doctest::Approx(static_cast<double>(oracle::bessel_series(-0.3L, u))).epsilon(1e-10));
    }
}

TEST_CASE("regime guards") {
    CHECK_THROWS_AS(bessel_j(0.3, 50.5), RegimeError);
    CHECK_NOTHROW(bessel_j(0.5, 500.0));
    CHECK_THROWS_AS(bessel_j(0.3, 0.0), DomainError);
    CHECK_THROWS_AS(bessel_j(0.3, -1.0), DomainError);
    CHECK_THROWS_AS(bessel_j_imag_order(4.5, 1.0), RegimeError);
    CHECK_THROWS_AS(bessel_j_imag_order(1.0, 21.0), RegimeError);
    CHECK_THROWS_AS(bessel_i(2.5, 1.0), DomainError);
    CHECK_THROWS_AS(bessel_g_imag(0.0, 1.0), DomainError);
}

TEST_CASE("Landau bound and |J| <= 1 on a grid") {
    for (double beta = 0.5; beta <= 10.0; beta += 0.5)
        for (double u = 0.1; u <= 50.0; u += 0.1) {
            const double j = bessel_j(beta, u);
            CHECK(std::fabs(j) <= kLandauC0 * std::cbrt(1.0 / u));
            CHECK(std::fabs(j) <= 1.0);
        }
}

TEST_CASE("three-term derivative recurrence") {
    constexpr double h = 1e-5;
    for (double beta = 1.0; beta <= 6.0; beta += 0.5)
        for (double u = 0.5; u <= 20.0; u += 0.5) {
            const double lhs = (bessel_j(beta - 1, u + h) - bessel_j(beta - 1, u - h)) / h;
            CHECK(std::fabs(lhs - (bessel_j(beta - 2, u) - bessel_j(beta, u))) < 1e-8);
        }
}

TEST_CASE("I_{1/2} and I_{3/2}") {
    const double u = 1.0;
    long double series = 0, term = std::sqrt(0.5L) / std::tgamma(1.5L);
    for (int j = 0; j < 30; ++j) {
        series += term;
        term *= 0.25L / ((j + 1) * (j + 1.5L));
    }
    CHECK(bessel_i(0.5, u) == doctest::Approx(static_cast<double>(series)).epsilon(1e-14));
    CHECK(bessel_i(0.5, u) * std::sqrt(u) == doctest::Approx(std::sqrt(2 / kPi) * std::sinh(u)));
    for (double v : {1e-6, 0.1, 0.49, 0.51, 3.0, 20.0}) {
        CHECK(bessel_i(0.5, v) == doctest::Approx(std::cyl_bessel_i(0.5, v)).epsilon(1e-13));
        CHECK(bessel_i(1.5, v) == doctest::Approx(std::cyl_bessel_i(1.5, v)).epsilon(1e-12));
    }
    double prev = 0;
    for (double v = 0.01; v <= 50; v += 0.01) {
        const double cur = bessel_i(0.5, v);
        CHECK(cur > prev);
        prev = cur;
    }
    CHECK(bessel_i(0.5, 1e-8) < 1e-3);
}

TEST_CASE("complex Gamma") {
    for (double x : {0.1, 0.5, 1.0, 2.5, 7.3, -0.5, -2.7})
        CHECK(gamma_complex({x, 0}).real() == doctest::Approx(std::tgamma(x)).epsilon(1e-13));
    for (double r : {0.0, 0.5, 2.0, 6.0}) {
        // |Gamma(1/2 + ir)|^2 = pi / cosh(pi r)
        CHECK(std::norm(gamma_complex({0.5, r})) == doctest::Approx(kPi / std::cosh(kPi * r)).epsilon(1e-12));
        // Gamma(1 + z) = z Gamma(z)
        const std::complex<double> z(0.3, r);
        CHECK(std::abs(gamma_complex(z + 1.0) - z * gamma_complex(z)) < 1e-12 * std::abs(gamma_complex(z + 1.0)));
    }
}

TEST_CASE("imaginary order J") {
    for (double u = 0.25; u <= 20.0; u += 0.25) {
        CHECK(std::abs(bessel_j_imag_order(0.0, u) - bessel_j(0.0, u)) < 1e-12);
        for (double r : {-4.0, -1.3, 0.2, 0.7, 3.9}) {
            CHECK(std::abs(std::conj(bessel_j_imag_order(r, u)) - bessel_j_imag_order(-r, u)) < 1e-12);
            CHECK(std::isfinite(bessel_f_imag(r, u)));
            CHECK(bessel_f_imag(r, u) == doctest::Approx(bessel_f_imag(-r, u)).epsilon(1e-12));
            CHECK(bessel_g_imag(r, u) == doctest::Approx(bessel_g_imag(-r, u)).epsilon(1e-10));
        }
    }
}

TEST_CASE("imaginary order J satisfies Bessel's equation") {
    // u^2 J'' + u J' + (u^2 + 4 r^2) J = 0 for order 2ir.
    constexpr double h = 1e-4;
    for (double r : {0.3, 1.1})
        for (double u : {0.5, 2.0, 7.0, 15.0}) {
            const auto jm = bessel_j_imag_order(r, u - h), j0 = bessel_j_imag_order(r, u),
                       jp = bessel_j_imag_order(r, u + h);
            const auto d1 = (jp - jm) / (2 * h), d2 = (jp - 2.0 * j0 + jm) / (h * h);
            CHECK(std::abs(u * u * d2 + u * d1 + (u * u + 4 * r * r) * j0) < 1e-5 * (1 + std::abs(j0)) * u * u);
        }
}

TEST_CASE("xi_k is even, bounded near zero and grows like |r|^k e^{pi |r|}") {
    for (double k : {0.5, 1.5}) {
        for (double r = -1.0; r <= 1.0; r += 0.05) {
            CHECK(std::abs(xi_k(k, r) - xi_k(k, -r)) < 1e-12 * (1 + std::abs(xi_k(k, r))));
            CHECK(std::abs(xi_k(k, r)) < 100.0);
        }
        double lo = 1e300, hi = 0;
        for (double r = 1.0; r <= 10.0; r += 0.25) {
            const double ratio = std::abs(xi_k(k, r)) / (std::pow(r, k) * std::exp(kPi * r));
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
        CHECK(lo > 0.0);
        CHECK(hi / lo < 10.0);
    }
}
