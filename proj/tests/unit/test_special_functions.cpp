// SPDX-FileCopyrightText: Copyright (c) 2026 The nsbem Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "nsbem/special_functions.hpp"

using namespace nsbem;

namespace {

using LComplex = std::complex<long double>;

// Independent oracle: direct summation of the ascending power series for
// j_n(z) in extended precision. Used to pin values the closed forms cannot
// reach directly.
LComplex oracle_series_j(int n, LComplex z) {
    LComplex pref = 1.0L;
    for (int m = 1; m <= n; ++m) pref *= z / static_cast<long double>(2 * m + 1);
    const LComplex zh = -0.5L * z * z;
    LComplex term = 1.0L, sum = 1.0L;
    for (int m = 1; m < 200; ++m) {
        term *= zh / static_cast<long double>(m * (2 * n + 2 * m + 1));
        sum += term;
        if (std::abs(term) < 1e-25L * std::abs(sum)) break;
    }
    return pref * sum;
}

double rel_err(Complex got, Complex want) {
    return std::abs(got - want) / std::abs(want);
}

}  // namespace

TEST_CASE("sph_bessel_j closed-form anchors") {
    // j0(pi) = sin(pi)/pi = 0
    CHECK(std::abs(sph_bessel_j(0, Complex(pi, 0.0))) < 1e-14);
    // j1(2) = sin2/4 - cos2/2
    const double j1_2 = std::sin(2.0) / 4.0 - std::cos(2.0) / 2.0;
    CHECK(rel_err(sph_bessel_j(1, Complex(2.0, 0.0)), Complex(j1_2, 0.0)) < 1e-14);
    CHECK(std::abs(j1_2 - 0.435397774979992) < 1e-12);
    // j_n(0): removable limits
    CHECK(sph_bessel_j(0, Complex(0.0, 0.0)) == Complex(1.0, 0.0));
    CHECK(sph_bessel_j(3, Complex(0.0, 0.0)) == Complex(0.0, 0.0));
}

TEST_CASE("sph_bessel_j complex argument vs series oracle") {
    const LComplex z(0.8L, 0.6L);
    const LComplex ref = oracle_series_j(5, z);
    // Frozen from the oracle above.
    const Complex frozen(-9.51054697990310360e-05, -3.70501251953082305e-06);
    CHECK(std::abs(Complex((double)ref.real(), (double)ref.imag()) - frozen) <
          1e-12 * std::abs(frozen));
    CHECK(rel_err(sph_bessel_j(5, Complex(0.8, 0.6)), frozen) < 1e-12);
}

TEST_CASE("sph_bessel_j across regimes vs series oracle") {
    // Orders above, near and below |z|; moderate |z| so the series converges.
    for (const double az : {0.7, 2.0, 5.0, 9.5}) {
        for (const int n : {0, 1, 2, 4, 8, 16, 30}) {
            const LComplex z(az * 0.8L, az * 0.6L);
            const LComplex ref = oracle_series_j(n, z);
            const Complex want((double)ref.real(), (double)ref.imag());
            CAPTURE(az);
            CAPTURE(n);
            CHECK(rel_err(sph_bessel_j(n, Complex(z.real(), z.imag())), want) < 1e-12);
        }
    }
}

TEST_CASE("sph_bessel_y closed-form anchors") {
    // y0(pi/2) = -cos(pi/2)/(pi/2) = 0
    CHECK(std::abs(sph_bessel_y(0, Complex(pi / 2.0, 0.0))) < 1e-14);
    // y1(1) = -cos1 - sin1
    const double y1_1 = -std::cos(1.0) - std::sin(1.0);
    CHECK(rel_err(sph_bessel_y(1, Complex(1.0, 0.0)), Complex(y1_1, 0.0)) < 1e-14);
    CHECK(std::abs(y1_1 + 1.381773290676036) < 1e-12);
    CHECK_THROWS_AS(sph_bessel_y(0, Complex(0.0, 0.0)), DomainError);
}

TEST_CASE("sph_bessel_y(2, 0.8+0.6i) vs closed form") {
    // y2(z) = (1/z - 3/z^3) cos z - (3/z^2) sin z, evaluated in extended precision.
    const LComplex z(0.8L, 0.6L);
    const LComplex ref =
        (1.0L / z - 3.0L / (z * z * z)) * std::cos(z) - 3.0L / (z * z) * std::sin(z);
    const Complex want((double)ref.real(), (double)ref.imag());
    CHECK(rel_err(sph_bessel_y(2, Complex(0.8, 0.6)), want) < 1e-13);
}

TEST_CASE("sph_hankel1 definitional identity and anchors") {
    // h0(1) = sin1 - i cos1
    const Complex h0 = sph_hankel1(0, Complex(1.0, 0.0));
    CHECK(rel_err(h0, Complex(std::sin(1.0), -std::cos(1.0))) < 1e-14);

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> mag(0.3, 50.0), ang(0.0, 1.4);
    for (int trial = 0; trial < 50; ++trial) {
        const double m = mag(rng), a = ang(rng);
        const Complex z(m * std::cos(a), m * std::sin(a));
        const int n = trial % 20;
        const Complex h = sph_hankel1(n, z);
        const Complex j = sph_bessel_j(n, z);
        const Complex y = sph_bessel_y(n, z);
        CHECK(h == j + iu * y);  // exact identity of returned values
    }
}

TEST_CASE("sph_hankel1 outgoing-wave asymptotics") {
    // h_n(z) ~ (-i)^{n+1} e^{iz}/z, so i z h_n(z) ~ (-i)^n e^{iz}. The leading
    // relative correction is n(n+1)/(2z): 6e-3 for n = 3 at z = 1000.
    const int n = 3;
    for (const double zr : {100.0, 1000.0}) {
        const Complex z(zr, 0.0);
        const Complex lhs = iu * z * sph_hankel1(n, z);
        const Complex rhs = std::pow(-iu, n) * std::exp(iu * z);
        const double tol = 1.2 * n * (n + 1) / (2.0 * zr);
        CHECK(std::abs(lhs - rhs) / std::abs(rhs) < tol);
    }
    const Complex big(1000.0, 0.0);
    CHECK(std::abs(iu * big * sph_hankel1(n, big) - std::pow(-iu, n) * std::exp(iu * big)) /
              std::abs(std::exp(iu * big)) < 0.01);
}

TEST_CASE("sph_bessel_derivative") {
    // j0'(pi) = -j1(pi) = -1/pi
    CHECK(rel_err(sph_bessel_derivative(BesselKind::j, 0, Complex(pi, 0.0)),
                  Complex(-1.0 / pi, 0.0)) < 1e-13);
    // y1'(2) = -y2(2) + (1/2) y1(2)
    const Complex want = -sph_bessel_y(2, Complex(2.0, 0.0)) +
                         0.5 * sph_bessel_y(1, Complex(2.0, 0.0));
    CHECK(rel_err(sph_bessel_derivative(BesselKind::y, 1, Complex(2.0, 0.0)), want) < 1e-14);
    // Central difference check for h4 at complex argument.
    const Complex z(0.8, 0.6);
    const double h = 1e-6;
    const Complex fd =
        (sph_hankel1(4, z + Complex(h, 0.0)) - sph_hankel1(4, z - Complex(h, 0.0))) / (2.0 * h);
    CHECK(rel_err(sph_bessel_derivative(BesselKind::h, 4, z), fd) < 1e-6);
}

TEST_CASE("Wronskian identity j_n y_n' - j_n' y_n = 1/z^2") {
    // Also exercised by the acceptance suite (criterion 2). Im z is capped:
    // for Im z >> 1 both j and y grow like e^{Im z} while the Wronskian stays
    // 1/z^2, so the identity drowns in cancellation for any implementation.
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> logmag(std::log(0.1), std::log(100.0));
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double m = std::exp(logmag(rng));
        const double im = u01(rng) * std::min(6.0, 0.8 * m);
        const Complex z(std::sqrt(m * m - im * im), im);
        const int n = trial % 51;
        const Complex w = sph_bessel_j(n, z) * sph_bessel_derivative(BesselKind::y, n, z) -
                          sph_bessel_derivative(BesselKind::j, n, z) * sph_bessel_y(n, z);
        const Complex want = 1.0 / (z * z);
        CAPTURE(n);
        CAPTURE(z);
        CHECK(std::abs(w - want) <= 1e-10 * std::abs(want));
    }
}

TEST_CASE("three-term recurrence consistency") {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> logmag(std::log(0.2), std::log(80.0));
    std::uniform_real_distribution<double> ang(0.0, 1.5);
    for (int trial = 0; trial < 100; ++trial) {
        const double m = std::exp(logmag(rng));
        const double a = std::min(ang(rng), std::asin(std::min(1.0, 8.0 / m)));
        const Complex z(m * std::cos(a), m * std::sin(a));
        const int n = 1 + trial % 40;
        const auto check_kind = [&](const std::vector<Complex>& lad) {
            const Complex lhs = lad[n + 1] - (2.0 * n + 1.0) / z * lad[n] + lad[n - 1];
            const double scale = std::max({std::abs(lad[n + 1]),
                                           std::abs((2.0 * n + 1.0) / z * lad[n]),
                                           std::abs(lad[n - 1])});
            CHECK(std::abs(lhs) <= 1e-11 * scale);
        };
        check_kind(sph_bessel_j_ladder(n + 1, z));
        check_kind(sph_bessel_y_ladder(n + 1, z));
    }
}

TEST_CASE("legendre_p") {
    CHECK(legendre_p(0, 0.77) == 1.0);
    CHECK(legendre_p(1, 0.3) == 0.3);
    // P2(x) = (3x^2 - 1)/2; one recurrence step: (3*0.5*0.5 - 1)/2 = -0.125
    CHECK(legendre_p(2, 0.5) == doctest::Approx(-0.125).epsilon(1e-15));
    CHECK(legendre_p(2, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(legendre_p(2, 1.0001), DomainError);

    // |P_n(x)| <= 1 on [-1, 1] for n <= 100
    for (int i = 0; i <= 200; ++i) {
        const double x = -1.0 + i / 100.0;
        const auto lad = legendre_p_ladder(100, x);
        for (double v : lad) CHECK(std::abs(v) <= 1.0 + 1e-13);
    }
}

TEST_CASE("truncation_terms") {
    CHECK(truncation_terms(Complex(1.0, 0.0), 3.0).n_terms == 6);
    CHECK(truncation_terms(Complex(1.0, 0.0), 0.5).n_terms == 6);   // boundary: first branch
    CHECK(truncation_terms(Complex(0.8, 0.6), 0.5).n_terms == 6);   // |k| = 1
    CHECK_THROWS_AS(truncation_terms(Complex(0.0, 0.0), 1.0), DomainError);

    // Monotone non-decreasing in |k| (first branch) and |k r_s| (second branch).
    int prev = 0;
    for (double ak = 0.1; ak < 50.0; ak *= 1.17) {
        const int n = truncation_terms(Complex(ak, 0.0), 1.0).n_terms;
        CHECK(n >= prev);
        prev = n;
    }
    prev = 0;
    for (double rs = 0.01; rs < 0.5; rs *= 1.25) {
        const int n = truncation_terms(Complex(3.0, 0.0), rs).n_terms;
        CHECK(n >= prev);
        prev = n;
    }
}

TEST_CASE("order overflow is an explicit error") {
    CHECK_THROWS_AS(sph_bessel_j(max_bessel_order + 5, Complex(1.0, 0.0)), DomainError);
}
