// SPDX-FileCopyrightText: Copyright (c) 2026 The nsbem Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <quadmath.h>

#include <cmath>
#include <random>

#include "nsbem/kernel.hpp"

using namespace nsbem;

namespace {

// Quad-precision complex scalar, just enough for the oracle below. The direct
// difference formulas cancel ~|kr|^2 leading digits, so the oracle needs
// headroom well past long double to certify 1e-13 at |kr| = 1e-5.
struct Q128 {
    __float128 re, im;
    Q128 operator+(const Q128& o) const { return {re + o.re, im + o.im}; }
    Q128 operator-(const Q128& o) const { return {re - o.re, im - o.im}; }
    Q128 operator*(const Q128& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    Q128 operator/(__float128 s) const { return {re / s, im / s}; }
};

Q128 qexp(const Q128& z) {
    const __float128 e = expq(z.re);
    return {e * cosq(z.im), e * sinq(z.im)};
}

// Extended-precision direct evaluation of the difference kernels; the oracle
// for the small-|kr| series branch.
KernelPair oracle_regularized(const Vec3& x, const Vec3& x0, const Vec3& n, Complex k) {
    const Vec3 d = x - x0;
    const __float128 r = sqrtq((__float128)dot(d, d));
    const __float128 rn = (__float128)dot(d, n);
    const Q128 z = Q128{-(__float128)k.imag() * r, (__float128)k.real() * r};  // ikr
    const Q128 e = qexp(z);
    const Q128 one{1.0, 0.0};
    const Q128 dg = (e - one) / r;
    const Q128 dh_num = e * (z - one) + one;
    const Q128 dh = Q128{rn * dh_num.re, rn * dh_num.im} / (r * r * r);
    return {Complex((double)dg.re, (double)dg.im), Complex((double)dh.re, (double)dh.im)};
}

}  // namespace

TEST_CASE("laplace closed forms") {
    // n parallel to (x-x0), r=2: g = 1/2, h = -1/4
    const Vec3 x{2, 0, 0}, x0{0, 0, 0}, n{1, 0, 0};
    const auto kp = laplace_kernels(x, x0, n);
    CHECK(kp.g == Complex(0.5, 0.0));
    CHECK(kp.h == Complex(-0.25, 0.0));
    // n perpendicular: h = 0
    const auto kperp = laplace_kernels(x, x0, Vec3{0, 1, 0});
    CHECK(kperp.h == Complex(0.0, 0.0));
    CHECK_THROWS_AS(laplace_kernels(x0, x0, n), DomainError);
}

TEST_CASE("helmholtz closed forms and k=0 reduction") {
    const Vec3 x{0, 1, 0}, x0{0, 0, 0}, nperp{1, 0, 0};
    // r=1, k=pi, n perpendicular: g = e^{i pi} = -1, h = 0
    const auto kp = helmholtz_kernels(x, x0, nperp, Complex(pi, 0.0));
    CHECK(std::abs(kp.g - Complex(-1.0, 0.0)) < 1e-15);
    CHECK(std::abs(kp.h) < 1e-15);

    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 20; ++t) {
        const Vec3 a{u(rng), u(rng), u(rng)}, b{u(rng) + 2.0, u(rng), u(rng)};
        const Vec3 n = normalized(Vec3{u(rng), u(rng), u(rng)});
        const auto h0 = helmholtz_kernels(a, b, n, Complex(0.0, 0.0));
        const auto l0 = laplace_kernels(a, b, n);
        CHECK(h0.g == l0.g);
        CHECK(std::abs(h0.h - l0.h) < 1e-15 * std::abs(l0.h));
    }
}

TEST_CASE("h is the directional derivative of g (finite differences)") {
    const Complex ks[] = {Complex(0.8, 0.6), Complex(2.0, 0.0)};
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (const Complex k : ks) {
        for (int t = 0; t < 10; ++t) {
            const Vec3 x{u(rng) + 2.5, u(rng), u(rng)};
            const Vec3 x0{u(rng), u(rng), u(rng)};
            const Vec3 n = normalized(Vec3{u(rng), u(rng), u(rng)});
            const double h = 1e-6;
            const auto gp = helmholtz_kernels(x + h * n, x0, n, k);
            const auto gm = helmholtz_kernels(x - h * n, x0, n, k);
            const Complex fd = (gp.g - gm.g) / (2.0 * h);
            const auto kp = helmholtz_kernels(x, x0, n, k);
            CHECK(std::abs(kp.h - fd) < 1e-6 * std::abs(kp.h));
        }
    }
}

TEST_CASE("regularized kernels: limits and small-|kr| series") {
    const Complex k(0.8, 0.6);
    const Vec3 n{0, 0, 1};

    // r -> 0 limit: dG -> ik, dH -> 0
    const auto at0 = regularized_kernels(Vec3{}, Vec3{}, n, k);
    CHECK(std::abs(at0.g - iu * k) < 1e-12);
    CHECK(at0.h == Complex(0.0, 0.0));

    // k = 0: both vanish identically
    const auto k0 = regularized_kernels(Vec3{0.3, 0.2, 0.1}, Vec3{}, n, Complex(0.0, 0.0));
    CHECK(k0.g == Complex(0.0, 0.0));
    CHECK(k0.h == Complex(0.0, 0.0));

    // |kr| = 1e-5: series branch vs extended-precision direct formula
    const Vec3 x{1e-5 * 0.6, 1e-5 * 0.48, 1e-5 * 0.64};
    const auto got = regularized_kernels(x, Vec3{}, n, Complex(1.0, 0.0));
    const auto want = oracle_regularized(x, Vec3{}, n, Complex(1.0, 0.0));
    CHECK(std::abs(got.g - want.g) < 1e-13 * std::abs(want.g));
    CHECK(std::abs(got.h - want.h) < 1e-13 * std::abs(want.h));
}

TEST_CASE("consistency: helmholtz = laplace + regularized above the threshold") {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const Complex k(1.3, 0.4);
    for (int t = 0; t < 30; ++t) {
        const Vec3 x{u(rng) + 1.5, u(rng), u(rng)}, x0{u(rng), u(rng), u(rng)};
        const Vec3 n = normalized(Vec3{u(rng), u(rng), u(rng)});
        const auto hk = helmholtz_kernels(x, x0, n, k);
        const auto l = laplace_kernels(x, x0, n);
        const auto d = regularized_kernels(x, x0, n, k);
        CHECK(std::abs(hk.g - (l.g + d.g)) <= 1e-12 * std::abs(hk.g));
        CHECK(std::abs(hk.h - (l.h + d.h)) <= 1e-12 * (std::abs(l.h) + std::abs(d.h)));
    }
}

TEST_CASE("reciprocity of g") {
    const Vec3 x{1.2, -0.3, 0.8}, x0{-0.4, 0.9, 0.1}, n{0, 0, 1};
    const Complex k(2.0, 0.5);
    CHECK(helmholtz_kernels(x, x0, n, k).g == helmholtz_kernels(x0, x, n, k).g);
}

TEST_CASE("regularized dG stays smooth into r = 0") {
    // Sample along a ray on a geometric sequence of r; first differences of
    // dG must stay bounded (no blow-up as for the raw kernels).
    const Complex k(1.0, 0.7);
    const Vec3 dir = normalized(Vec3{0.3, -0.5, 0.81});
    const Vec3 n{0, 1, 0};
    Complex prev = regularized_kernels(1.0 * dir, Vec3{}, n, k).g;
    double max_diff = 0.0;
    for (double r = 0.5; r > 1e-12; r *= 0.5) {
        const Complex cur = regularized_kernels(r * dir, Vec3{}, n, k).g;
        max_diff = std::max(max_diff, std::abs(cur - prev));
        prev = cur;
    }
    CHECK(max_diff < std::abs(k));  // bounded by the |dG| <= |k| scale
    CHECK(std::abs(prev - iu * k) < 1e-10);
}

TEST_CASE("kernel gradients match finite differences") {
    const Complex k(1.1, 0.3);
    const Vec3 x{0.7, -0.2, 0.5}, x0{-0.6, 0.4, -0.1};
    const Vec3 n = normalized(Vec3{0.2, 0.9, -0.4});
    const auto g = helmholtz_kernel_gradients(x, x0, n, k);
    const double h = 1e-6;
    for (int axis = 0; axis < 3; ++axis) {
        Vec3 dp{}, dm{};
        (axis == 0 ? dp.x : axis == 1 ? dp.y : dp.z) = h;
        dm = -1.0 * dp;
        const auto kp = helmholtz_kernels(x, x0 + dp, n, k);
        const auto km = helmholtz_kernels(x, x0 + dm, n, k);
        const Complex fd_g = (kp.g - km.g) / (2.0 * h);
        const Complex fd_h = (kp.h - km.h) / (2.0 * h);
        const double gg_re = axis == 0 ? g.grad_g_re.x : axis == 1 ? g.grad_g_re.y : g.grad_g_re.z;
        const double gg_im = axis == 0 ? g.grad_g_im.x : axis == 1 ? g.grad_g_im.y : g.grad_g_im.z;
        const double gh_re = axis == 0 ? g.grad_h_re.x : axis == 1 ? g.grad_h_re.y : g.grad_h_re.z;
        const double gh_im = axis == 0 ? g.grad_h_im.x : axis == 1 ? g.grad_h_im.y : g.grad_h_im.z;
        CHECK(std::abs(Complex(gg_re, gg_im) - fd_g) < 1e-6 * std::abs(fd_g));
        CHECK(std::abs(Complex(gh_re, gh_im) - fd_h) < 1e-5 * std::abs(fd_h));
    }
}
