// SPDX-FileCopyrightText: Copyright (c) 2026 The nsbem Authors
// SPDX-License-Identifier: Apache-2.0

#include "nsbem/kernel.hpp"

#include <cmath>

namespace nsbem {

namespace {

// Below this |kr| the direct formulas for (e^{ikr}-1)/r and
// [e^{ikr}(ikr-1)+1]/r^3 cancel catastrophically; switch to series.
constexpr double series_threshold = 1e-2;

void check_separated(double r, const char* fn) {
    if (!(r > 0.0)) throw DomainError(std::string(fn) + ": coincident points");
}

}  // namespace

KernelPair laplace_kernels(const Vec3& x, const Vec3& x0, const Vec3& normal_at_x) {
    const Vec3 d = x - x0;
    const double r = norm(d);
    check_separated(r, "laplace_kernels");
    const double rn = dot(d, normal_at_x);
    return {Complex(1.0 / r, 0.0), Complex(-rn / (r * r * r), 0.0)};
}

KernelPair helmholtz_kernels(const Vec3& x, const Vec3& x0, const Vec3& normal_at_x, Complex k) {
    const Vec3 d = x - x0;
    const double r = norm(d);
    check_separated(r, "helmholtz_kernels");
    const double rn = dot(d, normal_at_x);
    const Complex ikr = iu * k * r;
    const Complex e = std::exp(ikr);
    return {e / r, rn * e * (ikr - 1.0) / (r * r * r)};
}

KernelPair regularized_kernels(const Vec3& x, const Vec3& x0, const Vec3& normal_at_x, Complex k) {
    const Vec3 d = x - x0;
    const double r = norm(d);
    const double rn = (r > 0.0) ? dot(d, normal_at_x) : 0.0;
    const Complex ik = iu * k;

    if (r == 0.0) return {ik, Complex(0.0, 0.0)};

    const Complex z = ik * r;  // = ikr
    if (std::abs(z) >= series_threshold) {
        const Complex e = std::exp(z);
        const Complex dg = (e - 1.0) / r;
        const Complex dh = rn * (e * (z - 1.0) + 1.0) / (r * r * r);
        return {dg, dh};
    }

    // dG = ik sum_{m>=0} z^m/(m+1)!    [= (e^z - 1)/r]
    // dH = rn z^2/r^3 sum_{m>=0} (m+1) z^m/(m+2)!   [= rn (e^z(z-1)+1)/r^3]
    Complex dg_sum(1.0, 0.0), dh_sum(0.5, 0.0);
    Complex zp(1.0, 0.0);
    double fact = 1.0;  // (m+1)! running
    for (int m = 1; m <= 12; ++m) {
        zp *= z;
        fact *= m + 1;
        dg_sum += zp / fact;
        dh_sum += (m + 1.0) * zp / (fact * (m + 2.0));
    }
    const Complex dg = ik * dg_sum;
    const Complex dh = rn * (z * z) / (r * r * r) * dh_sum;
    return {dg, dh};
}

KernelGradients helmholtz_kernel_gradients(const Vec3& x, const Vec3& x0,
                                           const Vec3& normal_at_x, Complex k) {
    const Vec3 d = x - x0;
    const double r = norm(d);
    check_separated(r, "helmholtz_kernel_gradients");
    const double rn = dot(d, normal_at_x);
    const Complex ikr = iu * k * r;
    const Complex e = std::exp(ikr);
    const double r3 = r * r * r;

    const Complex f = e * (ikr - 1.0) / r3;                       // radial factor of H
    const Complex fp = e * (-k * k * r * r - 3.0 * ikr + 3.0) / (r3 * r);  // df/dr

    const Vec3 dir = (x0 - x) / r;  // grad_{x0} r
    const Complex gg = f * r;       // d/dr (e^{ikr}/r) = e(ikr-1)/r^2 = f*r
    KernelGradients out;
    out.grad_g_re = gg.real() * dir;
    out.grad_g_im = gg.imag() * dir;
    const Complex n_part = -f;
    const Complex dir_part = rn * fp;
    out.grad_h_re = n_part.real() * normal_at_x + dir_part.real() * dir;
    out.grad_h_im = n_part.imag() * normal_at_x + dir_part.imag() * dir;
    return out;
}

}  // namespace nsbem
