// SPDX-FileCopyrightText: Copyright (c) 2026 The nsbem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "nsbem/types.hpp"

namespace nsbem {

// Green's function pair at one evaluation point: g is the single-layer kernel
// value, h the normal-derivative kernel n(x) . grad_x g.
struct KernelPair {
    Complex g;
    Complex h;
};

// G_k = e^{ikr}/r, H_k = n.(x-x0) e^{ikr}(ikr-1)/r^3, r = |x-x0|. x != x0.
KernelPair helmholtz_kernels(const Vec3& x, const Vec3& x0, const Vec3& normal_at_x, Complex k);

// G_0 = 1/r, H_0 = -(x-x0).n/r^3. x != x0.
KernelPair laplace_kernels(const Vec3& x, const Vec3& x0, const Vec3& normal_at_x);

// Difference kernels dG = G_k - G_0 = (e^{ikr}-1)/r and dH = H_k - H_0,
// finite for all separations including x = x0 (dG -> ik, dH -> 0 by
// convention at exact coincidence). Evaluated by a truncated series for
// |kr| below a cancellation threshold.
KernelPair regularized_kernels(const Vec3& x, const Vec3& x0, const Vec3& normal_at_x, Complex k);

// Gradients with respect to the observation point x0; used by off-surface
// field evaluation.
//   grad_g = (x0-x) e^{ikr}(ikr-1)/r^3
//   grad_h = -n f(r) + (n.(x-x0)) f'(r) (x0-x)/r,  f(r) = e^{ikr}(ikr-1)/r^3
struct KernelGradients {
    Vec3 grad_g_re, grad_g_im;
    Vec3 grad_h_re, grad_h_im;
};
KernelGradients helmholtz_kernel_gradients(const Vec3& x, const Vec3& x0,
                                           const Vec3& normal_at_x, Complex k);

}  // namespace nsbem
