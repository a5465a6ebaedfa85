// SPDX-FileCopyrightText: Copyright (c) 2026 The nsbem Authors
// SPDX-License-Identifier: Apache-2.0

#include "nsbem/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace nsbem {

namespace {

struct Ladders {
    std::vector<Complex> j, y, h, jp, yp, hp;  // values and derivatives, orders 0..N
};

Ladders ladders_at(Complex z, int n_terms) {
    Ladders l;
    const auto j = sph_bessel_j_ladder(n_terms + 1, z);
    const auto y = sph_bessel_y_ladder(n_terms + 1, z);
    l.j.resize(static_cast<size_t>(n_terms) + 1);
    l.y.resize(static_cast<size_t>(n_terms) + 1);
    l.h.resize(static_cast<size_t>(n_terms) + 1);
    l.jp.resize(static_cast<size_t>(n_terms) + 1);
    l.yp.resize(static_cast<size_t>(n_terms) + 1);
    l.hp.resize(static_cast<size_t>(n_terms) + 1);
    for (int n = 0; n <= n_terms; ++n) {
        const auto i = static_cast<size_t>(n);
        l.j[i] = j[i];
        l.y[i] = y[i];
        l.h[i] = j[i] + iu * y[i];
        l.jp[i] = -j[i + 1] + static_cast<double>(n) / z * j[i];
        l.yp[i] = -y[i + 1] + static_cast<double>(n) / z * y[i];
        l.hp[i] = l.jp[i] + iu * l.yp[i];
    }
    return l;
}

// Modal coefficient of the source series at radius r for one source:
// S_n(r) = (Q/4pi) ik (2n+1) h_n(k r_>) j_n(k r_<), plus d/dr.
struct SourceModal {
    std::vector<Complex> value, ddr;
};

SourceModal source_modal(Complex k, Complex q, double r_s, double r, int n_terms) {
    SourceModal out;
    out.value.assign(static_cast<size_t>(n_terms) + 1, Complex{});
    out.ddr.assign(static_cast<size_t>(n_terms) + 1, Complex{});
    if (q == Complex{}) return out;
    const double r_great = std::max(r, r_s), r_less = std::min(r, r_s);
    const Complex pref = q / (4.0 * pi) * iu * k;
    const auto lg = ladders_at(k * r_great, n_terms);
    if (r_less == 0.0) {
        // j_n(0) = delta_{n0}; only the monopole term survives.
        out.value[0] = pref * lg.h[0];
        out.ddr[0] = (r >= r_s) ? pref * k * lg.hp[0] : Complex{};
        return out;
    }
    const auto ll = ladders_at(k * r_less, n_terms);
    for (int n = 0; n <= n_terms; ++n) {
        const auto i = static_cast<size_t>(n);
        const double c = 2.0 * n + 1.0;
        out.value[i] = pref * c * lg.h[i] * ll.j[i];
        // derivative with respect to the field radius r
        out.ddr[i] = (r >= r_s) ? pref * c * k * lg.hp[i] * ll.j[i]
                                : pref * c * k * lg.h[i] * ll.jp[i];
    }
    return out;
}

// Closed-form free-space term of the region's own sources at (r, theta) and
// its d/dr. Exact resummation of the source series: the series converges
// arbitrarily slowly as r approaches a source radius, the closed form does not.
Complex region_source_closed(const CoreShellConfig& cfg, CoreShellRegion region, double r,
                             double theta, Complex* ddr) {
    const Complex k = cfg.wavenumber(region);
    Complex acc{}, acc_ddr{};
    const double ct = std::cos(theta);
    for (const auto& s : cfg.sources) {
        if (s.region != region || s.strength == Complex{}) continue;
        const double d2 = r * r + s.radius * s.radius - 2.0 * r * s.radius * ct;
        const double d = std::sqrt(std::max(0.0, d2));
        if (!(d > 0.0)) throw DomainError("eval_potential: point coincides with a source");
        const Complex e = s.strength / (4.0 * pi) * std::exp(iu * k * d);
        acc += e / d;
        if (ddr) acc_ddr += e * (iu * k * d - 1.0) / (d * d) * ((r - s.radius * ct) / d);
    }
    if (ddr) *ddr = acc_ddr;
    return acc;
}

// Accumulated modal source coefficients for all sources of one region.
SourceModal region_source_modal(const CoreShellConfig& cfg, CoreShellRegion region, double r,
                                int n_terms) {
    SourceModal acc;
    acc.value.assign(static_cast<size_t>(n_terms) + 1, Complex{});
    acc.ddr.assign(static_cast<size_t>(n_terms) + 1, Complex{});
    for (const auto& s : cfg.sources) {
        if (s.region != region) continue;
        const auto sm = source_modal(cfg.wavenumber(region), s.strength, s.radius, r, n_terms);
        for (size_t i = 0; i < acc.value.size(); ++i) {
            acc.value[i] += sm.value[i];
            acc.ddr[i] += sm.ddr[i];
        }
    }
    return acc;
}

// 4x4 complex Gaussian elimination with partial pivoting. The raw systems
// have column scales spanning many orders of magnitude at high n (j_n decays,
// y_n grows), so columns are equilibrated by exact powers of two first.
// Singularity is decided by the post-solve residual, not the pivot size.
std::array<Complex, 4> solve4(std::array<std::array<Complex, 4>, 4> a0, std::array<Complex, 4> b0,
                              int order) {
    std::array<double, 4> col_scale{};
    for (int c = 0; c < 4; ++c) {
        double m = 0.0;
        for (int r = 0; r < 4; ++r)
            m = std::max(m, std::abs(a0[static_cast<size_t>(r)][static_cast<size_t>(c)]));
        col_scale[static_cast<size_t>(c)] = (m > 0.0) ? std::exp2(-std::ilogb(m)) : 1.0;
    }
    auto a = a0;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            a[static_cast<size_t>(r)][static_cast<size_t>(c)] *= col_scale[static_cast<size_t>(c)];

    auto b = b0;
    double bmax = 0.0;
    for (const auto& v : b) bmax = std::max(bmax, std::abs(v));

    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(a[static_cast<size_t>(r)][static_cast<size_t>(col)]) >
                std::abs(a[static_cast<size_t>(piv)][static_cast<size_t>(col)]))
                piv = r;
        if (std::abs(a[static_cast<size_t>(piv)][static_cast<size_t>(col)]) == 0.0) {
            throw SolverError("modal interface system is singular at order n = " +
                              std::to_string(order));
        }
        std::swap(a[static_cast<size_t>(col)], a[static_cast<size_t>(piv)]);
        std::swap(b[static_cast<size_t>(col)], b[static_cast<size_t>(piv)]);
        for (int r = col + 1; r < 4; ++r) {
            const Complex f = a[static_cast<size_t>(r)][static_cast<size_t>(col)] /
                              a[static_cast<size_t>(col)][static_cast<size_t>(col)];
            for (int c = col; c < 4; ++c)
                a[static_cast<size_t>(r)][static_cast<size_t>(c)] -=
                    f * a[static_cast<size_t>(col)][static_cast<size_t>(c)];
            b[static_cast<size_t>(r)] -= f * b[static_cast<size_t>(col)];
        }
    }
    std::array<Complex, 4> x{};
    for (int r = 3; r >= 0; --r) {
        Complex s = b[static_cast<size_t>(r)];
        for (int c = r + 1; c < 4; ++c)
            s -= a[static_cast<size_t>(r)][static_cast<size_t>(c)] * x[static_cast<size_t>(c)];
        x[static_cast<size_t>(r)] = s / a[static_cast<size_t>(r)][static_cast<size_t>(r)];
    }
    for (int c = 0; c < 4; ++c) x[static_cast<size_t>(c)] *= col_scale[static_cast<size_t>(c)];

    double res = 0.0;
    for (int r = 0; r < 4; ++r) {
        Complex ax{};
        for (int c = 0; c < 4; ++c)
            ax += a0[static_cast<size_t>(r)][static_cast<size_t>(c)] * x[static_cast<size_t>(c)];
        res = std::max(res, std::abs(ax - b0[static_cast<size_t>(r)]));
    }
    if (bmax > 0.0 && !(res <= 1e-8 * bmax)) {
        throw SolverError("modal interface system is numerically singular at order n = " +
                          std::to_string(order) + " (residual " + std::to_string(res / bmax) + ")");
    }
    return x;
}

// Assembled 4x4 system for one order: unknowns [C_n, D_n, E_n, F_n].
struct ModalSystem {
    std::array<std::array<Complex, 4>, 4> a;
    std::array<Complex, 4> b;
};

ModalSystem modal_system(const CoreShellConfig& cfg, int n,
                         const Ladders& ext_at_shell, const Ladders& sh_at_shell,
                         const Ladders& sh_at_core, const Ladders& co_at_core,
                         const SourceModal& ext_src_shell, const SourceModal& sh_src_shell,
                         const SourceModal& sh_src_core, const SourceModal& co_src_core) {
    const auto i = static_cast<size_t>(n);
    ModalSystem s{};
    // pressure continuity at a_shell: rho0 phi_ex = rho1 phi_shell
    s.a[0] = {cfg.rho0 * ext_at_shell.h[i], -cfg.rho1 * sh_at_shell.j[i],
              -cfg.rho1 * sh_at_shell.y[i], Complex{}};
    s.b[0] = -cfg.rho0 * ext_src_shell.value[i] + cfg.rho1 * sh_src_shell.value[i];
    // pressure continuity at a_core: rho1 phi_shell = rho2 phi_core
    s.a[1] = {Complex{}, cfg.rho1 * sh_at_core.j[i], cfg.rho1 * sh_at_core.y[i],
              -cfg.rho2 * co_at_core.j[i]};
    s.b[1] = -cfg.rho1 * sh_src_core.value[i] + cfg.rho2 * co_src_core.value[i];
    // radial velocity continuity at a_shell
    s.a[2] = {cfg.k0 * ext_at_shell.hp[i], -cfg.k1 * sh_at_shell.jp[i],
              -cfg.k1 * sh_at_shell.yp[i], Complex{}};
    s.b[2] = -ext_src_shell.ddr[i] + sh_src_shell.ddr[i];
    // radial velocity continuity at a_core
    s.a[3] = {Complex{}, cfg.k1 * sh_at_core.jp[i], cfg.k1 * sh_at_core.yp[i],
              -cfg.k2 * co_at_core.jp[i]};
    s.b[3] = -sh_src_core.ddr[i] + co_src_core.ddr[i];
    return s;
}

}  // namespace

void CoreShellConfig::validate() const {
    if (!(a_core > 0.0) || !(a_shell > a_core))
        throw ValidationError("core-shell config: need 0 < a_core < a_shell");
    if (!(rho0 > 0.0) || !(rho1 > 0.0) || !(rho2 > 0.0))
        throw ValidationError("core-shell config: densities must be positive");
    for (const auto& s : sources) {
        if (s.radius < 0.0) throw ValidationError("core-shell config: source radius < 0");
        switch (s.region) {
            case CoreShellRegion::external:
                if (!(s.radius > a_shell))
                    throw ValidationError("external source must satisfy r_s > a_shell");
                break;
            case CoreShellRegion::shell:
                if (!(s.radius > a_core && s.radius < a_shell))
                    throw ValidationError("shell source must satisfy a_core < r_s < a_shell");
                break;
            case CoreShellRegion::core:
                if (!(s.radius < a_core))
                    throw ValidationError("core source must satisfy r_s < a_core");
                break;
        }
    }
}

Complex CoreShellConfig::wavenumber(CoreShellRegion r) const {
    switch (r) {
        case CoreShellRegion::external: return k0;
        case CoreShellRegion::shell: return k1;
        default: return k2;
    }
}

double CoreShellConfig::density(CoreShellRegion r) const {
    switch (r) {
        case CoreShellRegion::external: return rho0;
        case CoreShellRegion::shell: return rho1;
        default: return rho2;
    }
}

CoreShellRegion CoreShellConfig::region_of(double r) const {
    if (r >= a_shell) return CoreShellRegion::external;
    if (r >= a_core) return CoreShellRegion::shell;
    return CoreShellRegion::core;
}

Complex monopole_series_potential(Complex k, Complex q, double r_s, double r, double theta,
                                  int n_terms) {
    if (r < 0.0 || r_s < 0.0)
        throw DomainError("monopole_series_potential: radii must be >= 0");
    if (r == r_s)
        throw DomainError("monopole_series_potential: coincident radii r = r_s");
    if (n_terms < 0) throw DomainError("monopole_series_potential: N must be >= 0");
    if (q == Complex{}) return {};
    const auto sm = source_modal(k, q, r_s, r, n_terms);
    const auto p = legendre_p_ladder(n_terms, std::cos(theta));
    Complex sum{};
    for (int n = 0; n <= n_terms; ++n)
        sum += sm.value[static_cast<size_t>(n)] * p[static_cast<size_t>(n)];
    return sum;
}

ModalCoefficients solve_modal_coefficients(const CoreShellConfig& cfg, int n_terms) {
    cfg.validate();
    ModalCoefficients mc;
    mc.c.resize(static_cast<size_t>(n_terms) + 1);
    mc.d.resize(static_cast<size_t>(n_terms) + 1);
    mc.e.resize(static_cast<size_t>(n_terms) + 1);
    mc.f.resize(static_cast<size_t>(n_terms) + 1);

    const auto ext_at_shell = ladders_at(cfg.k0 * cfg.a_shell, n_terms);
    const auto sh_at_shell = ladders_at(cfg.k1 * cfg.a_shell, n_terms);
    const auto sh_at_core = ladders_at(cfg.k1 * cfg.a_core, n_terms);
    const auto co_at_core = ladders_at(cfg.k2 * cfg.a_core, n_terms);
    const auto ext_src_shell = region_source_modal(cfg, CoreShellRegion::external, cfg.a_shell, n_terms);
    const auto sh_src_shell = region_source_modal(cfg, CoreShellRegion::shell, cfg.a_shell, n_terms);
    const auto sh_src_core = region_source_modal(cfg, CoreShellRegion::shell, cfg.a_core, n_terms);
    const auto co_src_core = region_source_modal(cfg, CoreShellRegion::core, cfg.a_core, n_terms);

    for (int n = 0; n <= n_terms; ++n) {
        const auto sys = modal_system(cfg, n, ext_at_shell, sh_at_shell, sh_at_core, co_at_core,
                                      ext_src_shell, sh_src_shell, sh_src_core, co_src_core);
        const auto x = solve4(sys.a, sys.b, n);
        const auto i = static_cast<size_t>(n);
        mc.c[i] = x[0];
        mc.d[i] = x[1];
        mc.e[i] = x[2];
        mc.f[i] = x[3];
    }
    return mc;
}

int recommended_terms(const CoreShellConfig& cfg) {
    double worst_ratio = 0.0;
    for (const auto& s : cfg.sources) {
        if (s.strength == Complex{}) continue;
        double ratio = 0.0;
        switch (s.region) {
            case CoreShellRegion::external: ratio = cfg.a_shell / s.radius; break;
            case CoreShellRegion::shell:
                ratio = std::max(s.radius / cfg.a_shell, cfg.a_core / s.radius);
                break;
            case CoreShellRegion::core: ratio = s.radius / cfg.a_core; break;
        }
        worst_ratio = std::max(worst_ratio, ratio);
    }
    int n = 30;
    for (const auto& kk : {cfg.k0, cfg.k1, cfg.k2}) {
        const double z = std::abs(kk) * cfg.a_shell;
        n = std::max(n, static_cast<int>(std::lround(z + 4.0 * std::cbrt(z) + 10.0)));
    }
    if (worst_ratio > 0.0 && worst_ratio < 1.0)
        n = std::max(n, static_cast<int>(std::ceil(std::log(1e-12) / std::log(worst_ratio))));
    return std::min(n, 150);
}

std::vector<double> modal_residuals(const CoreShellConfig& cfg, const ModalCoefficients& coeffs) {
    const int n_terms = coeffs.order();
    const auto ext_at_shell = ladders_at(cfg.k0 * cfg.a_shell, n_terms);
    const auto sh_at_shell = ladders_at(cfg.k1 * cfg.a_shell, n_terms);
    const auto sh_at_core = ladders_at(cfg.k1 * cfg.a_core, n_terms);
    const auto co_at_core = ladders_at(cfg.k2 * cfg.a_core, n_terms);
    const auto ext_src_shell = region_source_modal(cfg, CoreShellRegion::external, cfg.a_shell, n_terms);
    const auto sh_src_shell = region_source_modal(cfg, CoreShellRegion::shell, cfg.a_shell, n_terms);
    const auto sh_src_core = region_source_modal(cfg, CoreShellRegion::shell, cfg.a_core, n_terms);
    const auto co_src_core = region_source_modal(cfg, CoreShellRegion::core, cfg.a_core, n_terms);

    double rhs_max_all = 0.0;
    std::vector<ModalSystem> systems;
    for (int n = 0; n <= n_terms; ++n) {
        systems.push_back(modal_system(cfg, n, ext_at_shell, sh_at_shell, sh_at_core, co_at_core,
                                       ext_src_shell, sh_src_shell, sh_src_core, co_src_core));
        for (const auto& v : systems.back().b) rhs_max_all = std::max(rhs_max_all, std::abs(v));
    }

    std::vector<double> out;
    for (int n = 0; n <= n_terms; ++n) {
        const auto i = static_cast<size_t>(n);
        const auto& sys = systems[i];
        const std::array<Complex, 4> x = {coeffs.c[i], coeffs.d[i], coeffs.e[i], coeffs.f[i]};
        double rhs_max = 0.0, res = 0.0;
        for (int r = 0; r < 4; ++r) {
            Complex ax{};
            for (int c = 0; c < 4; ++c)
                ax += sys.a[static_cast<size_t>(r)][static_cast<size_t>(c)] * x[static_cast<size_t>(c)];
            res = std::max(res, std::abs(ax - sys.b[static_cast<size_t>(r)]));
            rhs_max = std::max(rhs_max, std::abs(sys.b[static_cast<size_t>(r)]));
        }
        const double denom = std::max(rhs_max, rhs_max_all);
        out.push_back(denom > 0.0 ? res / denom : res);
    }
    return out;
}

Complex eval_region_potential(const CoreShellConfig& cfg, const ModalCoefficients& coeffs,
                              CoreShellRegion region, double r, double theta) {
    const int n_terms = coeffs.order();
    const Complex src = region_source_closed(cfg, region, r, theta, nullptr);
    const auto p = legendre_p_ladder(n_terms, std::cos(theta));
    const Complex k = cfg.wavenumber(region);

    if (region == CoreShellRegion::core && r == 0.0) {
        return coeffs.f[0] + src;  // j_n(0) = delta_n0
    }
    const auto lad = ladders_at(k * r, n_terms);
    Complex sum = src;
    for (int n = 0; n <= n_terms; ++n) {
        const auto i = static_cast<size_t>(n);
        Complex hom{};
        switch (region) {
            case CoreShellRegion::external: hom = coeffs.c[i] * lad.h[i]; break;
            case CoreShellRegion::shell: hom = coeffs.d[i] * lad.j[i] + coeffs.e[i] * lad.y[i]; break;
            case CoreShellRegion::core: hom = coeffs.f[i] * lad.j[i]; break;
        }
        sum += hom * p[i];
    }
    return sum;
}

Complex eval_region_radial_derivative(const CoreShellConfig& cfg, const ModalCoefficients& coeffs,
                                      CoreShellRegion region, double r, double theta) {
    const int n_terms = coeffs.order();
    Complex src_ddr{};
    region_source_closed(cfg, region, r, theta, &src_ddr);
    const auto p = legendre_p_ladder(n_terms, std::cos(theta));
    const Complex k = cfg.wavenumber(region);
    const auto lad = ladders_at(k * r, n_terms);
    Complex sum = src_ddr;
    for (int n = 0; n <= n_terms; ++n) {
        const auto i = static_cast<size_t>(n);
        Complex hom{};
        switch (region) {
            case CoreShellRegion::external: hom = coeffs.c[i] * k * lad.hp[i]; break;
            case CoreShellRegion::shell:
                hom = k * (coeffs.d[i] * lad.jp[i] + coeffs.e[i] * lad.yp[i]);
                break;
            case CoreShellRegion::core: hom = coeffs.f[i] * k * lad.jp[i]; break;
        }
        sum += hom * p[i];
    }
    return sum;
}

Complex eval_potential(const CoreShellConfig& cfg, const ModalCoefficients& coeffs, double r,
                       double theta) {
    if (r < 0.0) throw DomainError("eval_potential: r must be >= 0");
    return eval_region_potential(cfg, coeffs, cfg.region_of(r), r, theta);
}

std::vector<TrackSample> validate_tracks(const CoreShellConfig& cfg,
                                         const std::vector<double>& track_radii,
                                         int samples_per_track, int n_terms) {
    cfg.validate();
    for (double r : track_radii) {
        if (r == cfg.a_core || r == cfg.a_shell)
            throw ValidationError("validate_tracks: track radius lies on an interface");
    }
    const auto coeffs = solve_modal_coefficients(cfg, n_terms);
    std::vector<TrackSample> out;
    out.reserve(track_radii.size() * static_cast<size_t>(samples_per_track));
    for (size_t t = 0; t < track_radii.size(); ++t) {
        for (int s = 0; s < samples_per_track; ++s) {
            const double theta = 2.0 * pi * s / std::max(1, samples_per_track);
            out.push_back({static_cast<int>(t), theta,
                           eval_potential(cfg, coeffs, track_radii[t], theta)});
        }
    }
    return out;
}

}  // namespace nsbem
