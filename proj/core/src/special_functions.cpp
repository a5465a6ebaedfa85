// SPDX-FileCopyrightText: Copyright (c) 2026 The nsbem Authors
// SPDX-License-Identifier: Apache-2.0

#include "nsbem/special_functions.hpp"

#include <algorithm>
#include <cmath>

namespace nsbem {

namespace {

using LComplex = std::complex<long double>;

constexpr long double rescale_threshold = 1e4000L;
constexpr long double rescale_factor = 1e-4000L;

void check_order(int n) {
    if (n < 0) throw DomainError("spherical Bessel order must be >= 0");
    if (n > max_bessel_order + 1) {
        throw DomainError("spherical Bessel order " + std::to_string(n) +
                          " exceeds supported maximum " + std::to_string(max_bessel_order));
    }
}

LComplex closed_j0(LComplex z) { return std::sin(z) / z; }
LComplex closed_j1(LComplex z) { return std::sin(z) / (z * z) - std::cos(z) / z; }
LComplex closed_y0(LComplex z) { return -std::cos(z) / z; }
LComplex closed_y1(LComplex z) { return -std::cos(z) / (z * z) - std::sin(z) / z; }

// Ascending power series, reliable for |z| < ~1 where the closed form of j1
// cancels. j_n(z) = z^n/(2n+1)!! * sum_m (-z^2/2)^m / (m! (2n+3)...(2n+2m+1))
LComplex series_j(int n, LComplex z) {
    LComplex pref = 1.0L;
    for (int m = 1; m <= n; ++m) pref *= z / static_cast<long double>(2 * m + 1);
    const LComplex zh = -0.5L * z * z;
    LComplex term = 1.0L, sum = 1.0L;
    for (int m = 1; m < 80; ++m) {
        term *= zh / static_cast<long double>(m * (2 * n + 2 * m + 1));
        sum += term;
        if (std::abs(term) < 1e-22L * std::abs(sum)) break;
    }
    return pref * sum;
}

std::vector<LComplex> j_ladder_impl(int n_max, LComplex z) {
    std::vector<LComplex> out(static_cast<size_t>(n_max) + 1);
    const long double az = std::abs(z);

    if (az == 0.0L) {
        out[0] = 1.0L;
        return out;  // j_n(0) = 0 for n >= 1
    }
    if (az < 0.5L) {
        for (int n = 0; n <= n_max; ++n) out[static_cast<size_t>(n)] = series_j(n, z);
        return out;
    }

    out[0] = closed_j0(z);
    if (n_max == 0) return out;

    if (static_cast<long double>(n_max) <= az - 2.0L) {
        // Entire ladder below the turning point: forward recurrence is stable.
        out[1] = closed_j1(z);
        for (int n = 1; n < n_max; ++n)
            out[static_cast<size_t>(n) + 1] =
                static_cast<long double>(2 * n + 1) / z * out[static_cast<size_t>(n)] -
                out[static_cast<size_t>(n) - 1];
        return out;
    }

    // Miller backward recurrence with normalization against j0 or j1.
    const int start = n_max + 30 + static_cast<int>(6.0 * std::cbrt(static_cast<double>(n_max) +
                                                                    static_cast<double>(az) + 1.0));
    LComplex fp = 0.0L;      // f_{m+1}
    LComplex fc = 1e-30L;    // f_m (arbitrary seed)
    std::vector<int> rescales(static_cast<size_t>(n_max) + 1, 0);
    int rc = 0;
    LComplex f0 = 0.0L, f1 = 0.0L;
    int rc0 = 0, rc1 = 0;
    for (int m = start; m >= 0; --m) {
        if (m <= n_max) {
            out[static_cast<size_t>(m)] = fc;
            rescales[static_cast<size_t>(m)] = rc;
        }
        if (m == 1) { f1 = fc; rc1 = rc; }
        if (m == 0) { f0 = fc; rc0 = rc; break; }
        const LComplex fm = static_cast<long double>(2 * m + 1) / z * fc - fp;
        fp = fc;
        fc = fm;
        if (std::abs(fc) > rescale_threshold) {
            fc *= rescale_factor;
            fp *= rescale_factor;
            ++rc;
        }
    }

    const LComplex j0 = closed_j0(z);
    const LComplex j1 = closed_j1(z);
    const bool use_j0 = std::abs(j0) >= std::abs(j1);
    const LComplex ref = use_j0 ? j0 : j1;
    const LComplex fref = use_j0 ? f0 : f1;
    const int rc_ref = use_j0 ? rc0 : rc1;

    for (int n = 0; n <= n_max; ++n) {
        LComplex v = out[static_cast<size_t>(n)] / fref * ref;
        // Undo rescales that happened between storing f_n and reaching f_ref.
        for (int r = rescales[static_cast<size_t>(n)]; r < rc_ref; ++r) v *= rescale_factor;
        out[static_cast<size_t>(n)] = v;
    }
    return out;
}

std::vector<LComplex> y_ladder_impl(int n_max, LComplex z) {
    if (std::abs(z) == 0.0L) throw DomainError("sph_bessel_y: singular argument z = 0");
    std::vector<LComplex> out(static_cast<size_t>(n_max) + 1);
    out[0] = closed_y0(z);
    if (n_max >= 1) out[1] = closed_y1(z);
    for (int n = 1; n < n_max; ++n)
        out[static_cast<size_t>(n) + 1] =
            static_cast<long double>(2 * n + 1) / z * out[static_cast<size_t>(n)] -
            out[static_cast<size_t>(n) - 1];
    return out;
}

Complex to_double_checked(LComplex v, const char* fn) {
    const Complex d{static_cast<double>(v.real()), static_cast<double>(v.imag())};
    if (!std::isfinite(d.real()) || !std::isfinite(d.imag())) {
        throw DomainError(std::string(fn) + ": result overflows double precision for this order/argument");
    }
    return d;
}

std::vector<Complex> to_double_vector(const std::vector<LComplex>& v, const char* fn) {
    std::vector<Complex> out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = to_double_checked(v[i], fn);
    return out;
}

}  // namespace

std::vector<Complex> sph_bessel_j_ladder(int n_max, Complex z) {
    check_order(n_max);
    return to_double_vector(j_ladder_impl(n_max, LComplex(z.real(), z.imag())), "sph_bessel_j");
}

std::vector<Complex> sph_bessel_y_ladder(int n_max, Complex z) {
    check_order(n_max);
    return to_double_vector(y_ladder_impl(n_max, LComplex(z.real(), z.imag())), "sph_bessel_y");
}

std::vector<Complex> sph_hankel1_ladder(int n_max, Complex z) {
    check_order(n_max);
    const LComplex lz(z.real(), z.imag());
    const auto j = j_ladder_impl(n_max, lz);
    const auto y = y_ladder_impl(n_max, lz);
    std::vector<Complex> out(j.size());
    for (size_t i = 0; i < j.size(); ++i) {
        // h_n = j_n + i y_n, formed from the double-rounded components so the
        // definitional identity holds exactly in returned values.
        const Complex jd = to_double_checked(j[i], "sph_hankel1");
        const Complex yd = to_double_checked(y[i], "sph_hankel1");
        out[i] = jd + iu * yd;
    }
    return out;
}

Complex sph_bessel_j(int n, Complex z) { return sph_bessel_j_ladder(n, z)[static_cast<size_t>(n)]; }
Complex sph_bessel_y(int n, Complex z) { return sph_bessel_y_ladder(n, z)[static_cast<size_t>(n)]; }
Complex sph_hankel1(int n, Complex z) { return sph_hankel1_ladder(n, z)[static_cast<size_t>(n)]; }

Complex sph_bessel_derivative(BesselKind kind, int n, Complex z) {
    check_order(n);
    if (std::abs(z) == 0.0) throw DomainError("sph_bessel_derivative: singular argument z = 0");
    const auto ladder = [&]() -> std::vector<Complex> {
        switch (kind) {
            case BesselKind::j: return sph_bessel_j_ladder(n + 1, z);
            case BesselKind::y: return sph_bessel_y_ladder(n + 1, z);
            default: return sph_hankel1_ladder(n + 1, z);
        }
    }();
    return -ladder[static_cast<size_t>(n) + 1] +
           static_cast<double>(n) / z * ladder[static_cast<size_t>(n)];
}

std::vector<double> legendre_p_ladder(int n_max, double x) {
    if (x < -1.0 || x > 1.0) throw DomainError("legendre_p: x outside [-1, 1]");
    std::vector<double> out(static_cast<size_t>(n_max) + 1);
    out[0] = 1.0;
    if (n_max >= 1) out[1] = x;
    for (int n = 1; n < n_max; ++n)
        out[static_cast<size_t>(n) + 1] =
            ((2 * n + 1) * x * out[static_cast<size_t>(n)] - n * out[static_cast<size_t>(n) - 1]) /
            (n + 1);
    return out;
}

double legendre_p(int n, double x) {
    if (n < 0) throw DomainError("legendre_p: order must be >= 0");
    return legendre_p_ladder(n, x)[static_cast<size_t>(n)];
}

TruncationOrder truncation_terms(Complex k, double source_radius) {
    if (std::abs(k) <= 0.0) throw DomainError("truncation_terms: |k| must be positive");
    if (source_radius < 0.0) throw DomainError("truncation_terms: source radius must be >= 0");
    const double ka = (source_radius >= 0.5) ? std::abs(k) : std::abs(k) * source_radius;
    const long long n = std::llround(ka + 4.0 * std::cbrt(ka) + 1.0);
    return TruncationOrder{static_cast<int>(std::max(1LL, n))};
}

}  // namespace nsbem
