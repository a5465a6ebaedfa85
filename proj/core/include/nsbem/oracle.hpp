// SPDX-FileCopyrightText: Copyright (c) 2026 The nsbem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "nsbem/special_functions.hpp"
#include "nsbem/types.hpp"

namespace nsbem {

// Closed-form series solution for point sources on the symmetry axis of a
// concentric core-shell spherical scatterer. Serves as ground truth for the
// solver's validation runs.

enum class CoreShellRegion { external, shell, core };

struct AxialSource {
    CoreShellRegion region;
    double radius = 0.0;  // distance of the source from the center, on the +z axis
    Complex strength{};   // Q
};

struct CoreShellConfig {
    double a_core = 1.0;
    double a_shell = 2.0;
    Complex k0{1.0, 0.0}, k1{1.0, 0.0}, k2{1.0, 0.0};  // external / shell / core
    double rho0 = 1.0, rho1 = 1.0, rho2 = 1.0;
    std::vector<AxialSource> sources;

    void validate() const;  // throws ValidationError on a bad configuration
    Complex wavenumber(CoreShellRegion r) const;
    double density(CoreShellRegion r) const;
    CoreShellRegion region_of(double r) const;  // interface radii resolve to the outer region
};

// Per order n = 0..N: C_n (external, h_n), D_n and E_n (shell, j_n and y_n),
// F_n (core, j_n).
struct ModalCoefficients {
    std::vector<Complex> c, d, e, f;
    int order() const { return static_cast<int>(c.size()) - 1; }
};

// Multipole expansion of a free-space monopole:
//   (Q/4pi) ik sum_{n=0}^{N} (2n+1) h_n(k r_>) j_n(k r_<) P_n(cos theta)
Complex monopole_series_potential(Complex k, Complex q, double r_s, double r, double theta,
                                  int n_terms);

// Solves the per-order 4x4 interface systems (pressure and radial-velocity
// continuity at both interfaces) by direct elimination with partial pivoting.
ModalCoefficients solve_modal_coefficients(const CoreShellConfig& cfg, int n_terms);

// Truncation order that drives the uncompensated modal tail of every source
// below ~1e-12 at the interfaces (the tail decays like the source-to-interface
// radius ratio per order). Lower-bounded by the wavenumber-based estimate.
int recommended_terms(const CoreShellConfig& cfg);

// Max residual of the 4x4 systems, per order, relative to the largest RHS
// magnitude of that order.
std::vector<double> modal_residuals(const CoreShellConfig& cfg, const ModalCoefficients& coeffs);

// Potential at (r, theta); the region is selected by r.
Complex eval_potential(const CoreShellConfig& cfg, const ModalCoefficients& coeffs, double r,
                       double theta);

// Region-forced evaluations, for interface-continuity checks.
Complex eval_region_potential(const CoreShellConfig& cfg, const ModalCoefficients& coeffs,
                              CoreShellRegion region, double r, double theta);
Complex eval_region_radial_derivative(const CoreShellConfig& cfg, const ModalCoefficients& coeffs,
                                      CoreShellRegion region, double r, double theta);

struct TrackSample {
    int track = 0;
    double theta = 0.0;
    Complex phi{};
};

// Analytic potential on circular tracks in the xz-plane, uniformly spaced
// polar angles in [0, 2pi). Track radii must lie strictly inside one region.
std::vector<TrackSample> validate_tracks(const CoreShellConfig& cfg,
                                         const std::vector<double>& track_radii,
                                         int samples_per_track, int n_terms);

}  // namespace nsbem
