// SPDX-FileCopyrightText: Copyright (c) 2026 The nsbem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <optional>
#include <vector>

#include "nsbem/assembly.hpp"

namespace nsbem {

struct FieldSample {
    Vec3 position;
    Complex phi;
    Complex pressure;  // i omega rho phi, medium of the containing domain
};

struct MaskedSample {
    Vec3 position;
    Complex phi, pressure;
    bool masked = false;
};

// Representation-formula evaluation at off-surface points. Interpolated
// surface data are cached per solution, so construction is cheap and `at` is
// safe to call concurrently.
class FieldEvaluator {
  public:
    FieldEvaluator(const BuiltScenario& built, const SolutionField& solution);

    // Throws DomainError when x lies in no computational domain or within the
    // near-surface masking band.
    FieldSample at(const Vec3& x) const;

    // Same evaluation, but masking instead of throwing.
    MaskedSample at_masked(const Vec3& x) const;

    // Gradient of phi at x (same representation formula, differentiated).
    std::array<Complex, 3> gradient(const Vec3& x) const;

    const BuiltScenario& built() const { return *built_; }

  private:
    struct SurfaceData {
        std::vector<Complex> phi_qp, q_qp;  // stored convention, at base-cache points
    };
    Complex domain_integral(int domain, const Vec3& x) const;

    const BuiltScenario* built_;
    SolutionField solution_;
    std::vector<SurfaceData> data_;
    QuadratureRule near_rule_;
};

// |p| of one free-space monopole with the first source's |Q| at unit distance
// in the unbounded (or first source's) medium: rho omega |Q| / (4 pi).
// Returns 1 when the scenario has no sources.
double monopole_reference_pressure(const BuiltScenario& built);

struct PressureGrid {
    GridOutput spec;
    std::vector<MaskedSample> samples;  // row-major: v index outer, u inner
    double normalization = 1.0;         // divisor applied to |p| on output
};
PressureGrid pressure_grid_slice(const FieldEvaluator& eval, const GridOutput& spec);

struct RadarPattern {
    double radius = 0.0;
    std::vector<double> angles;     // radians, strictly increasing
    std::vector<double> magnitude;  // |p_sc| / monopole reference
};
// Total or scattered pressure magnitude on a circle. Plane "xz": angle
// measured from +z toward +x; "xy": from +x toward +y; "yz": from +y toward +z.
RadarPattern far_field_pattern(const FieldEvaluator& eval, const RadarOutput& spec);

struct LineScan {
    FocalScanOutput spec;
    std::vector<MaskedSample> samples;
    double normalization = 1.0;
};
LineScan focal_line_scan(const FieldEvaluator& eval, const FocalScanOutput& spec);

struct FocalMetrics {
    double max_pressure = 0.0;  // normalized |p| at the (interpolated) maximum
    Vec3 position{};            // interpolated location of the maximum
};
// Quadratic interpolation of |p| around the discrete maximum of the scan.
FocalMetrics focal_metrics(const LineScan& scan);

// Instantaneous pressure Re(p e^{-i phase}) per sample; masked entries 0.
std::vector<double> time_snapshot(const PressureGrid& grid, double phase);

}  // namespace nsbem
