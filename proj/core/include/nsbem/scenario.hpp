// SPDX-FileCopyrightText: Copyright (c) 2026 The nsbem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "nsbem/mesh.hpp"
#include "nsbem/types.hpp"

namespace nsbem {

struct DomainSpec {
    std::string id;
    Complex k_rel{1.0, 0.0};  // wavenumber relative to k_ref
    double rho_rel = 1.0;     // density relative to rho_ref
    bool unbounded = false;
};

enum class BoundaryKind { interface, rigid, pressure_release };

// A closed surface. Interfaces couple the enclosed (inner) domain to the
// surrounding (outer) domain. Boundary-condition surfaces bound one domain:
// by default the domain surrounds the body (domain_inside = false); a cavity
// wall would set domain_inside = true.
struct SurfaceSpec {
    std::string id;
    ParametricSurfaceSpec geometry;
    int subdivision_level = 2;  // geodesic frequency 2^level unless geometry.frequency overrides
    BoundaryKind kind = BoundaryKind::interface;
    std::string inner_domain, outer_domain;  // interface only
    std::string bc_domain;                   // rigid / pressure_release only
    bool domain_inside = false;              // bc surfaces only
};

struct SourceSpec {
    std::string domain;
    Vec3 position;
    Complex strength{1.0, 0.0};
};

struct NumericsSpec {
    int quad_degree = 6;
    int quad_degree_near = 8;              // self and node-adjacent elements
    double near_surface_threshold = 0.2;   // masking distance, in local element diameters
    int max_composite_depth = 8;           // adaptive refinement for close regular integrals
    int base_refine_depth = 0;             // global 4-way splits of every element rule
};

// ---- requested outputs (consumed by the runner) ----

struct TrackOutput {
    std::string name = "tracks";
    std::vector<double> radii;  // circular tracks in the xz-plane, centered at the origin
    int samples = 360;
};

struct GridOutput {
    std::string name = "grid";
    std::string plane = "xz";  // one of xy, xz, yz
    Vec3 center{};
    double half_u = 1.0, half_v = 1.0;
    int nu = 101, nv = 101;
    std::string normalization = "monopole_reference";  // or "none"
    bool vtk = false;
    std::vector<double> snapshot_phases;  // omega*t values; one extra file per phase
};

struct RadarOutput {
    std::string name = "radar";
    double radius = 100.0;
    int n_angles = 720;       // uniformly spaced in [0, 2pi)
    std::string plane = "xz";
    bool subtract_incident = true;
};

struct FocalScanOutput {
    std::string name = "focal";
    Vec3 start{}, end{1.0, 0.0, 0.0};
    int samples = 401;
    std::string normalization = "monopole_reference";
};

struct OutputsSpec {
    std::vector<TrackOutput> tracks;
    std::vector<GridOutput> grids;
    std::vector<RadarOutput> radars;
    std::vector<FocalScanOutput> focal_scans;
    bool export_meshes = false;
};

struct Scenario {
    std::string name = "scenario";
    double k_ref = 1.0;
    double omega = 1.0;
    double rho_ref = 1.0;
    std::vector<DomainSpec> domains;
    std::vector<SurfaceSpec> surfaces;
    std::vector<SourceSpec> sources;
    NumericsSpec numerics;
    OutputsSpec outputs;

    int domain_index(const std::string& id) const;  // -1 when absent
    Complex wavenumber(int domain) const;           // absolute: k_rel * k_ref
    double density(int domain) const;               // absolute: rho_rel * rho_ref

    // Structural checks that need no meshes (ids, topology, BC consistency).
    void validate_structure() const;
};

}  // namespace nsbem
