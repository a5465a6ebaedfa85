// SPDX-FileCopyrightText: Copyright (c) 2026 The nsbem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nsbem/dense.hpp"
#include "nsbem/scenario.hpp"

namespace nsbem {

// One surface with its mesh, nodal normals and per-element quadrature caches.
struct BuiltSurface {
    SurfaceSpec spec;
    QuadraticTriangleMesh mesh;
    std::vector<Vec3> node_normals;  // averaged over adjacent elements, mesh orientation

    struct QuadCache {
        int points_per_element = 0;
        std::vector<Vec3> position, normal;           // element-major
        std::vector<double> weight_jacobian;
        std::vector<std::array<double, 6>> shape;
    };
    QuadCache base, near;

    std::vector<double> elem_diameter;
    std::vector<Vec3> elem_centroid;
    std::vector<std::vector<int>> node_elements;       // star of each node
    std::vector<std::vector<int>> node_near_elements;  // star plus node-sharing neighbors

    // Global column offsets; -1 when the unknown is eliminated by the BC.
    int phi_offset = -1;
    int q_offset = -1;
};

// Fully resolved scenario: meshes built, unknown layout fixed, sources
// assigned, point-classification machinery ready.
struct BuiltScenario {
    Scenario scenario;
    std::vector<BuiltSurface> surfaces;
    int total_unknowns = 0;

    struct Bound {
        int surface;
        int side;  // +1: domain is the surface's inner side, -1: outer
    };
    std::vector<std::vector<Bound>> domain_surfaces;  // per domain
    std::vector<std::vector<int>> domain_sources;     // indices into scenario.sources

    struct Row {
        int domain, surface, node;
        int side;  // of the collocation surface, as in Bound
    };
    std::vector<Row> rows;  // equation ordering

    // Winding number of x with respect to surface s: ~1 inside, ~0 outside.
    double winding(int surface, const Vec3& x) const;
    // Containing domain, or -1 when x lies in no computational domain (inside
    // a scatterer body) or too close to a surface to classify.
    int domain_of_point(const Vec3& x) const;
    // Distance proxy: min over surface nodes of |x - node| / local diameter.
    double nearest_surface_distance(const Vec3& x, double* element_scale = nullptr) const;
};

BuiltScenario build_scenario(const Scenario& scenario);

// Same, but with externally supplied meshes (one per surface, in order);
// geometry fields of the surface specs are ignored.
BuiltScenario build_scenario_with_meshes(const Scenario& scenario,
                                         std::vector<QuadraticTriangleMesh> meshes);

// Desingularized collocation system over all domains (rows) and surface
// unknowns (columns), monopole sources on the right-hand side.
DenseComplexSystem assemble_system(const BuiltScenario& built);

// Free-space source sum of one domain at a point: sum_i Q_i e^{ik|x_si-x|}/|x_si-x|.
Complex monopole_rhs(const BuiltScenario& built, int domain, const Vec3& x0);

// Per-surface nodal fields in the stored convention: interface values belong
// to the inner-domain side; rigid surfaces carry dphidn = 0, pressure-release
// surfaces carry phi = 0.
struct SolutionField {
    std::vector<std::vector<Complex>> phi;
    std::vector<std::vector<Complex>> dphidn;
};

struct SolveReport {
    int dimension = 0;
    double assembly_seconds = 0.0;
    double solve_seconds = 0.0;
    double residual = 0.0;
    std::vector<std::string> warnings;  // e.g. quadrature degree low for a domain's kh
    std::string to_text() const;
};

SolutionField solve_scenario(const BuiltScenario& built, SolveReport* report = nullptr);

SolutionField unpack_solution(const BuiltScenario& built, const std::vector<Complex>& x);

// Thread count for row-parallel assembly and pointwise evaluation; reads
// NSBEM_THREADS, defaulting to the hardware concurrency.
int worker_thread_count();
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace nsbem
