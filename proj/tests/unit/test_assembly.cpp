// SPDX-FileCopyrightText: Copyright (c) 2026 The nsbem Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nsbem/assembly.hpp"
#include "nsbem/oracle.hpp"

using namespace nsbem;

namespace {

Scenario core_shell_scenario(int level) {
    Scenario s;
    s.name = "core_shell";
    s.domains = {
        {"external", Complex(1.0, 0.0), 1.0, true},
        {"shell_medium", Complex(1.5, 0.0), 5.0, false},
        {"core_medium", Complex(0.8, 0.6), 2.0, false},
    };
    SurfaceSpec shell;
    shell.id = "shell";
    shell.geometry.kind = ParametricSurfaceSpec::Kind::sphere;
    shell.geometry.radius = 2.0;
    shell.subdivision_level = level;
    shell.inner_domain = "shell_medium";
    shell.outer_domain = "external";
    SurfaceSpec core;
    core.id = "core";
    core.geometry.kind = ParametricSurfaceSpec::Kind::sphere;
    core.geometry.radius = 1.0;
    core.subdivision_level = level;
    core.inner_domain = "core_medium";
    core.outer_domain = "shell_medium";
    s.surfaces = {shell, core};
    s.sources = {
        {"external", Vec3{0, 0, 3.0}, Complex(0.8, 0.6)},
        {"shell_medium", Vec3{0, 0, 1.5}, Complex(1.0, 0.0)},
        {"core_medium", Vec3{0, 0, 0.5}, Complex(-1.0, 0.0)},
    };
    return s;
}

Scenario rigid_sphere_scenario(int level, const Vec3& src, Complex q, double k) {
    Scenario s;
    s.name = "rigid_sphere";
    s.k_ref = k;
    s.domains = {{"external", Complex(1.0, 0.0), 1.0, true}};
    SurfaceSpec sphere;
    sphere.id = "scatterer";
    sphere.geometry.kind = ParametricSurfaceSpec::Kind::sphere;
    sphere.geometry.radius = 1.0;
    sphere.subdivision_level = level;
    sphere.kind = BoundaryKind::rigid;
    sphere.bc_domain = "external";
    s.surfaces = {sphere};
    s.sources = {{"external", src, q}};
    return s;
}

// Interior/exterior pair across one sphere; used by the null test.
Scenario two_domain_sphere(int level, Complex k_inside) {
    Scenario s;
    s.name = "null_test";
    s.domains = {
        {"outside", Complex(1.0, 0.0), 1.0, true},
        {"inside", k_inside, 1.0, false},
    };
    SurfaceSpec sphere;
    sphere.id = "sphere";
    sphere.geometry.kind = ParametricSurfaceSpec::Kind::sphere;
    sphere.geometry.radius = 1.0;
    sphere.subdivision_level = level;
    sphere.inner_domain = "inside";
    sphere.outer_domain = "outside";
    s.surfaces = {sphere};
    return s;
}

// Exact value the interior-domain rows take on (phi = 1, dphidn = 0):
// integral of (H_k - H_0) over the sphere, which equals -k^2 int_V G_k dV
// = 2 pi (1 + (e^c (c-2) + 2)/c), c = 2ika.
Complex null_row_reference(Complex k, double a) {
    if (k == Complex{}) return {};
    const Complex c = 2.0 * iu * k * a;
    return 2.0 * pi * (1.0 + (std::exp(c) * (c - 2.0) + 2.0) / c);
}

// Max deviation of the interior-domain rows from the reference.
double null_test_residual(int level, Complex k_inside) {
    const auto built = build_scenario(two_domain_sphere(level, k_inside));
    const auto sys = assemble_system(built);
    const int n = built.total_unknowns;
    const auto& bs = built.surfaces[0];
    const Complex ref = null_row_reference(k_inside, 1.0);

    double worst = 0.0;
    for (int r = 0; r < static_cast<int>(built.rows.size()); ++r) {
        const auto& row = built.rows[static_cast<size_t>(r)];
        if (built.scenario.domains[static_cast<size_t>(row.domain)].id != "inside") continue;
        Complex y{};
        for (int i = 0; i < bs.mesh.node_count(); ++i) y += sys.matrix(r, bs.phi_offset + i);
        worst = std::max(worst, std::abs(y - ref));
    }
    (void)n;
    return worst;
}

}  // namespace

TEST_CASE("system dimensions follow the boundary-condition elimination") {
    const auto cs = build_scenario(core_shell_scenario(2));
    CHECK(cs.total_unknowns == 2568);  // 2 (N_shell + N_core), level-2 spheres

    const auto rigid = build_scenario(rigid_sphere_scenario(1, Vec3{0, 0, 2}, Complex(1, 0), 1.0));
    CHECK(rigid.total_unknowns == 162);

    auto bubble_scenario = rigid_sphere_scenario(1, Vec3{0, 0, 2}, Complex(1, 0), 1.0);
    bubble_scenario.surfaces[0].kind = BoundaryKind::pressure_release;
    const auto bubble = build_scenario(bubble_scenario);
    CHECK(bubble.total_unknowns == 162);
    CHECK(bubble.surfaces[0].phi_offset == -1);
    CHECK(bubble.surfaces[0].q_offset == 0);
}

TEST_CASE("empty scenario assembles to an empty system") {
    Scenario s;
    s.domains = {{"free", Complex(1.0, 0.0), 1.0, true}};
    s.sources = {{"free", Vec3{0, 0, 0}, Complex(1, 0)}};
    const auto built = build_scenario(s);
    CHECK(built.total_unknowns == 0);
    const auto sys = assemble_system(built);
    CHECK(sys.dimension() == 0);
}

TEST_CASE("monopole right-hand side") {
    // source 1 away from the collocation point with k = pi: e^{i pi} = -1
    auto s = rigid_sphere_scenario(0, Vec3{0, 0, 2.0}, Complex(1, 0), pi);
    const auto built = build_scenario(s);
    const Complex v = monopole_rhs(built, 0, Vec3{0, 0, 1.0});
    CHECK(std::abs(v - Complex(-1.0, 0.0)) < 1e-14);

    auto none = two_domain_sphere(0, Complex(1.0, 0.0));
    const auto built2 = build_scenario(none);
    CHECK(monopole_rhs(built2, 0, Vec3{0, 0, 1.0}) == Complex{});
}

TEST_CASE("dipole pair right-hand side matches the analytic point dipole") {
    // Two opposite monopoles 1e-5 apart vs Q d.grad_{xs} G at the midpoint.
    const double d = 1e-5;
    Scenario s;
    s.k_ref = 100.0;
    s.domains = {{"external", Complex(1.0, 0.0), 1.0, true}};
    s.sources = {
        {"external", Vec3{0, 0, 1.35 + d / 2}, Complex(1, 0)},
        {"external", Vec3{0, 0, 1.35 - d / 2}, Complex(-1, 0)},
    };
    const auto built = build_scenario(s);
    const Vec3 x0{0.7, -0.2, 0.1};
    const Complex got = monopole_rhs(built, 0, x0);

    const Vec3 xs{0, 0, 1.35};
    const Vec3 rv = x0 - xs;
    const double r = norm(rv);
    const Complex k(100.0, 0.0);
    const Complex dGdz =
        -(rv.z) * std::exp(iu * k * r) * (iu * k * r - 1.0) / (r * r * r);  // d/dz_s
    const Complex want = d * dGdz;
    CHECK(std::abs(got - want) / std::abs(want) < 1e-4);
}

TEST_CASE("desingularized null test: k = 0 rows vanish to rounding") {
    for (int level : {1, 2}) {
        const double res = null_test_residual(level, Complex(0.0, 0.0));
        CHECK(res < 1e-10);
    }
}

TEST_CASE("desingularized null test: complex k converges at order >= 3") {
    const Complex k(0.8, 0.6);
    // Reference value cross-checked by quadrature of the closed-form integrand.
    const Complex ref = null_row_reference(k, 1.0);
    Complex num{};
    const int m = 2000;
    for (int i = 0; i < m; ++i) {
        const double u = (i + 0.5) / m;
        const Complex cu = 2.0 * iu * k * u;
        num += 2.0 * pi / m * (std::exp(cu) * (cu - 1.0) + 1.0);
    }
    CHECK(std::abs(num - ref) < 1e-6 * std::abs(ref));

    // Measured at implementation time: 4.9e-3 / 3.4e-4 / 2.2e-5 at levels
    // 1/2/3 (ratio ~15 per level, order ~3.9); thresholds frozen with margin.
    const double r1 = null_test_residual(1, k);
    const double r2 = null_test_residual(2, k);
    CHECK(r2 < 5e-4);
    CHECK(r2 <= r1 / 8.0);
}

TEST_CASE("rigid sphere solution matches the near-rigid analytic limit") {
    const auto scenario = rigid_sphere_scenario(2, Vec3{0, 0, 2.0}, Complex(1, 0), 1.0);
    const auto built = build_scenario(scenario);
    SolveReport report;
    const auto field = solve_scenario(built, &report);
    CHECK(report.residual < 1e-10);

    CoreShellConfig cfg;
    cfg.a_core = 0.5;
    cfg.a_shell = 1.0;
    cfg.k0 = Complex(1.0, 0.0);
    cfg.k1 = cfg.k2 = Complex(1.0, 0.0);
    cfg.rho0 = 1.0;
    cfg.rho1 = cfg.rho2 = 1e6;  // emulates a rigid scatterer
    cfg.sources = {{CoreShellRegion::external, 2.0, Complex(1.0, 0.0)}};
    const auto mc = solve_modal_coefficients(cfg, 30);

    const auto& mesh = built.surfaces[0].mesh;
    double max_err = 0.0, max_phi = 0.0;
    for (int i = 0; i < mesh.node_count(); ++i) {
        const Vec3& p = mesh.nodes[static_cast<size_t>(i)];
        const double r = norm(p);
        const double theta = std::acos(std::clamp(p.z / r, -1.0, 1.0));
        const Complex want = eval_region_potential(cfg, mc, CoreShellRegion::external, r, theta);
        max_err = std::max(max_err, std::abs(field.phi[0][static_cast<size_t>(i)] - want));
        max_phi = std::max(max_phi, std::abs(want));
    }
    CHECK(max_err / max_phi < 1e-3);
}

TEST_CASE("rotation invariance of the assembled solution") {
    // Same discrete problem with every coordinate rotated; nodal solutions
    // must agree index-by-index.
    const double ang = 0.83;
    const double ca = std::cos(ang), sa = std::sin(ang);
    const auto rot = [&](const Vec3& v) {
        // rotation about the axis (1,1,1)/sqrt(3)
        const Vec3 axis = normalized(Vec3{1, 1, 1});
        const Vec3 first = ca * v;
        const Vec3 second = sa * cross(axis, v);
        const Vec3 third = (1.0 - ca) * dot(axis, v) * axis;
        return first + second + third;
    };

    auto scenario = rigid_sphere_scenario(1, Vec3{0.3, 0.1, 2.0}, Complex(0.7, 0.4), 1.3);
    const auto built_a = build_scenario(scenario);

    auto mesh_b = built_a.surfaces[0].mesh;
    for (auto& p : mesh_b.nodes) p = rot(p);
    auto scenario_b = scenario;
    scenario_b.sources[0].position = rot(scenario.sources[0].position);
    const auto built_b = build_scenario_with_meshes(scenario_b, {mesh_b});

    const auto fa = solve_scenario(built_a);
    const auto fb = solve_scenario(built_b);
    double max_phi = 0.0, max_diff = 0.0;
    for (size_t i = 0; i < fa.phi[0].size(); ++i) {
        max_phi = std::max(max_phi, std::abs(fa.phi[0][i]));
        max_diff = std::max(max_diff, std::abs(fa.phi[0][i] - fb.phi[0][i]));
    }
    CHECK(max_diff / max_phi < 1e-8);
}

TEST_CASE("source placement validation") {
    auto s = core_shell_scenario(1);
    s.sources[0].position = Vec3{0, 0, 1.7};  // declared external, actually in the shell
    CHECK_THROWS_AS(build_scenario(s), ValidationError);

    auto s2 = core_shell_scenario(1);
    s2.sources[0].domain = "external";
    s2.sources[0].position = Vec3{0, 0, 3.0};
    CHECK_NOTHROW(build_scenario(s2));
}

TEST_CASE("structure validation: surface that is both interface and bc") {
    auto s = core_shell_scenario(1);
    s.surfaces[0].bc_domain = "external";
    CHECK_THROWS_AS(build_scenario(s), ValidationError);
}
