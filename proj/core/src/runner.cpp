// SPDX-FileCopyrightText: Copyright (c) 2026 The nsbem Authors
// SPDX-License-Identifier: Apache-2.0

#include "nsbem/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace nsbem {

namespace {

namespace fs = std::filesystem;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

class OutputWriter {
  public:
    OutputWriter(const std::string& dir, RunReport& report) : dir_(dir), report_(report) {
        fs::create_directories(dir_);
    }

    std::ofstream open(const std::string& name) {
        const fs::path p = fs::path(dir_) / name;
        std::ofstream os(p);
        if (!os) throw ValidationError("cannot open output file: " + p.string());
        report_.files.push_back(name);
        return os;
    }

    const std::string& dir() const { return dir_; }

  private:
    std::string dir_;
    RunReport& report_;
};

void write_grid_csv(OutputWriter& out, const std::string& name, const PressureGrid& grid) {
    auto os = out.open(name);
    os << "x,y,z,re_p,im_p,abs_p_normalized,masked\n";
    for (const auto& s : grid.samples) {
        const double a = s.masked ? 0.0 : std::abs(s.pressure) / grid.normalization;
        os << fmt17(s.position.x) << ',' << fmt17(s.position.y) << ',' << fmt17(s.position.z)
           << ',' << fmt17(s.masked ? 0.0 : s.pressure.real()) << ','
           << fmt17(s.masked ? 0.0 : s.pressure.imag()) << ',' << fmt17(a) << ','
           << (s.masked ? 1 : 0) << '\n';
    }
}

// Legacy VTK structured points carrying |p| normalized; masked cells 0.
void write_grid_vtk(OutputWriter& out, const std::string& name, const PressureGrid& grid) {
    auto os = out.open(name);
    const int nu = grid.spec.nu, nv = grid.spec.nv;
    os << "# vtk DataFile Version 3.0\n"
       << "pressure magnitude\n"
       << "ASCII\n"
       << "DATASET STRUCTURED_POINTS\n"
       << "DIMENSIONS " << nu << ' ' << nv << " 1\n"
       << "ORIGIN 0 0 0\n"
       << "SPACING 1 1 1\n"
       << "POINT_DATA " << nu * nv << "\n"
       << "SCALARS abs_p double 1\n"
       << "LOOKUP_TABLE default\n";
    for (const auto& s : grid.samples)
        os << fmt17(s.masked ? 0.0 : std::abs(s.pressure) / grid.normalization) << '\n';
}

void write_snapshot_csv(OutputWriter& out, const std::string& name, const PressureGrid& grid,
                        double phase) {
    const auto values = time_snapshot(grid, phase);
    auto os = out.open(name);
    os << "x,y,z,p_instantaneous,masked\n";
    for (size_t i = 0; i < grid.samples.size(); ++i) {
        const auto& s = grid.samples[i];
        os << fmt17(s.position.x) << ',' << fmt17(s.position.y) << ',' << fmt17(s.position.z)
           << ',' << fmt17(values[i]) << ',' << (s.masked ? 1 : 0) << '\n';
    }
}

void write_track_csv(std::ofstream os, const std::vector<int>& track_ids,
                     const std::vector<double>& thetas, const std::vector<Complex>& phis) {
    os << "track_id,theta_rad,re_phi,im_phi,abs_phi\n";
    for (size_t i = 0; i < phis.size(); ++i) {
        os << track_ids[i] << ',' << fmt17(thetas[i]) << ',' << fmt17(phis[i].real()) << ','
           << fmt17(phis[i].imag()) << ',' << fmt17(std::abs(phis[i])) << '\n';
    }
}

void emit_outputs(const BuiltScenario& built, const FieldEvaluator& eval, OutputWriter& out) {
    const auto& outputs = built.scenario.outputs;

    if (outputs.export_meshes) {
        for (const auto& bs : built.surfaces) {
            auto os = out.open("mesh_" + bs.spec.id + ".txt");
            write_mesh(os, bs.mesh);
        }
    }

    for (const auto& t : outputs.tracks) {
        std::vector<int> ids;
        std::vector<double> thetas;
        std::vector<Complex> phis;
        for (size_t ti = 0; ti < t.radii.size(); ++ti) {
            for (int i = 0; i < t.samples; ++i) {
                const double theta = 2.0 * pi * i / std::max(1, t.samples);
                const Vec3 x{t.radii[ti] * std::sin(theta), 0.0, t.radii[ti] * std::cos(theta)};
                ids.push_back(static_cast<int>(ti));
                thetas.push_back(theta);
                phis.push_back(eval.at(x).phi);
            }
        }
        write_track_csv(out.open(t.name + ".csv"), ids, thetas, phis);
    }

    for (const auto& g : outputs.grids) {
        const auto grid = pressure_grid_slice(eval, g);
        write_grid_csv(out, g.name + ".csv", grid);
        if (g.vtk) write_grid_vtk(out, g.name + ".vtk", grid);
        for (size_t pi = 0; pi < g.snapshot_phases.size(); ++pi)
            write_snapshot_csv(out, g.name + "_snapshot" + std::to_string(pi) + ".csv", grid,
                               g.snapshot_phases[pi]);
    }

    for (const auto& r : outputs.radars) {
        const auto pattern = far_field_pattern(eval, r);
        auto os = out.open(r.name + ".csv");
        os << "theta_rad,abs_p_sc\n";
        for (size_t i = 0; i < pattern.angles.size(); ++i)
            os << fmt17(pattern.angles[i]) << ',' << fmt17(pattern.magnitude[i]) << '\n';
    }

    for (const auto& f : outputs.focal_scans) {
        const auto scan = focal_line_scan(eval, f);
        auto os = out.open(f.name + ".csv");
        os << "x,y,z,re_p,im_p,abs_p_normalized,masked\n";
        for (const auto& s : scan.samples) {
            const double a = s.masked ? 0.0 : std::abs(s.pressure) / scan.normalization;
            os << fmt17(s.position.x) << ',' << fmt17(s.position.y) << ',' << fmt17(s.position.z)
               << ',' << fmt17(s.masked ? 0.0 : s.pressure.real()) << ','
               << fmt17(s.masked ? 0.0 : s.pressure.imag()) << ',' << fmt17(a) << ','
               << (s.masked ? 1 : 0) << '\n';
        }
        const auto metrics = focal_metrics(scan);
        auto ms = out.open(f.name + "_metrics.csv");
        ms << "max_abs_p_normalized,pos_x,pos_y,pos_z\n";
        ms << fmt17(metrics.max_pressure) << ',' << fmt17(metrics.position.x) << ','
           << fmt17(metrics.position.y) << ',' << fmt17(metrics.position.z) << '\n';
    }
}

void write_report(OutputWriter& out, const RunReport& report) {
    auto os = out.open("report.txt");
    os << report.to_text();
}

}  // namespace

std::string RunReport::to_text() const {
    std::ostringstream os;
    os << "scenario: " << scenario_name << "\n"
       << "unknowns: " << unknowns << "\n"
       << "assembly_seconds: " << assembly_seconds << "\n"
       << "solve_seconds: " << solve_seconds << "\n"
       << "residual: " << residual << "\n";
    os << "files:";
    for (const auto& f : files) os << ' ' << f;
    os << "\n";
    for (const auto& w : warnings) os << "warning: " << w << "\n";
    if (!errors.empty()) {
        os << "errors:\n";
        for (const auto& e : errors) os << "  " << e << "\n";
    }
    return os.str();
}

RunReport run_scenario(const Scenario& scenario, const std::string& out_dir) {
    RunReport report;
    report.scenario_name = scenario.name;
    OutputWriter out(out_dir, report);
    try {
        const auto built = build_scenario(scenario);
        SolveReport solve_report;
        SolutionField field;
        if (built.total_unknowns > 0) {
            field = solve_scenario(built, &solve_report);
        } else {
            field.phi.resize(built.surfaces.size());
            field.dphidn.resize(built.surfaces.size());
        }
        report.unknowns = solve_report.dimension;
        report.assembly_seconds = solve_report.assembly_seconds;
        report.solve_seconds = solve_report.solve_seconds;
        report.residual = solve_report.residual;
        report.warnings = solve_report.warnings;

        const FieldEvaluator eval(built, field);
        emit_outputs(built, eval, out);
    } catch (const Error& e) {
        report.errors.push_back(e.what());
    }
    write_report(out, report);
    return report;
}

CoreShellConfig derive_core_shell_config(const Scenario& scenario) {
    if (scenario.surfaces.size() != 2)
        throw ValidationError("oracle validation needs exactly two surfaces (shell and core)");
    for (const auto& s : scenario.surfaces) {
        if (s.kind != BoundaryKind::interface)
            throw ValidationError("oracle validation: surfaces must be fluid-fluid interfaces");
        if (s.geometry.kind != ParametricSurfaceSpec::Kind::sphere)
            throw ValidationError("oracle validation: surfaces must be spheres");
        if (norm(s.geometry.center) > 1e-12)
            throw ValidationError("oracle validation: spheres must be centered at the origin");
    }
    const bool first_is_shell = scenario.surfaces[0].geometry.radius > scenario.surfaces[1].geometry.radius;
    const auto& shell = scenario.surfaces[first_is_shell ? 0 : 1];
    const auto& core = scenario.surfaces[first_is_shell ? 1 : 0];
    if (!(core.geometry.radius < shell.geometry.radius))
        throw ValidationError("oracle validation: need two concentric spheres of distinct radii");
    if (shell.outer_domain.empty() || shell.inner_domain != core.outer_domain)
        throw ValidationError("oracle validation: surfaces must chain external/shell/core domains");

    const int ext = scenario.domain_index(shell.outer_domain);
    const int mid = scenario.domain_index(shell.inner_domain);
    const int inner = scenario.domain_index(core.inner_domain);
    if (!scenario.domains[static_cast<size_t>(ext)].unbounded)
        throw ValidationError("oracle validation: the outer domain must be unbounded");

    CoreShellConfig cfg;
    cfg.a_shell = shell.geometry.radius;
    cfg.a_core = core.geometry.radius;
    cfg.k0 = scenario.wavenumber(ext);
    cfg.k1 = scenario.wavenumber(mid);
    cfg.k2 = scenario.wavenumber(inner);
    cfg.rho0 = scenario.density(ext);
    cfg.rho1 = scenario.density(mid);
    cfg.rho2 = scenario.density(inner);
    for (const auto& src : scenario.sources) {
        if (std::abs(src.position.x) > 1e-12 || std::abs(src.position.y) > 1e-12 ||
            src.position.z < 0.0)
            throw ValidationError("oracle validation: sources must sit on the +z axis");
        CoreShellRegion region;
        const int d = scenario.domain_index(src.domain);
        if (d == ext) region = CoreShellRegion::external;
        else if (d == mid) region = CoreShellRegion::shell;
        else if (d == inner) region = CoreShellRegion::core;
        else throw ValidationError("oracle validation: source in an unexpected domain");
        cfg.sources.push_back({region, src.position.z, src.strength});
    }
    cfg.validate();
    return cfg;
}

OracleComparison validate_scenario(const Scenario& scenario, const std::string& out_dir,
                                   RunReport* report_out) {
    RunReport report;
    report.scenario_name = scenario.name;
    OutputWriter out(out_dir, report);

    const CoreShellConfig cfg = derive_core_shell_config(scenario);
    const int n_terms = recommended_terms(cfg);
    const auto coeffs = solve_modal_coefficients(cfg, n_terms);

    std::vector<double> radii;
    int samples = 360;
    for (const auto& t : scenario.outputs.tracks) {
        radii.insert(radii.end(), t.radii.begin(), t.radii.end());
        samples = t.samples;
    }
    if (radii.empty()) {
        radii = {1.2 * cfg.a_shell, 0.8 * cfg.a_shell, 0.8 * cfg.a_core};
        samples = 72;
    }

    const auto built = build_scenario(scenario);
    SolveReport solve_report;
    const auto field = solve_scenario(built, &solve_report);
    report.unknowns = solve_report.dimension;
    report.assembly_seconds = solve_report.assembly_seconds;
    report.solve_seconds = solve_report.solve_seconds;
    report.residual = solve_report.residual;
    report.warnings = solve_report.warnings;
    const FieldEvaluator eval(built, field);

    OracleComparison cmp;
    cmp.oracle_terms = n_terms;
    std::vector<int> ids;
    std::vector<double> thetas;
    std::vector<Complex> bem, oracle;
    for (size_t ti = 0; ti < radii.size(); ++ti) {
        double max_abs = 0.0, max_err = 0.0, sum_sq = 0.0, sum_err_sq = 0.0;
        for (int i = 0; i < samples; ++i) {
            const double theta = 2.0 * pi * i / std::max(1, samples);
            const Vec3 x{radii[ti] * std::sin(theta), 0.0, radii[ti] * std::cos(theta)};
            const Complex got = eval.at(x).phi;
            const Complex want = eval_potential(cfg, coeffs, radii[ti], theta);
            ids.push_back(static_cast<int>(ti));
            thetas.push_back(theta);
            bem.push_back(got);
            oracle.push_back(want);
            max_abs = std::max(max_abs, std::abs(want));
            max_err = std::max(max_err, std::abs(got - want));
            sum_sq += std::norm(want);
            sum_err_sq += std::norm(got - want);
        }
        OracleComparison::TrackError te;
        te.radius = radii[ti];
        te.max_rel = (max_abs > 0.0) ? max_err / max_abs : max_err;
        te.rms_rel = (sum_sq > 0.0) ? std::sqrt(sum_err_sq / sum_sq) : std::sqrt(sum_err_sq);
        cmp.tracks.push_back(te);
    }

    // Probe point: r = 1.2 a_shell on the +x axis. A zero-field case (all
    // sources silent) reports an exact match instead of 0/0.
    {
        const double r = 1.2 * cfg.a_shell;
        const Complex got = eval.at(Vec3{r, 0.0, 0.0}).phi;
        const Complex want = eval_potential(cfg, coeffs, r, pi / 2.0);
        const double denom = std::abs(want);
        cmp.probe_rel = (denom > 0.0) ? std::abs(got - want) / denom : std::abs(got - want);
    }

    write_track_csv(out.open("tracks_bem.csv"), ids, thetas, bem);
    write_track_csv(out.open("tracks_oracle.csv"), ids, thetas, oracle);
    {
        auto os = out.open("errors.csv");
        os << "track_id,radius,max_rel_error,rms_rel_error\n";
        for (size_t ti = 0; ti < cmp.tracks.size(); ++ti)
            os << ti << ',' << fmt17(cmp.tracks[ti].radius) << ',' << fmt17(cmp.tracks[ti].max_rel)
               << ',' << fmt17(cmp.tracks[ti].rms_rel) << '\n';
        os << "probe," << fmt17(1.2 * cfg.a_shell) << ',' << fmt17(cmp.probe_rel) << ','
           << fmt17(cmp.probe_rel) << '\n';
    }
    write_report(out, report);
    if (report_out) *report_out = report;
    return cmp;
}

std::vector<ConvergenceRow> convergence_study(const Scenario& scenario,
                                              const std::vector<int>& levels,
                                              const std::string& out_dir, RunReport* report_out) {
    RunReport report;
    report.scenario_name = scenario.name;
    OutputWriter out(out_dir, report);

    const CoreShellConfig cfg = derive_core_shell_config(scenario);
    const int n_terms = recommended_terms(cfg);
    const auto coeffs = solve_modal_coefficients(cfg, n_terms);

    std::vector<ConvergenceRow> rows;
    for (int level : levels) {
        const auto t0 = std::chrono::steady_clock::now();
        Scenario refined = scenario;
        for (auto& s : refined.surfaces) {
            s.subdivision_level = level;
            s.geometry.frequency.reset();
        }
        const auto built = build_scenario(refined);
        const auto field = solve_scenario(built);
        const FieldEvaluator eval(built, field);
        const double r = 1.2 * cfg.a_shell;
        const Complex got = eval.at(Vec3{r, 0.0, 0.0}).phi;
        const Complex want = eval_potential(cfg, coeffs, r, pi / 2.0);
        const auto t1 = std::chrono::steady_clock::now();

        ConvergenceRow row;
        row.level = level;
        row.nodes = 0;
        for (const auto& bs : built.surfaces) row.nodes += bs.mesh.node_count();
        row.max_rel_error = std::abs(got - want) / std::abs(want);
        row.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
        rows.push_back(row);
    }
    for (size_t i = 1; i < rows.size(); ++i) {
        if (!(rows[i].max_rel_error < rows[i - 1].max_rel_error))
            report.errors.push_back("convergence is not monotone between levels " +
                                    std::to_string(rows[i - 1].level) + " and " +
                                    std::to_string(rows[i].level));
    }
    {
        auto os = out.open("convergence.csv");
        os << "nodes,max_rel_error,wall_seconds\n";
        for (const auto& row : rows)
            os << row.nodes << ',' << fmt17(row.max_rel_error) << ',' << fmt17(row.wall_seconds)
               << '\n';
    }
    write_report(out, report);
    if (report_out) *report_out = report;
    return rows;
}

std::vector<MeshCheckEntry> mesh_check(const Scenario& scenario) {
    scenario.validate_structure();
    std::vector<MeshCheckEntry> entries;
    for (const auto& spec : scenario.surfaces) {
        auto geometry = spec.geometry;
        const auto mesh = geometry.frequency
                              ? build_geodesic_mesh(geometry, *geometry.frequency)
                              : build_geodesic_mesh(geometry, 1 << spec.subdivision_level);
        MeshCheckEntry e;
        e.surface_id = spec.id;
        e.nodes = mesh.node_count();
        e.elements = mesh.element_count();
        e.report = mesh_integrity_check(mesh);
        entries.push_back(std::move(e));
    }
    return entries;
}

}  // namespace nsbem
