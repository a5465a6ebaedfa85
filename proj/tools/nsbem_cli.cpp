// SPDX-FileCopyrightText: Copyright (c) 2026 The nsbem Authors
// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>
#include <cstdio>
#include <string>
#include <vector>

#include "nsbem/runner.hpp"
#include "nsbem/scenario_json.hpp"

namespace {

int report_outcome(const nsbem::RunReport& report) {
    std::fputs(report.to_text().c_str(), stdout);
    return report.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Helmholtz boundary element solver with analytic point sources"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_dir = ".";
    std::vector<int> levels;

    auto* run = app.add_subcommand("run", "solve a scenario and write its requested outputs");
    run->add_option("scenario", scenario_path, "scenario JSON file")->required();
    run->add_option("-o,--output", out_dir, "output directory");

    auto* validate = app.add_subcommand(
        "validate", "solve a concentric core-shell scenario and compare against the analytic series");
    validate->add_option("scenario", scenario_path, "scenario JSON file")->required();
    validate->add_option("-o,--output", out_dir, "output directory");

    auto* converge =
        app.add_subcommand("converge", "oracle-compared error at a sweep of subdivision levels");
    converge->add_option("scenario", scenario_path, "scenario JSON file")->required();
    converge->add_option("-o,--output", out_dir, "output directory");
    converge->add_option("--levels", levels, "subdivision levels (geodesic frequency 2^level)")
        ->required();

    auto* mesh_check_cmd =
        app.add_subcommand("mesh-check", "build the scenario meshes and print integrity reports");
    mesh_check_cmd->add_option("scenario", scenario_path, "scenario JSON file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        const auto scenario = nsbem::scenario_from_json_file(scenario_path);

        if (run->parsed()) {
            return report_outcome(nsbem::run_scenario(scenario, out_dir));
        }
        if (validate->parsed()) {
            nsbem::RunReport report;
            const auto cmp = nsbem::validate_scenario(scenario, out_dir, &report);
            std::fputs(report.to_text().c_str(), stdout);
            std::printf("oracle_terms: %d\n", cmp.oracle_terms);
            for (size_t i = 0; i < cmp.tracks.size(); ++i)
                std::printf("track %zu (r=%g): max_rel %.6e rms_rel %.6e\n", i,
                            cmp.tracks[i].radius, cmp.tracks[i].max_rel, cmp.tracks[i].rms_rel);
            std::printf("probe_rel: %.6e\n", cmp.probe_rel);
            return report.ok() ? 0 : 1;
        }
        if (converge->parsed()) {
            nsbem::RunReport report;
            const auto rows = nsbem::convergence_study(scenario, levels, out_dir, &report);
            std::fputs(report.to_text().c_str(), stdout);
            for (const auto& row : rows)
                std::printf("level %d: nodes %d error %.6e wall %.2fs\n", row.level, row.nodes,
                            row.max_rel_error, row.wall_seconds);
            return report.ok() ? 0 : 1;
        }
        if (mesh_check_cmd->parsed()) {
            bool ok = true;
            for (const auto& e : nsbem::mesh_check(scenario)) {
                std::printf("surface %s: %d nodes, %d elements, area %.12g, volume %.12g, %s\n",
                            e.surface_id.c_str(), e.nodes, e.elements, e.report.total_area,
                            e.report.enclosed_volume, e.report.ok() ? "OK" : "FAILED");
                for (const auto& issue : e.report.issues)
                    std::printf("  issue: %s\n", issue.c_str());
                ok = ok && e.report.ok();
            }
            return ok ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
