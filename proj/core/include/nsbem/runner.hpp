// SPDX-FileCopyrightText: Copyright (c) 2026 The nsbem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "nsbem/field_eval.hpp"
#include "nsbem/oracle.hpp"
#include "nsbem/scenario.hpp"

namespace nsbem {

struct RunReport {
    std::string scenario_name;
    int unknowns = 0;
    double assembly_seconds = 0.0;
    double solve_seconds = 0.0;
    double residual = 0.0;
    std::vector<std::string> files;     // exactly the files written
    std::vector<std::string> warnings;  // non-fatal diagnostics
    std::vector<std::string> errors;    // empty iff the run succeeded

    bool ok() const { return errors.empty(); }
    std::string to_text() const;
};

// Full pipeline: mesh build, assembly, solve, all requested outputs. Writes
// data files plus report.txt into out_dir.
RunReport run_scenario(const Scenario& scenario, const std::string& out_dir);

struct OracleComparison {
    struct TrackError {
        double radius = 0.0;
        double max_rel = 0.0;  // max |phi_bem - phi_oracle| / max |phi_oracle|
        double rms_rel = 0.0;
    };
    std::vector<TrackError> tracks;
    double probe_rel = 0.0;  // at r = 1.2 a_shell on the +x axis
    int oracle_terms = 0;
};

// Maps a concentric core-shell scenario onto the analytic solution; throws
// ValidationError when the scenario geometry is not oracle-compatible.
CoreShellConfig derive_core_shell_config(const Scenario& scenario);

// Runs solver and oracle on the scenario's tracks, writes both track tables
// and the error summary, returns the comparison.
OracleComparison validate_scenario(const Scenario& scenario, const std::string& out_dir,
                                   RunReport* report = nullptr);

struct ConvergenceRow {
    int level = 0;
    int nodes = 0;          // total collocation nodes over all surfaces
    double max_rel_error = 0.0;  // relative error at the validation probe
    double wall_seconds = 0.0;
};

// One validate run per subdivision level; writes convergence.csv.
std::vector<ConvergenceRow> convergence_study(const Scenario& scenario,
                                              const std::vector<int>& levels,
                                              const std::string& out_dir,
                                              RunReport* report = nullptr);

struct MeshCheckEntry {
    std::string surface_id;
    int nodes = 0, elements = 0;
    MeshIntegrityReport report;
};
std::vector<MeshCheckEntry> mesh_check(const Scenario& scenario);

}  // namespace nsbem
