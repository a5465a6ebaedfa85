// SPDX-FileCopyrightText: Copyright (c) 2026 The nsbem Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "nsbem/runner.hpp"
#include "nsbem/scenario_json.hpp"

using namespace nsbem;
namespace fs = std::filesystem;

#ifndef NSBEM_SCENARIO_DIR
#define NSBEM_SCENARIO_DIR "scenarios"
#endif

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream is(p);
    REQUIRE(is.good());
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("bundled core-shell scenario parses to the paper parameters") {
    const auto s = scenario_from_json_file(std::string(NSBEM_SCENARIO_DIR) +
                                           "/core_shell_validation.json");
    CHECK(s.name == "core_shell_validation");
    REQUIRE(s.domains.size() == 3);
    CHECK(s.domains[0].unbounded);
    CHECK(s.domains[1].k_rel == Complex(1.5, 0.0));
    CHECK(s.domains[2].k_rel == Complex(0.8, 0.6));
    CHECK(s.domains[1].rho_rel == 5.0);
    CHECK(s.domains[2].rho_rel == 2.0);
    REQUIRE(s.surfaces.size() == 2);
    CHECK(s.surfaces[0].geometry.radius == 2.0);
    REQUIRE(s.sources.size() == 3);
    CHECK(s.sources[0].strength == Complex(0.8, 0.6));
    REQUIRE(s.outputs.tracks.size() == 1);
    CHECK(s.outputs.tracks[0].radii == std::vector<double>{2.4, 1.6, 0.8});
}

TEST_CASE("every bundled scenario parses and passes structural validation") {
    int count = 0;
    for (const auto& entry : fs::directory_iterator(NSBEM_SCENARIO_DIR)) {
        if (entry.path().extension() != ".json") continue;
        CAPTURE(entry.path().string());
        CHECK_NOTHROW(scenario_from_json_file(entry.path().string()));
        ++count;
    }
    CHECK(count >= 10);
}

TEST_CASE("diagnostics carry the field path") {
    CHECK_THROWS_WITH_AS(
        scenario_from_json(R"({"media": [{"id": "a", "k": 3.0}]})", "t"),
        doctest::Contains("[media][0].k"), ValidationError);
    CHECK_THROWS_WITH_AS(
        scenario_from_json(R"({"media": [], "surfises": []})", "t"),
        doctest::Contains("surfises"), ValidationError);
    CHECK_THROWS_WITH_AS(scenario_from_json("{\"media\": [", "t"),
                         doctest::Contains("byte"), ValidationError);
    CHECK_THROWS_WITH_AS(
        scenario_from_json(
            R"({"media": [{"id": "a"}],
                "surfaces": [{"id": "s", "bc": "rigid", "domain": "a", "inner_domain": "a"}]})",
            "t"),
        doctest::Contains("[surfaces][0]"), ValidationError);
}

TEST_CASE("free-field run: exit-clean report, manifest matches directory") {
    const auto s = scenario_from_json_file(std::string(NSBEM_SCENARIO_DIR) + "/free_field.json");
    const fs::path dir = fs::temp_directory_path() / "nsbem_run_manifest";
    fs::remove_all(dir);
    const auto report = run_scenario(s, dir.string());
    CHECK(report.ok());
    CHECK(report.unknowns == 0);

    std::set<std::string> on_disk;
    for (const auto& entry : fs::directory_iterator(dir))
        on_disk.insert(entry.path().filename().string());
    std::set<std::string> manifest(report.files.begin(), report.files.end());
    manifest.insert("report.txt");
    CHECK(on_disk == manifest);

    // grid has all four corners evaluated (no surfaces, nothing masked)
    const auto csv = slurp(dir / "slice.csv");
    CHECK(csv.find("x,y,z,re_p,im_p,abs_p_normalized,masked") == 0);
}

TEST_CASE("reruns are byte-identical") {
    const auto s = scenario_from_json_file(std::string(NSBEM_SCENARIO_DIR) + "/free_field.json");
    const fs::path d1 = fs::temp_directory_path() / "nsbem_det_1";
    const fs::path d2 = fs::temp_directory_path() / "nsbem_det_2";
    fs::remove_all(d1);
    fs::remove_all(d2);
    const auto r1 = run_scenario(s, d1.string());
    const auto r2 = run_scenario(s, d2.string());
    REQUIRE(r1.ok());
    REQUIRE(r2.ok());
    CHECK(slurp(d1 / "slice.csv") == slurp(d2 / "slice.csv"));
}

TEST_CASE("oracle-incompatible scenario is rejected by validate") {
    const auto s = scenario_from_json_file(std::string(NSBEM_SCENARIO_DIR) + "/bowl_ka5.json");
    CHECK_THROWS_AS(derive_core_shell_config(s), ValidationError);
}

TEST_CASE("convergence with an empty level list writes a header-only CSV") {
    auto s = scenario_from_json_file(std::string(NSBEM_SCENARIO_DIR) +
                                     "/core_shell_validation.json");
    const fs::path dir = fs::temp_directory_path() / "nsbem_conv_empty";
    fs::remove_all(dir);
    RunReport report;
    const auto rows = convergence_study(s, {}, dir.string(), &report);
    CHECK(rows.empty());
    CHECK(report.ok());
    CHECK(slurp(dir / "convergence.csv") == "nodes,max_rel_error,wall_seconds\n");
}

TEST_CASE("zero-source validate reports an exact match, not 0/0") {
    auto s = scenario_from_json_file(std::string(NSBEM_SCENARIO_DIR) +
                                     "/core_shell_validation.json");
    for (auto& src : s.sources) src.strength = Complex{};
    for (auto& surf : s.surfaces) surf.subdivision_level = 1;
    const fs::path dir = fs::temp_directory_path() / "nsbem_zero_validate";
    fs::remove_all(dir);
    RunReport report;
    const auto cmp = validate_scenario(s, dir.string(), &report);
    CHECK(report.ok());
    CHECK(cmp.probe_rel == 0.0);
    for (const auto& t : cmp.tracks) {
        CHECK(t.max_rel == 0.0);
        CHECK(t.rms_rel == 0.0);
    }
}

TEST_CASE("vtk grid export") {
    auto s = scenario_from_json_file(std::string(NSBEM_SCENARIO_DIR) + "/free_field.json");
    REQUIRE(!s.outputs.grids.empty());
    s.outputs.grids[0].vtk = true;
    const fs::path dir = fs::temp_directory_path() / "nsbem_vtk";
    fs::remove_all(dir);
    const auto report = run_scenario(s, dir.string());
    CHECK(report.ok());
    const auto vtk = slurp(dir / "slice.vtk");
    CHECK(vtk.rfind("# vtk DataFile Version 3.0", 0) == 0);
    CHECK(vtk.find("DIMENSIONS 21 21 1") != std::string::npos);
}

TEST_CASE("mesh-check reports the bundled mesh sizes") {
    const auto s = scenario_from_json_file(std::string(NSBEM_SCENARIO_DIR) + "/lens_drop.json");
    const auto entries = mesh_check(s);
    REQUIRE(entries.size() == 1);
    CHECK(entries[0].nodes == 1442);
    CHECK(entries[0].elements == 720);
    CHECK(entries[0].report.ok());
}
