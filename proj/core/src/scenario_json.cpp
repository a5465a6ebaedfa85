// SPDX-FileCopyrightText: Copyright (c) 2026 The nsbem Authors
// SPDX-License-Identifier: Apache-2.0

#include "nsbem/scenario_json.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace nsbem {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ValidationError("scenario " + where + ": " + what);
}

double get_number(const json& j, const std::string& where) {
    if (!j.is_number()) fail(where, "expected a number");
    return j.get<double>();
}

int get_int(const json& j, const std::string& where) {
    if (!j.is_number_integer()) fail(where, "expected an integer");
    return j.get<int>();
}

bool get_bool(const json& j, const std::string& where) {
    if (!j.is_boolean()) fail(where, "expected true or false");
    return j.get<bool>();
}

std::string get_string(const json& j, const std::string& where) {
    if (!j.is_string()) fail(where, "expected a string");
    return j.get<std::string>();
}

Complex get_complex(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        fail(where, "complex values are two-element [re, im] arrays");
    return {j[0].get<double>(), j[1].get<double>()};
}

Vec3 get_vec3(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 3) fail(where, "expected a 3-element [x, y, z] array");
    return {get_number(j[0], where), get_number(j[1], where), get_number(j[2], where)};
}

const json* find(const json& j, const char* key) {
    const auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

void check_keys(const json& j, const std::string& where,
                std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) ok = true;
        if (!ok) fail(where, "unknown field '" + key + "'");
    }
}

SurfaceSpec parse_surface(const json& j, const std::string& where) {
    check_keys(j, where,
               {"id", "kind", "radius", "center", "subdivision_level", "frequency",
                "inner_domain", "outer_domain", "bc", "domain", "domain_inside"});
    SurfaceSpec s;
    if (const json* v = find(j, "id")) s.id = get_string(*v, where + ".id");
    else fail(where, "missing 'id'");

    const std::string kind = find(j, "kind") ? get_string(*find(j, "kind"), where + ".kind")
                                             : std::string("sphere");
    if (kind == "sphere") s.geometry.kind = ParametricSurfaceSpec::Kind::sphere;
    else if (kind == "bowl") s.geometry.kind = ParametricSurfaceSpec::Kind::bowl;
    else fail(where + ".kind", "expected 'sphere' or 'bowl'");

    if (const json* v = find(j, "radius")) s.geometry.radius = get_number(*v, where + ".radius");
    if (const json* v = find(j, "center")) s.geometry.center = get_vec3(*v, where + ".center");
    if (const json* v = find(j, "subdivision_level"))
        s.subdivision_level = get_int(*v, where + ".subdivision_level");
    if (const json* v = find(j, "frequency"))
        s.geometry.frequency = get_int(*v, where + ".frequency");

    const json* bc = find(j, "bc");
    if (bc) {
        const std::string tag = get_string(*bc, where + ".bc");
        if (tag == "rigid") s.kind = BoundaryKind::rigid;
        else if (tag == "pressure_release") s.kind = BoundaryKind::pressure_release;
        else fail(where + ".bc", "expected 'rigid' or 'pressure_release'");
        if (const json* v = find(j, "domain")) s.bc_domain = get_string(*v, where + ".domain");
        else fail(where, "bc surface needs 'domain'");
        if (const json* v = find(j, "domain_inside"))
            s.domain_inside = get_bool(*v, where + ".domain_inside");
        if (find(j, "inner_domain") || find(j, "outer_domain"))
            fail(where, "bc surface must not carry interface domains");
    } else {
        s.kind = BoundaryKind::interface;
        if (const json* v = find(j, "inner_domain"))
            s.inner_domain = get_string(*v, where + ".inner_domain");
        else fail(where, "interface surface needs 'inner_domain'");
        if (const json* v = find(j, "outer_domain"))
            s.outer_domain = get_string(*v, where + ".outer_domain");
        else fail(where, "interface surface needs 'outer_domain'");
    }
    return s;
}

void parse_outputs(const json& j, Scenario& s) {
    check_keys(j, "[outputs]", {"tracks", "grids", "radar", "focal_scans", "export_meshes"});
    if (const json* v = find(j, "export_meshes"))
        s.outputs.export_meshes = get_bool(*v, "[outputs].export_meshes");
    if (const json* arr = find(j, "tracks")) {
        for (size_t i = 0; i < arr->size(); ++i) {
            const std::string where = "[outputs].tracks[" + std::to_string(i) + "]";
            const json& t = (*arr)[i];
            check_keys(t, where, {"name", "radii", "samples"});
            TrackOutput out;
            if (const json* v = find(t, "name")) out.name = get_string(*v, where + ".name");
            if (const json* v = find(t, "radii")) {
                for (const auto& r : *v) out.radii.push_back(get_number(r, where + ".radii"));
            } else {
                fail(where, "missing 'radii'");
            }
            if (const json* v = find(t, "samples")) out.samples = get_int(*v, where + ".samples");
            s.outputs.tracks.push_back(std::move(out));
        }
    }
    if (const json* arr = find(j, "grids")) {
        for (size_t i = 0; i < arr->size(); ++i) {
            const std::string where = "[outputs].grids[" + std::to_string(i) + "]";
            const json& g = (*arr)[i];
            check_keys(g, where,
                       {"name", "plane", "center", "half_u", "half_v", "nu", "nv",
                        "normalization", "vtk", "snapshot_phases"});
            GridOutput out;
            if (const json* v = find(g, "name")) out.name = get_string(*v, where + ".name");
            if (const json* v = find(g, "plane")) out.plane = get_string(*v, where + ".plane");
            if (const json* v = find(g, "center")) out.center = get_vec3(*v, where + ".center");
            if (const json* v = find(g, "half_u")) out.half_u = get_number(*v, where + ".half_u");
            if (const json* v = find(g, "half_v")) out.half_v = get_number(*v, where + ".half_v");
            if (const json* v = find(g, "nu")) out.nu = get_int(*v, where + ".nu");
            if (const json* v = find(g, "nv")) out.nv = get_int(*v, where + ".nv");
            if (const json* v = find(g, "normalization"))
                out.normalization = get_string(*v, where + ".normalization");
            if (const json* v = find(g, "vtk")) out.vtk = get_bool(*v, where + ".vtk");
            if (const json* v = find(g, "snapshot_phases"))
                for (const auto& p : *v)
                    out.snapshot_phases.push_back(get_number(p, where + ".snapshot_phases"));
            if (out.normalization != "monopole_reference" && out.normalization != "none")
                fail(where + ".normalization", "expected 'monopole_reference' or 'none'");
            s.outputs.grids.push_back(std::move(out));
        }
    }
    if (const json* arr = find(j, "radar")) {
        for (size_t i = 0; i < arr->size(); ++i) {
            const std::string where = "[outputs].radar[" + std::to_string(i) + "]";
            const json& r = (*arr)[i];
            check_keys(r, where, {"name", "radius", "n_angles", "plane", "subtract_incident"});
            RadarOutput out;
            if (const json* v = find(r, "name")) out.name = get_string(*v, where + ".name");
            if (const json* v = find(r, "radius")) out.radius = get_number(*v, where + ".radius");
            if (const json* v = find(r, "n_angles")) out.n_angles = get_int(*v, where + ".n_angles");
            if (const json* v = find(r, "plane")) out.plane = get_string(*v, where + ".plane");
            if (const json* v = find(r, "subtract_incident"))
                out.subtract_incident = get_bool(*v, where + ".subtract_incident");
            s.outputs.radars.push_back(std::move(out));
        }
    }
    if (const json* arr = find(j, "focal_scans")) {
        for (size_t i = 0; i < arr->size(); ++i) {
            const std::string where = "[outputs].focal_scans[" + std::to_string(i) + "]";
            const json& f = (*arr)[i];
            check_keys(f, where, {"name", "start", "end", "samples", "normalization"});
            FocalScanOutput out;
            if (const json* v = find(f, "name")) out.name = get_string(*v, where + ".name");
            if (const json* v = find(f, "start")) out.start = get_vec3(*v, where + ".start");
            if (const json* v = find(f, "end")) out.end = get_vec3(*v, where + ".end");
            if (const json* v = find(f, "samples")) out.samples = get_int(*v, where + ".samples");
            if (const json* v = find(f, "normalization"))
                out.normalization = get_string(*v, where + ".normalization");
            s.outputs.focal_scans.push_back(std::move(out));
        }
    }
}

}  // namespace

Scenario scenario_from_json(const std::string& text, const std::string& origin) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(origin + ": JSON syntax error at byte " + std::to_string(e.byte) +
                              ": " + e.what());
    }
    if (!root.is_object()) throw ValidationError(origin + ": top level must be an object");
    check_keys(root, "top level",
               {"name", "reference", "media", "surfaces", "sources", "numerics", "outputs"});

    Scenario s;
    if (const json* v = find(root, "name")) s.name = get_string(*v, "name");

    if (const json* ref = find(root, "reference")) {
        check_keys(*ref, "[reference]", {"k_ref", "omega", "rho_ref", "length_unit"});
        if (const json* v = find(*ref, "k_ref")) s.k_ref = get_number(*v, "[reference].k_ref");
        if (const json* v = find(*ref, "omega")) s.omega = get_number(*v, "[reference].omega");
        if (const json* v = find(*ref, "rho_ref")) s.rho_ref = get_number(*v, "[reference].rho_ref");
    }

    const json* media = find(root, "media");
    if (!media || !media->is_array()) throw ValidationError(origin + ": missing [media] array");
    for (size_t i = 0; i < media->size(); ++i) {
        const std::string where = "[media][" + std::to_string(i) + "]";
        const json& m = (*media)[i];
        check_keys(m, where, {"id", "k", "rho", "unbounded"});
        DomainSpec d;
        if (const json* v = find(m, "id")) d.id = get_string(*v, where + ".id");
        else fail(where, "missing 'id'");
        if (const json* v = find(m, "k")) d.k_rel = get_complex(*v, where + ".k");
        if (const json* v = find(m, "rho")) d.rho_rel = get_number(*v, where + ".rho");
        if (const json* v = find(m, "unbounded")) d.unbounded = get_bool(*v, where + ".unbounded");
        s.domains.push_back(std::move(d));
    }

    if (const json* surfaces = find(root, "surfaces")) {
        if (!surfaces->is_array()) throw ValidationError(origin + ": [surfaces] must be an array");
        for (size_t i = 0; i < surfaces->size(); ++i)
            s.surfaces.push_back(
                parse_surface((*surfaces)[i], "[surfaces][" + std::to_string(i) + "]"));
    }

    if (const json* sources = find(root, "sources")) {
        for (size_t i = 0; i < sources->size(); ++i) {
            const std::string where = "[sources][" + std::to_string(i) + "]";
            const json& src = (*sources)[i];
            check_keys(src, where, {"domain", "position", "q"});
            SourceSpec out;
            if (const json* v = find(src, "domain")) out.domain = get_string(*v, where + ".domain");
            else fail(where, "missing 'domain'");
            if (const json* v = find(src, "position"))
                out.position = get_vec3(*v, where + ".position");
            else fail(where, "missing 'position'");
            if (const json* v = find(src, "q")) out.strength = get_complex(*v, where + ".q");
            s.sources.push_back(std::move(out));
        }
    }

    if (const json* num = find(root, "numerics")) {
        check_keys(*num, "[numerics]",
                   {"quad_degree", "quad_degree_near", "near_surface_threshold",
                    "max_composite_depth", "base_refine_depth"});
        if (const json* v = find(*num, "quad_degree"))
            s.numerics.quad_degree = get_int(*v, "[numerics].quad_degree");
        if (const json* v = find(*num, "quad_degree_near"))
            s.numerics.quad_degree_near = get_int(*v, "[numerics].quad_degree_near");
        if (const json* v = find(*num, "near_surface_threshold"))
            s.numerics.near_surface_threshold = get_number(*v, "[numerics].near_surface_threshold");
        if (const json* v = find(*num, "max_composite_depth"))
            s.numerics.max_composite_depth = get_int(*v, "[numerics].max_composite_depth");
        if (const json* v = find(*num, "base_refine_depth"))
            s.numerics.base_refine_depth = get_int(*v, "[numerics].base_refine_depth");
    }

    if (const json* outputs = find(root, "outputs")) parse_outputs(*outputs, s);

    s.validate_structure();
    return s;
}

Scenario scenario_from_json_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ValidationError("cannot open scenario file: " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return scenario_from_json(ss.str(), path);
}

}  // namespace nsbem
