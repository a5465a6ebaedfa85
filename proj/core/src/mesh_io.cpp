// SPDX-FileCopyrightText: Copyright (c) 2026 The nsbem Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "nsbem/mesh.hpp"

namespace nsbem {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void write_mesh(std::ostream& os, const QuadraticTriangleMesh& mesh) {
    os << mesh.node_count() << ' ' << mesh.element_count() << '\n';
    for (int i = 0; i < mesh.node_count(); ++i) {
        const Vec3& p = mesh.nodes[static_cast<size_t>(i)];
        os << i << ' ' << fmt17(p.x) << ' ' << fmt17(p.y) << ' ' << fmt17(p.z) << '\n';
    }
    for (int e = 0; e < mesh.element_count(); ++e) {
        os << e;
        for (int idx : mesh.elements[static_cast<size_t>(e)]) os << ' ' << idx;
        os << '\n';
    }
    os << "surface " << mesh.surface_id << '\n';
}

QuadraticTriangleMesh read_mesh(std::istream& is) {
    QuadraticTriangleMesh mesh;
    int nn = 0, ne = 0;
    if (!(is >> nn >> ne) || nn < 0 || ne < 0)
        throw ValidationError("mesh read: bad header line (expected node and element counts)");
    mesh.nodes.resize(static_cast<size_t>(nn));
    for (int i = 0; i < nn; ++i) {
        int idx;
        Vec3 p;
        if (!(is >> idx >> p.x >> p.y >> p.z) || idx != i)
            throw ValidationError("mesh read: bad node line " + std::to_string(i));
        mesh.nodes[static_cast<size_t>(i)] = p;
    }
    mesh.elements.resize(static_cast<size_t>(ne));
    for (int e = 0; e < ne; ++e) {
        int idx;
        if (!(is >> idx) || idx != e)
            throw ValidationError("mesh read: bad element line " + std::to_string(e));
        for (int k = 0; k < 6; ++k) {
            if (!(is >> mesh.elements[static_cast<size_t>(e)][static_cast<size_t>(k)]))
                throw ValidationError("mesh read: bad element line " + std::to_string(e));
        }
    }
    std::string tag;
    if (!(is >> tag) || tag != "surface")
        throw ValidationError("mesh read: missing surface id line");
    is >> mesh.surface_id;  // may be empty at EOF; that is a valid (empty) id
    return mesh;
}

void save_mesh(const std::string& path, const QuadraticTriangleMesh& mesh) {
    std::ofstream os(path);
    if (!os) throw ValidationError("cannot open mesh file for writing: " + path);
    write_mesh(os, mesh);
}

QuadraticTriangleMesh load_mesh(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ValidationError("cannot open mesh file: " + path);
    return read_mesh(is);
}

}  // namespace nsbem
