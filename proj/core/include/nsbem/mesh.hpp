// SPDX-FileCopyrightText: Copyright (c) 2026 The nsbem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nsbem/quadrature.hpp"
#include "nsbem/types.hpp"

namespace nsbem {

// Closed surface of curved 6-node triangles.
//
// Element node ordering: corners 0,1,2 counterclockwise seen from outside,
// mid-edge node 3+i between corners i and (i+1)%3. Normals (cross product of
// the reference tangents) point from the enclosed region outward.
struct QuadraticTriangleMesh {
    std::vector<Vec3> nodes;
    std::vector<std::array<int, 6>> elements;
    std::string surface_id;

    int node_count() const { return static_cast<int>(nodes.size()); }
    int element_count() const { return static_cast<int>(elements.size()); }
};

struct ParametricSurfaceSpec {
    enum class Kind { sphere, bowl };
    Kind kind = Kind::sphere;
    double radius = 1.0;  // sphere radius; bowl horizontal scale a
    Vec3 center{};
    // Geodesic subdivision frequency n (20 n^2 elements). When set it
    // overrides the power-of-two frequency implied by a subdivision level.
    std::optional<int> frequency;
};

// Icosahedron-based geodesic sphere: 20*4^level elements, 2*elements + 2
// nodes, all nodes exactly on the sphere.
QuadraticTriangleMesh build_sphere_mesh(double radius, const Vec3& center, int subdivision_level);

// Sphere-topology mesh with every node mapped through the parametric formula.
// Mid-edge nodes are the images of the geodesic edge midpoints of the unit
// sphere parameter domain, not chord midpoints.
QuadraticTriangleMesh build_parametric_mesh(const ParametricSurfaceSpec& spec,
                                            int subdivision_level);

// Core generator: frequency-n geodesic subdivision (20 n^2 elements).
QuadraticTriangleMesh build_geodesic_mesh(const ParametricSurfaceSpec& spec, int frequency);

// Quadratic shape functions and reference-coordinate derivatives at (xi, eta).
struct ShapeBasis {
    std::array<double, 6> n;
    std::array<double, 6> dxi;
    std::array<double, 6> deta;
};
ShapeBasis shape_basis(double xi, double eta);

struct SurfaceSample {
    Vec3 position;
    Vec3 normal;      // unit, outward
    double jacobian;  // area scale |d r/d xi x d r/d eta|
};
SurfaceSample shape_eval(const QuadraticTriangleMesh& mesh, int element, double xi, double eta);

// shape_eval plus the shape function values; what integration loops consume.
struct ElementSample {
    Vec3 position, normal;
    double jacobian;
    std::array<double, 6> shape;
};
ElementSample element_sample(const QuadraticTriangleMesh& mesh, int element, double xi,
                             double eta);

// Largest corner-to-corner distance of an element.
double element_diameter(const QuadraticTriangleMesh& mesh, int element);

// Composite Gauss integration of one element with recursive 4-way splits of
// any sub-triangle whose 3-D extent is large compared to its distance from
// x0. Emits (sample, weight) pairs; weight already carries the sub-triangle
// area fraction but not the jacobian. The integrand stays evaluated by plain
// Gauss points throughout; only point placement adapts.
void integrate_element_near(const QuadraticTriangleMesh& mesh, int element, const Vec3& x0,
                            const QuadratureRule& rule, int max_depth,
                            const std::function<void(const ElementSample&, double)>& emit);

struct MeshIntegrityReport {
    bool closed = false;                 // every corner edge shared by exactly 2 elements
    bool consistently_oriented = false;  // each directed corner edge used exactly once
    bool midedge_ok = false;             // mid nodes agree across shared edges
    bool outward = false;                // enclosed volume positive
    double total_area = 0.0;
    double enclosed_volume = 0.0;        // (1/3) surface integral of x . n
    std::vector<std::string> issues;

    bool ok() const { return closed && consistently_oriented && midedge_ok && outward; }
};

// Structured report; never throws on a bad mesh.
MeshIntegrityReport mesh_integrity_check(const QuadraticTriangleMesh& mesh,
                                         int quadrature_degree = 6);

// Plain-text mesh format: header line "<n_nodes> <n_elements>", node block
// "<index> <x> <y> <z>", element block "<index> <6 node indices>", final line
// "surface <surface_id>". Coordinates at 17 significant digits round-trip
// bit-exactly.
void write_mesh(std::ostream& os, const QuadraticTriangleMesh& mesh);
QuadraticTriangleMesh read_mesh(std::istream& is);
void save_mesh(const std::string& path, const QuadraticTriangleMesh& mesh);
QuadraticTriangleMesh load_mesh(const std::string& path);

}  // namespace nsbem
