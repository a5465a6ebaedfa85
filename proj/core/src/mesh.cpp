// SPDX-FileCopyrightText: Copyright (c) 2026 The nsbem Authors
// SPDX-License-Identifier: Apache-2.0

#include "nsbem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

namespace nsbem {

namespace {

struct IcosahedronBase {
    std::vector<Vec3> vertices;                 // 12, unit length
    std::vector<std::array<int, 3>> faces;      // 20, CCW from outside
};

IcosahedronBase icosahedron() {
    const double t = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Vec3> v = {
        {-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0},
        {0, -1, t}, {0, 1, t}, {0, -1, -t}, {0, 1, -t},
        {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1},
    };
    for (auto& p : v) p = normalized(p);
    std::vector<std::array<int, 3>> f = {
        {0, 11, 5}, {0, 5, 1}, {0, 1, 7}, {0, 7, 10}, {0, 10, 11},
        {1, 5, 9}, {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
        {3, 9, 4}, {3, 4, 2}, {3, 2, 6}, {3, 6, 8}, {3, 8, 9},
        {4, 9, 5}, {2, 4, 11}, {6, 2, 10}, {8, 6, 7}, {9, 8, 1},
    };
    // Guarantee outward winding regardless of the face listing.
    for (auto& face : f) {
        const Vec3 c = (v[face[0]] + v[face[1]] + v[face[2]]) / 3.0;
        const Vec3 nrm = cross(v[face[1]] - v[face[0]], v[face[2]] - v[face[0]]);
        if (dot(nrm, c) < 0.0) std::swap(face[1], face[2]);
    }
    return {std::move(v), std::move(f)};
}

// Linear geodesic triangulation of the unit sphere at frequency n with exact
// topological dedup: lattice points on shared icosahedron edges are computed
// from one canonical expression so both adjacent faces produce bitwise
// identical coordinates.
struct LinearSphere {
    std::vector<Vec3> points;                  // unit pre-images
    std::vector<std::array<int, 3>> triangles;
};

LinearSphere subdivide_icosahedron(int n) {
    const IcosahedronBase base = icosahedron();
    LinearSphere out;
    out.points = base.vertices;

    std::map<std::tuple<int, int, int>, int> edge_points;  // (min, max, steps from min)
    const auto edge_point = [&](int a, int b, int t) {
        const int lo = std::min(a, b), hi = std::max(a, b);
        const int s = (a == lo) ? t : n - t;
        const auto key = std::make_tuple(lo, hi, s);
        const auto it = edge_points.find(key);
        if (it != edge_points.end()) return it->second;
        const Vec3 p = normalized(static_cast<double>(n - s) * base.vertices[lo] +
                                  static_cast<double>(s) * base.vertices[hi]);
        out.points.push_back(p);
        const int id = static_cast<int>(out.points.size()) - 1;
        edge_points.emplace(key, id);
        return id;
    };

    for (const auto& face : base.faces) {
        const int a = face[0], b = face[1], c = face[2];
        // lattice(i, j): i steps toward b, j steps toward c
        std::vector<int> lattice(static_cast<size_t>(n + 1) * (n + 1), -1);
        const auto at = [&](int i, int j) -> int& { return lattice[static_cast<size_t>(i) * (n + 1) + j]; };
        for (int i = 0; i <= n; ++i) {
            for (int j = 0; i + j <= n; ++j) {
                if (i == 0 && j == 0) { at(i, j) = a; continue; }
                if (i == n && j == 0) { at(i, j) = b; continue; }
                if (i == 0 && j == n) { at(i, j) = c; continue; }
                if (j == 0) { at(i, j) = edge_point(a, b, i); continue; }
                if (i == 0) { at(i, j) = edge_point(a, c, j); continue; }
                if (i + j == n) { at(i, j) = edge_point(b, c, j); continue; }
                out.points.push_back(normalized(static_cast<double>(n - i - j) * base.vertices[a] +
                                                static_cast<double>(i) * base.vertices[b] +
                                                static_cast<double>(j) * base.vertices[c]));
                at(i, j) = static_cast<int>(out.points.size()) - 1;
            }
        }
        for (int i = 0; i < n; ++i) {
            for (int j = 0; i + j < n; ++j) {
                out.triangles.push_back({at(i, j), at(i + 1, j), at(i, j + 1)});
                if (i + j < n - 1)
                    out.triangles.push_back({at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)});
            }
        }
    }
    return out;
}

Vec3 map_point(const ParametricSurfaceSpec& spec, const Vec3& u) {
    switch (spec.kind) {
        case ParametricSurfaceSpec::Kind::sphere:
            return spec.center + spec.radius * u;
        case ParametricSurfaceSpec::Kind::bowl: {
            const double ct = std::clamp(u.z, -1.0, 1.0);
            const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
            const double phi = std::atan2(u.y, u.x);
            const double a = spec.radius;
            return spec.center + Vec3{a * st * std::cos(phi), a * st * std::sin(phi),
                                      a * (0.1 * (ct - 1.0) + 0.3 * st * st)};
        }
    }
    throw DomainError("build_parametric_mesh: unknown surface kind");
}

void flip_orientation(QuadraticTriangleMesh& mesh) {
    for (auto& e : mesh.elements) {
        std::swap(e[1], e[2]);  // (c0,c1,c2,m01,m12,m20) -> (c0,c2,c1,m02,m21,m10)
        std::swap(e[3], e[5]);
    }
}

}  // namespace

QuadraticTriangleMesh build_geodesic_mesh(const ParametricSurfaceSpec& spec, int frequency) {
    if (frequency < 1) throw DomainError("build_geodesic_mesh: frequency must be >= 1");
    if (spec.radius <= 0.0) throw DomainError("build_geodesic_mesh: radius must be positive");

    const LinearSphere lin = subdivide_icosahedron(frequency);

    QuadraticTriangleMesh mesh;
    std::vector<Vec3> preimages = lin.points;  // corners first, then mid-edge nodes

    std::map<std::pair<int, int>, int> edge_mid;
    const auto mid_node = [&](int a, int b) {
        const auto key = std::minmax(a, b);
        const auto it = edge_mid.find(key);
        if (it != edge_mid.end()) return it->second;
        const Vec3 m = normalized((preimages[static_cast<size_t>(key.first)] +
                                   preimages[static_cast<size_t>(key.second)]) * 0.5);
        preimages.push_back(m);
        const int id = static_cast<int>(preimages.size()) - 1;
        edge_mid.emplace(key, id);
        return id;
    };

    mesh.elements.reserve(lin.triangles.size());
    for (const auto& t : lin.triangles) {
        mesh.elements.push_back({t[0], t[1], t[2],
                                 mid_node(t[0], t[1]), mid_node(t[1], t[2]), mid_node(t[2], t[0])});
    }

    mesh.nodes.resize(preimages.size());
    for (size_t i = 0; i < preimages.size(); ++i) mesh.nodes[i] = map_point(spec, preimages[i]);

    // Fix global orientation from the signed enclosed volume.
    double volume = 0.0;
    const auto& rule = quadrature_rule(4);
    for (int e = 0; e < mesh.element_count(); ++e) {
        for (size_t q = 0; q < rule.size(); ++q) {
            const auto s = shape_eval(mesh, e, rule.points[q].xi, rule.points[q].eta);
            volume += rule.weights[q] * s.jacobian * dot(s.position - spec.center, s.normal) / 3.0;
        }
    }
    if (volume < 0.0) flip_orientation(mesh);

    // Degenerate parametrization check away from the poles.
    double scale2 = spec.radius * spec.radius;
    for (int e = 0; e < mesh.element_count(); ++e) {
        for (size_t q = 0; q < rule.size(); ++q) {
            const auto s = shape_eval(mesh, e, rule.points[q].xi, rule.points[q].eta);
            if (!(s.jacobian > 1e-12 * scale2)) {
                throw ValidationError("build_parametric_mesh: degenerate element " +
                                      std::to_string(e) + " (zero jacobian)");
            }
        }
    }
    return mesh;
}

QuadraticTriangleMesh build_sphere_mesh(double radius, const Vec3& center, int subdivision_level) {
    if (subdivision_level < 0) throw DomainError("build_sphere_mesh: level must be >= 0");
    if (subdivision_level > 7) throw DomainError("build_sphere_mesh: level > 7 not supported");
    ParametricSurfaceSpec spec;
    spec.kind = ParametricSurfaceSpec::Kind::sphere;
    spec.radius = radius;
    spec.center = center;
    return build_geodesic_mesh(spec, 1 << subdivision_level);
}

QuadraticTriangleMesh build_parametric_mesh(const ParametricSurfaceSpec& spec,
                                            int subdivision_level) {
    if (spec.frequency) return build_geodesic_mesh(spec, *spec.frequency);
    if (subdivision_level < 0) throw DomainError("build_parametric_mesh: level must be >= 0");
    return build_geodesic_mesh(spec, 1 << subdivision_level);
}

ShapeBasis shape_basis(double xi, double eta) {
    const double l1 = 1.0 - xi - eta, l2 = xi, l3 = eta;
    ShapeBasis b;
    b.n = {l1 * (2.0 * l1 - 1.0), l2 * (2.0 * l2 - 1.0), l3 * (2.0 * l3 - 1.0),
           4.0 * l1 * l2, 4.0 * l2 * l3, 4.0 * l3 * l1};
    b.dxi = {1.0 - 4.0 * l1, 4.0 * l2 - 1.0, 0.0,
             4.0 * (l1 - l2), 4.0 * l3, -4.0 * l3};
    b.deta = {1.0 - 4.0 * l1, 0.0, 4.0 * l3 - 1.0,
              -4.0 * l2, 4.0 * l2, 4.0 * (l1 - l3)};
    return b;
}

ElementSample element_sample(const QuadraticTriangleMesh& mesh, int element, double xi,
                             double eta) {
    const ShapeBasis b = shape_basis(xi, eta);
    const auto& e = mesh.elements[static_cast<size_t>(element)];
    Vec3 pos{}, txi{}, teta{};
    for (int i = 0; i < 6; ++i) {
        const Vec3& p = mesh.nodes[static_cast<size_t>(e[static_cast<size_t>(i)])];
        pos += b.n[static_cast<size_t>(i)] * p;
        txi += b.dxi[static_cast<size_t>(i)] * p;
        teta += b.deta[static_cast<size_t>(i)] * p;
    }
    const Vec3 nr = cross(txi, teta);
    const double j = norm(nr);
    return {pos, nr / j, j, b.n};
}

SurfaceSample shape_eval(const QuadraticTriangleMesh& mesh, int element, double xi, double eta) {
    const auto s = element_sample(mesh, element, xi, eta);
    return {s.position, s.normal, s.jacobian};
}

namespace {

struct RefTriangle {
    double ax, ay, bx, by, cx, cy;
};

void integrate_recursive(const QuadraticTriangleMesh& mesh, int element, const Vec3& x0,
                         const QuadratureRule& rule, const RefTriangle& tri, double weight_scale,
                         int depth_left,
                         const std::function<void(const ElementSample&, double)>& emit) {
    const Vec3 pa = element_sample(mesh, element, tri.ax, tri.ay).position;
    const Vec3 pb = element_sample(mesh, element, tri.bx, tri.by).position;
    const Vec3 pc = element_sample(mesh, element, tri.cx, tri.cy).position;
    const double diam =
        std::max({norm(pa - pb), norm(pb - pc), norm(pc - pa)});
    const Vec3 centroid = (pa + pb + pc) / 3.0;
    if (depth_left <= 0 || norm(centroid - x0) > 1.2 * diam) {
        for (size_t q = 0; q < rule.size(); ++q) {
            const double xi = rule.points[q].xi, eta = rule.points[q].eta;
            const double rx = tri.ax + xi * (tri.bx - tri.ax) + eta * (tri.cx - tri.ax);
            const double ry = tri.ay + xi * (tri.by - tri.ay) + eta * (tri.cy - tri.ay);
            emit(element_sample(mesh, element, rx, ry), rule.weights[q] * weight_scale);
        }
        return;
    }
    const double mabx = 0.5 * (tri.ax + tri.bx), maby = 0.5 * (tri.ay + tri.by);
    const double mbcx = 0.5 * (tri.bx + tri.cx), mbcy = 0.5 * (tri.by + tri.cy);
    const double mcax = 0.5 * (tri.cx + tri.ax), mcay = 0.5 * (tri.cy + tri.ay);
    const RefTriangle children[4] = {
        {tri.ax, tri.ay, mabx, maby, mcax, mcay},
        {mabx, maby, tri.bx, tri.by, mbcx, mbcy},
        {mcax, mcay, mbcx, mbcy, tri.cx, tri.cy},
        {mabx, maby, mbcx, mbcy, mcax, mcay},
    };
    for (const auto& child : children)
        integrate_recursive(mesh, element, x0, rule, child, 0.25 * weight_scale, depth_left - 1,
                            emit);
}

}  // namespace

void integrate_element_near(const QuadraticTriangleMesh& mesh, int element, const Vec3& x0,
                            const QuadratureRule& rule, int max_depth,
                            const std::function<void(const ElementSample&, double)>& emit) {
    integrate_recursive(mesh, element, x0, rule, {0, 0, 1, 0, 0, 1}, 1.0, max_depth, emit);
}

double element_diameter(const QuadraticTriangleMesh& mesh, int element) {
    const auto& e = mesh.elements[static_cast<size_t>(element)];
    double d = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int k = i + 1; k < 3; ++k)
            d = std::max(d, norm(mesh.nodes[static_cast<size_t>(e[static_cast<size_t>(i)])] -
                                 mesh.nodes[static_cast<size_t>(e[static_cast<size_t>(k)])]));
    return d;
}

MeshIntegrityReport mesh_integrity_check(const QuadraticTriangleMesh& mesh,
                                         int quadrature_degree) {
    MeshIntegrityReport rep;
    const int nn = mesh.node_count();

    for (size_t e = 0; e < mesh.elements.size(); ++e) {
        for (int idx : mesh.elements[e]) {
            if (idx < 0 || idx >= nn) {
                rep.issues.push_back("element " + std::to_string(e) + ": node index out of range");
                return rep;
            }
        }
    }

    std::map<std::pair<int, int>, int> undirected, directed;
    std::map<std::pair<int, int>, int> edge_to_mid;
    bool mid_ok = true;
    for (size_t e = 0; e < mesh.elements.size(); ++e) {
        const auto& el = mesh.elements[e];
        for (int i = 0; i < 3; ++i) {
            const int a = el[static_cast<size_t>(i)], b = el[static_cast<size_t>((i + 1) % 3)];
            const int m = el[static_cast<size_t>(3 + i)];
            undirected[std::minmax(a, b)]++;
            directed[{a, b}]++;
            const auto key = std::minmax(a, b);
            const auto it = edge_to_mid.find(key);
            if (it == edge_to_mid.end()) {
                edge_to_mid.emplace(key, m);
            } else if (it->second != m) {
                mid_ok = false;
                rep.issues.push_back("edge (" + std::to_string(a) + "," + std::to_string(b) +
                                     ") has two different mid nodes");
            }
        }
    }

    rep.closed = true;
    for (const auto& [edge, count] : undirected) {
        if (count != 2) {
            rep.closed = false;
            rep.issues.push_back("edge (" + std::to_string(edge.first) + "," +
                                 std::to_string(edge.second) + ") shared by " +
                                 std::to_string(count) + " elements");
        }
    }
    rep.consistently_oriented = true;
    for (const auto& [edge, count] : directed) {
        if (count != 1) {
            rep.consistently_oriented = false;
            rep.issues.push_back("directed edge (" + std::to_string(edge.first) + "," +
                                 std::to_string(edge.second) + ") used " +
                                 std::to_string(count) + " times");
            break;
        }
    }
    rep.midedge_ok = mid_ok;

    const auto& rule = quadrature_rule(quadrature_degree);
    Vec3 flux{};
    for (int e = 0; e < mesh.element_count(); ++e) {
        for (size_t q = 0; q < rule.size(); ++q) {
            const auto s = shape_eval(mesh, e, rule.points[q].xi, rule.points[q].eta);
            const double wj = rule.weights[q] * s.jacobian;
            rep.total_area += wj;
            rep.enclosed_volume += wj * dot(s.position, s.normal) / 3.0;
            flux += wj * s.normal;
        }
    }
    rep.outward = rep.enclosed_volume > 0.0;
    if (!rep.outward) rep.issues.push_back("enclosed volume non-positive (inward orientation?)");
    if (norm(flux) > 1e-10 * rep.total_area)
        rep.issues.push_back("divergence identity violated: |sum n dS| = " +
                             std::to_string(norm(flux)));
    return rep;
}

}  // namespace nsbem
