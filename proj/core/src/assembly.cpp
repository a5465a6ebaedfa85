// SPDX-FileCopyrightText: Copyright (c) 2026 The nsbem Authors
// SPDX-License-Identifier: Apache-2.0

#include "nsbem/assembly.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "nsbem/kernel.hpp"

namespace nsbem {

namespace {

// 4-way reference-triangle split applied `depth` times to a base rule.
QuadratureRule refine_rule(const QuadratureRule& base, int depth) {
    QuadratureRule rule = base;
    for (int d = 0; d < depth; ++d) {
        QuadratureRule next;
        next.degree = rule.degree;
        struct Tri {
            double ax, ay, bx, by, cx, cy;
        };
        const Tri children[4] = {
            {0.0, 0.0, 0.5, 0.0, 0.0, 0.5},
            {0.5, 0.0, 1.0, 0.0, 0.5, 0.5},
            {0.0, 0.5, 0.5, 0.5, 0.0, 1.0},
            {0.5, 0.0, 0.5, 0.5, 0.0, 0.5},
        };
        for (const auto& t : children) {
            for (size_t q = 0; q < rule.size(); ++q) {
                const double xi = rule.points[q].xi, eta = rule.points[q].eta;
                next.points.push_back({t.ax + xi * (t.bx - t.ax) + eta * (t.cx - t.ax),
                                       t.ay + xi * (t.by - t.ay) + eta * (t.cy - t.ay)});
                next.weights.push_back(rule.weights[q] * 0.25);
            }
        }
        rule = std::move(next);
    }
    return rule;
}

BuiltSurface::QuadCache make_cache(const QuadraticTriangleMesh& mesh, const QuadratureRule& rule) {
    BuiltSurface::QuadCache cache;
    cache.points_per_element = static_cast<int>(rule.size());
    const size_t total = rule.size() * static_cast<size_t>(mesh.element_count());
    cache.position.resize(total);
    cache.normal.resize(total);
    cache.weight_jacobian.resize(total);
    cache.shape.resize(total);
    for (int e = 0; e < mesh.element_count(); ++e) {
        for (size_t q = 0; q < rule.size(); ++q) {
            const auto s = element_sample(mesh, e, rule.points[q].xi, rule.points[q].eta);
            const size_t idx = static_cast<size_t>(e) * rule.size() + q;
            cache.position[idx] = s.position;
            cache.normal[idx] = s.normal;
            cache.weight_jacobian[idx] = rule.weights[q] * s.jacobian;
            cache.shape[idx] = s.shape;
        }
    }
    return cache;
}

// phi scale and dphidn sign seen by a domain on one side of a surface.
struct SideFactors {
    double alpha = 1.0;  // phi_domain = alpha * phi_stored
    int sigma = 1;       // dphidn_domain = sigma * dphidn_stored; also normal flip
};

SideFactors side_factors(const Scenario& scenario, const SurfaceSpec& spec, int side) {
    if (spec.kind != BoundaryKind::interface) {
        // bc unknowns are stored in the domain's own convention
        return {1.0, spec.domain_inside ? 1 : -1};
    }
    if (side > 0) return {1.0, 1};
    const double rho_in = scenario.density(scenario.domain_index(spec.inner_domain));
    const double rho_out = scenario.density(scenario.domain_index(spec.outer_domain));
    return {rho_in / rho_out, -1};
}

int bc_side(const SurfaceSpec& spec) { return spec.domain_inside ? 1 : -1; }

}  // namespace

int worker_thread_count() {
    if (const char* env = std::getenv("NSBEM_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

void parallel_for(int n, const std::function<void(int)>& body) {
    const int workers = std::min(worker_thread_count(), n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            try {
                for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(n);
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

double BuiltScenario::winding(int surface, const Vec3& x) const {
    const auto& bs = surfaces[static_cast<size_t>(surface)];
    const auto& cache = bs.base;
    double acc = 0.0;
    for (size_t q = 0; q < cache.position.size(); ++q) {
        const Vec3 rvec = cache.position[q] - x;
        const double r2 = dot(rvec, rvec);
        const double r = std::sqrt(r2);
        acc += cache.weight_jacobian[q] * dot(rvec, cache.normal[q]) / (r2 * r);
    }
    return acc / (4.0 * pi);
}

int BuiltScenario::domain_of_point(const Vec3& x) const {
    std::vector<int> inside(surfaces.size(), 0);
    for (size_t s = 0; s < surfaces.size(); ++s) {
        const double w = winding(static_cast<int>(s), x);
        if (std::abs(w - std::round(w)) > 0.2) return -1;  // too close to the surface
        inside[s] = static_cast<int>(std::round(w)) != 0;
    }
    for (size_t d = 0; d < scenario.domains.size(); ++d) {
        bool match = true;
        for (size_t s = 0; s < surfaces.size(); ++s) {
            const auto& spec = surfaces[s].spec;
            if (spec.kind == BoundaryKind::interface) {
                if (spec.inner_domain == scenario.domains[d].id && !inside[s]) match = false;
                if (spec.outer_domain == scenario.domains[d].id && inside[s]) match = false;
            } else if (spec.bc_domain == scenario.domains[d].id) {
                if (inside[s] != (spec.domain_inside ? 1 : 0)) match = false;
            }
        }
        if (match) return static_cast<int>(d);
    }
    return -1;
}

double BuiltScenario::nearest_surface_distance(const Vec3& x, double* element_scale) const {
    double best = std::numeric_limits<double>::max();
    double scale = 1.0;
    for (const auto& bs : surfaces) {
        int best_node = -1;
        double best_node_d = std::numeric_limits<double>::max();
        for (int i = 0; i < bs.mesh.node_count(); ++i) {
            const double d = norm(bs.mesh.nodes[static_cast<size_t>(i)] - x);
            if (d < best_node_d) {
                best_node_d = d;
                best_node = i;
            }
        }
        if (best_node < 0) continue;
        // Refine using quadrature points of the elements around the node.
        double local = best_node_d;
        double local_scale = 1.0;
        for (int e : bs.node_elements[static_cast<size_t>(best_node)]) {
            local_scale = bs.elem_diameter[static_cast<size_t>(e)];
            const int ppe = bs.base.points_per_element;
            for (int q = 0; q < ppe; ++q) {
                const size_t idx = static_cast<size_t>(e) * ppe + q;
                local = std::min(local, norm(bs.base.position[idx] - x));
            }
        }
        if (local < best) {
            best = local;
            scale = local_scale;
        }
    }
    if (element_scale) *element_scale = scale;
    return best;
}

BuiltScenario build_scenario(const Scenario& scenario) {
    scenario.validate_structure();
    std::vector<QuadraticTriangleMesh> meshes;
    meshes.reserve(scenario.surfaces.size());
    for (const auto& spec : scenario.surfaces) {
        auto geometry = spec.geometry;
        meshes.push_back(geometry.frequency
                             ? build_geodesic_mesh(geometry, *geometry.frequency)
                             : build_geodesic_mesh(geometry, 1 << spec.subdivision_level));
    }
    return build_scenario_with_meshes(scenario, std::move(meshes));
}

BuiltScenario build_scenario_with_meshes(const Scenario& scenario,
                                         std::vector<QuadraticTriangleMesh> meshes) {
    scenario.validate_structure();
    if (meshes.size() != scenario.surfaces.size())
        throw ValidationError("build_scenario_with_meshes: mesh count does not match surfaces");

    BuiltScenario built;
    built.scenario = scenario;
    built.domain_surfaces.resize(scenario.domains.size());
    built.domain_sources.resize(scenario.domains.size());

    int offset = 0;
    for (size_t si = 0; si < scenario.surfaces.size(); ++si) {
        const auto& spec = scenario.surfaces[si];
        BuiltSurface bs;
        bs.spec = spec;
        bs.mesh = std::move(meshes[si]);
        bs.mesh.surface_id = spec.id;

        const auto report = mesh_integrity_check(bs.mesh, 4);
        if (!report.ok()) {
            std::string what = "surface '" + spec.id + "' failed integrity checks:";
            for (const auto& issue : report.issues) what += "\n  " + issue;
            throw ValidationError(what);
        }

        const int nn = bs.mesh.node_count();
        const int ne = bs.mesh.element_count();

        bs.node_elements.resize(static_cast<size_t>(nn));
        for (int e = 0; e < ne; ++e)
            for (int idx : bs.mesh.elements[static_cast<size_t>(e)])
                bs.node_elements[static_cast<size_t>(idx)].push_back(e);

        // Averaged nodal normals in mesh orientation.
        bs.node_normals.assign(static_cast<size_t>(nn), Vec3{});
        const double node_ref[6][2] = {{0, 0}, {1, 0}, {0, 1}, {0.5, 0}, {0.5, 0.5}, {0, 0.5}};
        for (int e = 0; e < ne; ++e) {
            const auto& el = bs.mesh.elements[static_cast<size_t>(e)];
            for (int loc = 0; loc < 6; ++loc) {
                const auto s = element_sample(bs.mesh, e, node_ref[loc][0], node_ref[loc][1]);
                bs.node_normals[static_cast<size_t>(el[static_cast<size_t>(loc)])] += s.normal;
            }
        }
        for (auto& nrm : bs.node_normals) nrm = normalized(nrm);

        // Node-adjacent element sets: the star, plus elements sharing a node
        // with a star element.
        bs.node_near_elements.resize(static_cast<size_t>(nn));
        for (int i = 0; i < nn; ++i) {
            std::set<int> near(bs.node_elements[static_cast<size_t>(i)].begin(),
                               bs.node_elements[static_cast<size_t>(i)].end());
            for (int e : bs.node_elements[static_cast<size_t>(i)])
                for (int idx : bs.mesh.elements[static_cast<size_t>(e)])
                    for (int e2 : bs.node_elements[static_cast<size_t>(idx)]) near.insert(e2);
            bs.node_near_elements[static_cast<size_t>(i)].assign(near.begin(), near.end());
        }

        bs.elem_diameter.resize(static_cast<size_t>(ne));
        bs.elem_centroid.resize(static_cast<size_t>(ne));
        for (int e = 0; e < ne; ++e) {
            bs.elem_diameter[static_cast<size_t>(e)] = element_diameter(bs.mesh, e);
            const auto& el = bs.mesh.elements[static_cast<size_t>(e)];
            bs.elem_centroid[static_cast<size_t>(e)] =
                (bs.mesh.nodes[static_cast<size_t>(el[0])] + bs.mesh.nodes[static_cast<size_t>(el[1])] +
                 bs.mesh.nodes[static_cast<size_t>(el[2])]) /
                3.0;
        }

        const auto& base_rule = refine_rule(quadrature_rule(scenario.numerics.quad_degree),
                                            scenario.numerics.base_refine_depth);
        const auto& near_rule = refine_rule(quadrature_rule(scenario.numerics.quad_degree_near),
                                            scenario.numerics.base_refine_depth);
        bs.base = make_cache(bs.mesh, base_rule);
        bs.near = make_cache(bs.mesh, near_rule);

        switch (spec.kind) {
            case BoundaryKind::interface:
                bs.phi_offset = offset;
                bs.q_offset = offset + nn;
                offset += 2 * nn;
                break;
            case BoundaryKind::rigid:
                bs.phi_offset = offset;
                offset += nn;
                break;
            case BoundaryKind::pressure_release:
                bs.q_offset = offset;
                offset += nn;
                break;
        }
        built.surfaces.push_back(std::move(bs));
    }
    built.total_unknowns = offset;

    for (size_t s = 0; s < built.surfaces.size(); ++s) {
        const auto& spec = built.surfaces[s].spec;
        if (spec.kind == BoundaryKind::interface) {
            built.domain_surfaces[static_cast<size_t>(scenario.domain_index(spec.inner_domain))]
                .push_back({static_cast<int>(s), 1});
            built.domain_surfaces[static_cast<size_t>(scenario.domain_index(spec.outer_domain))]
                .push_back({static_cast<int>(s), -1});
        } else {
            built.domain_surfaces[static_cast<size_t>(scenario.domain_index(spec.bc_domain))]
                .push_back({static_cast<int>(s), bc_side(spec)});
        }
    }

    for (size_t i = 0; i < scenario.sources.size(); ++i) {
        const auto& src = scenario.sources[i];
        const int declared = scenario.domain_index(src.domain);
        if (!built.surfaces.empty()) {
            const int located = built.domain_of_point(src.position);
            if (located != declared) {
                throw ValidationError("source " + std::to_string(i) + " declared in domain '" +
                                      src.domain +
                                      "' does not lie strictly inside it (classification: " +
                                      (located < 0 ? std::string("outside all domains / near a surface")
                                                   : scenario.domains[static_cast<size_t>(located)].id) +
                                      ")");
            }
        }
        for (const auto& bs : built.surfaces) {
            for (const auto& node : bs.mesh.nodes) {
                if (norm(node - src.position) < 1e-12 * std::max(1.0, norm(src.position))) {
                    throw ValidationError("source " + std::to_string(i) +
                                          " coincides with a collocation node on surface '" +
                                          bs.spec.id + "'");
                }
            }
        }
        built.domain_sources[static_cast<size_t>(declared)].push_back(static_cast<int>(i));
    }

    for (size_t d = 0; d < scenario.domains.size(); ++d) {
        for (const auto& bound : built.domain_surfaces[d]) {
            const auto& bs = built.surfaces[static_cast<size_t>(bound.surface)];
            for (int n = 0; n < bs.mesh.node_count(); ++n)
                built.rows.push_back({static_cast<int>(d), bound.surface, n, bound.side});
        }
    }
    if (static_cast<int>(built.rows.size()) != built.total_unknowns) {
        throw ValidationError("scenario produces a non-square system: " +
                              std::to_string(built.rows.size()) + " equations for " +
                              std::to_string(built.total_unknowns) + " unknowns");
    }
    return built;
}

Complex monopole_rhs(const BuiltScenario& built, int domain, const Vec3& x0) {
    const Complex k = built.scenario.wavenumber(domain);
    Complex acc{};
    for (int i : built.domain_sources[static_cast<size_t>(domain)]) {
        const auto& src = built.scenario.sources[static_cast<size_t>(i)];
        const double r = norm(src.position - x0);
        if (!(r > 0.0)) throw SolverError("monopole source coincides with a collocation point");
        acc += src.strength * std::exp(iu * k * r) / r;
    }
    return acc;
}

DenseComplexSystem assemble_system(const BuiltScenario& built) {
    const Scenario& scenario = built.scenario;
    const int n = built.total_unknowns;
    DenseComplexSystem sys;
    sys.matrix = ComplexDenseMatrix(n, n);
    sys.rhs.assign(static_cast<size_t>(n), Complex{});

    // Rule for the adaptive path over close regular integrals.
    const QuadratureRule near_base = refine_rule(quadrature_rule(scenario.numerics.quad_degree),
                                                 scenario.numerics.base_refine_depth);

    parallel_for(static_cast<int>(built.rows.size()), [&](int row_index) {
        const auto& row = built.rows[static_cast<size_t>(row_index)];
        const auto& s0 = built.surfaces[static_cast<size_t>(row.surface)];
        const int c = row.node;
        const Vec3 x0 = s0.mesh.nodes[static_cast<size_t>(c)];
        const Vec3 n0 = static_cast<double>(row.side) * s0.node_normals[static_cast<size_t>(c)];
        const Complex k = scenario.wavenumber(row.domain);
        const SideFactors f0 = side_factors(scenario, s0.spec, row.side);
        const bool unbounded = scenario.domains[static_cast<size_t>(row.domain)].unbounded;

        const int col_phi0 = (s0.phi_offset >= 0) ? s0.phi_offset + c : -1;
        const int col_q0 = (s0.q_offset >= 0) ? s0.q_offset + c : -1;
        Complex* mat = sys.matrix.data();
        const auto add = [&](int col, Complex v) {
            mat[static_cast<size_t>(col) * n + row_index] += v;
        };

        if (unbounded && col_phi0 >= 0) add(col_phi0, 4.0 * pi * f0.alpha);

        for (const auto& bound : built.domain_surfaces[static_cast<size_t>(row.domain)]) {
            const auto& bs = built.surfaces[static_cast<size_t>(bound.surface)];
            const SideFactors fs = side_factors(scenario, bs.spec, bound.side);
            const double flip = static_cast<double>(bound.side);
            const bool self_surface = bound.surface == row.surface;

            // One quadrature point of element e: x, mesh normal, w*J, shape values.
            const auto process_point = [&](int e, const Vec3& x, const Vec3& n_mesh, double wj,
                                           const std::array<double, 6>& shape) {
                const Vec3 rvec = x - x0;
                const double r2 = dot(rvec, rvec);
                if (!(r2 > 0.0)) {
                    throw SolverError("assembly: quadrature point coincides with node " +
                                      std::to_string(c) + " (element " + std::to_string(e) +
                                      " of surface '" + bs.spec.id + "')");
                }
                const double r = std::sqrt(r2);
                const Vec3 n_dom = flip * n_mesh;
                const double g0 = 1.0 / r;
                const double h0 = -dot(rvec, n_dom) / (r2 * r);
                const auto delta = regularized_kernels(x, x0, n_dom, k);
                const Complex gk = g0 + delta.g;
                const Complex hk = h0 + delta.h;

                const auto& el = bs.mesh.elements[static_cast<size_t>(e)];
                for (int j = 0; j < 6; ++j) {
                    const int g = el[static_cast<size_t>(j)];
                    const double nw = shape[static_cast<size_t>(j)] * wj;
                    if (bs.phi_offset >= 0) add(bs.phi_offset + g, nw * hk * fs.alpha);
                    if (bs.q_offset >= 0) add(bs.q_offset + g, -nw * gk * static_cast<double>(fs.sigma));
                }
                if (col_phi0 >= 0) add(col_phi0, -wj * h0 * f0.alpha);
                if (col_q0 >= 0)
                    add(col_q0, wj * (dot(n0, n_dom) * g0 - dot(n0, rvec) * h0) *
                                    static_cast<double>(f0.sigma));
            };

            for (int e = 0; e < bs.mesh.element_count(); ++e) {
                const bool node_adjacent =
                    self_surface &&
                    std::binary_search(s0.node_near_elements[static_cast<size_t>(c)].begin(),
                                       s0.node_near_elements[static_cast<size_t>(c)].end(), e);
                if (node_adjacent) {
                    const auto& cache = bs.near;
                    const int ppe = cache.points_per_element;
                    for (int q = 0; q < ppe; ++q) {
                        const size_t idx = static_cast<size_t>(e) * ppe + q;
                        process_point(e, cache.position[idx], cache.normal[idx],
                                      cache.weight_jacobian[idx], cache.shape[idx]);
                    }
                    continue;
                }
                const double diam = bs.elem_diameter[static_cast<size_t>(e)];
                const double dist = norm(bs.elem_centroid[static_cast<size_t>(e)] - x0);
                if (dist > 2.0 * diam) {
                    const auto& cache = bs.base;
                    const int ppe = cache.points_per_element;
                    for (int q = 0; q < ppe; ++q) {
                        const size_t idx = static_cast<size_t>(e) * ppe + q;
                        process_point(e, cache.position[idx], cache.normal[idx],
                                      cache.weight_jacobian[idx], cache.shape[idx]);
                    }
                } else {
                    integrate_element_near(
                        bs.mesh, e, x0, near_base, scenario.numerics.max_composite_depth,
                        [&](const ElementSample& s, double w) {
                            process_point(e, s.position, s.normal, w * s.jacobian, s.shape);
                        });
                }
            }
        }
        sys.rhs[static_cast<size_t>(row_index)] = monopole_rhs(built, row.domain, x0);
    });

    // Final sweep: any non-finite entry is an assembly failure.
    const Complex* mat = sys.matrix.data();
    for (size_t idx = 0; idx < static_cast<size_t>(n) * n; ++idx) {
        if (!std::isfinite(mat[idx].real()) || !std::isfinite(mat[idx].imag())) {
            const int r = static_cast<int>(idx % n);
            const auto& row = built.rows[static_cast<size_t>(r)];
            throw SolverError("assembly produced a non-finite coefficient in the equation of node " +
                              std::to_string(row.node) + " on surface '" +
                              built.surfaces[static_cast<size_t>(row.surface)].spec.id + "'");
        }
    }
    return sys;
}

SolutionField unpack_solution(const BuiltScenario& built, const std::vector<Complex>& x) {
    SolutionField field;
    field.phi.resize(built.surfaces.size());
    field.dphidn.resize(built.surfaces.size());
    for (size_t s = 0; s < built.surfaces.size(); ++s) {
        const auto& bs = built.surfaces[s];
        const int nn = bs.mesh.node_count();
        field.phi[s].assign(static_cast<size_t>(nn), Complex{});
        field.dphidn[s].assign(static_cast<size_t>(nn), Complex{});
        for (int i = 0; i < nn; ++i) {
            if (bs.phi_offset >= 0)
                field.phi[s][static_cast<size_t>(i)] = x[static_cast<size_t>(bs.phi_offset + i)];
            if (bs.q_offset >= 0)
                field.dphidn[s][static_cast<size_t>(i)] = x[static_cast<size_t>(bs.q_offset + i)];
        }
    }
    return field;
}

std::string SolveReport::to_text() const {
    std::ostringstream os;
    os << "unknowns: " << dimension << "\n"
       << "assembly_seconds: " << assembly_seconds << "\n"
       << "solve_seconds: " << solve_seconds << "\n"
       << "residual: " << residual << "\n";
    for (const auto& w : warnings) os << "warning: " << w << "\n";
    return os.str();
}

SolutionField solve_scenario(const BuiltScenario& built, SolveReport* report) {
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    auto sys = assemble_system(built);
    const auto t1 = clock::now();
    const auto result = solve_dense(std::move(sys));
    const auto t2 = clock::now();
    if (report) {
        report->dimension = built.total_unknowns;
        report->assembly_seconds = std::chrono::duration<double>(t1 - t0).count();
        report->solve_seconds = std::chrono::duration<double>(t2 - t1).count();
        report->residual = result.residual;
        // A degree-d rule resolves roughly d radians of phase per element.
        for (size_t d = 0; d < built.scenario.domains.size(); ++d) {
            double kh = 0.0;
            for (const auto& bound : built.domain_surfaces[d]) {
                const auto& bs = built.surfaces[static_cast<size_t>(bound.surface)];
                for (double diam : bs.elem_diameter)
                    kh = std::max(kh, std::abs(built.scenario.wavenumber(static_cast<int>(d))) * diam);
            }
            if (kh > built.scenario.numerics.quad_degree) {
                report->warnings.push_back(
                    "domain '" + built.scenario.domains[d].id + "': |k| x element size = " +
                    std::to_string(kh) + " exceeds quadrature degree " +
                    std::to_string(built.scenario.numerics.quad_degree) +
                    "; consider raising quad_degree or base_refine_depth");
            }
        }
    }
    return unpack_solution(built, result.solution);
}

}  // namespace nsbem
