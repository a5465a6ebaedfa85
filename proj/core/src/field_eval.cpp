// SPDX-FileCopyrightText: Copyright (c) 2026 The nsbem Authors
// SPDX-License-Identifier: Apache-2.0

#include "nsbem/field_eval.hpp"

#include <cmath>

#include "nsbem/kernel.hpp"

namespace nsbem {

namespace {

struct SideView {
    double alpha;
    double sigma;
};

SideView side_view(const Scenario& scenario, const SurfaceSpec& spec, int side) {
    if (spec.kind != BoundaryKind::interface) return {1.0, spec.domain_inside ? 1.0 : -1.0};
    if (side > 0) return {1.0, 1.0};
    const double rho_in = scenario.density(scenario.domain_index(spec.inner_domain));
    const double rho_out = scenario.density(scenario.domain_index(spec.outer_domain));
    return {rho_in / rho_out, -1.0};
}

void plane_axes(const std::string& plane, Vec3& u, Vec3& v) {
    if (plane == "xy") {
        u = {1, 0, 0};
        v = {0, 1, 0};
    } else if (plane == "xz") {
        u = {1, 0, 0};
        v = {0, 0, 1};
    } else if (plane == "yz") {
        u = {0, 1, 0};
        v = {0, 0, 1};
    } else {
        throw ValidationError("unknown plane '" + plane + "' (expected xy, xz or yz)");
    }
}

}  // namespace

FieldEvaluator::FieldEvaluator(const BuiltScenario& built, const SolutionField& solution)
    : built_(&built), solution_(solution), near_rule_(quadrature_rule(built.scenario.numerics.quad_degree)) {
    data_.resize(built.surfaces.size());
    for (size_t s = 0; s < built.surfaces.size(); ++s) {
        const auto& bs = built.surfaces[s];
        const auto& cache = bs.base;
        const size_t nqp = cache.position.size();
        data_[s].phi_qp.assign(nqp, Complex{});
        data_[s].q_qp.assign(nqp, Complex{});
        const int ppe = cache.points_per_element;
        for (int e = 0; e < bs.mesh.element_count(); ++e) {
            const auto& el = bs.mesh.elements[static_cast<size_t>(e)];
            for (int q = 0; q < ppe; ++q) {
                const size_t idx = static_cast<size_t>(e) * ppe + q;
                Complex phi{}, dq{};
                for (int j = 0; j < 6; ++j) {
                    const double nj = cache.shape[idx][static_cast<size_t>(j)];
                    phi += nj * solution.phi[s][static_cast<size_t>(el[static_cast<size_t>(j)])];
                    dq += nj * solution.dphidn[s][static_cast<size_t>(el[static_cast<size_t>(j)])];
                }
                data_[s].phi_qp[idx] = phi;
                data_[s].q_qp[idx] = dq;
            }
        }
    }
}

Complex FieldEvaluator::domain_integral(int domain, const Vec3& x) const {
    const Scenario& scenario = built_->scenario;
    const Complex k = scenario.wavenumber(domain);
    Complex acc{};
    for (const auto& bound : built_->domain_surfaces[static_cast<size_t>(domain)]) {
        const auto& s_idx = bound.surface;
        const auto& bs = built_->surfaces[static_cast<size_t>(s_idx)];
        const SideView f = side_view(scenario, bs.spec, bound.side);
        const auto& cache = bs.base;
        const auto& sd = data_[static_cast<size_t>(s_idx)];
        const double flip = static_cast<double>(bound.side);

        const auto accumulate = [&](const Vec3& pos, const Vec3& n_mesh, double wj, Complex phi_s,
                                    Complex q_s) {
            const Vec3 rvec = pos - x;
            const double r2 = dot(rvec, rvec);
            if (!(r2 > 0.0)) throw DomainError("field evaluation point lies on a surface");
            const double r = std::sqrt(r2);
            const Complex ikr = iu * k * r;
            const Complex e = std::exp(ikr);
            const Complex gk = e / r;
            const Complex hk = flip * dot(rvec, n_mesh) * e * (ikr - 1.0) / (r2 * r);
            acc += wj * (f.sigma * q_s * gk - f.alpha * phi_s * hk);
        };

        const int ppe = cache.points_per_element;
        for (int e = 0; e < bs.mesh.element_count(); ++e) {
            const double diam = bs.elem_diameter[static_cast<size_t>(e)];
            if (norm(bs.elem_centroid[static_cast<size_t>(e)] - x) > 2.0 * diam) {
                for (int q = 0; q < ppe; ++q) {
                    const size_t idx = static_cast<size_t>(e) * ppe + q;
                    accumulate(cache.position[idx], cache.normal[idx], cache.weight_jacobian[idx],
                               sd.phi_qp[idx], sd.q_qp[idx]);
                }
            } else {
                const auto& el = bs.mesh.elements[static_cast<size_t>(e)];
                integrate_element_near(
                    bs.mesh, e, x, near_rule_, scenario.numerics.max_composite_depth,
                    [&](const ElementSample& s, double w) {
                        Complex phi_s{}, q_s{};
                        for (int j = 0; j < 6; ++j) {
                            const auto g = static_cast<size_t>(el[static_cast<size_t>(j)]);
                            phi_s += s.shape[static_cast<size_t>(j)] *
                                     solution_.phi[static_cast<size_t>(s_idx)][g];
                            q_s += s.shape[static_cast<size_t>(j)] *
                                   solution_.dphidn[static_cast<size_t>(s_idx)][g];
                        }
                        accumulate(s.position, s.normal, w * s.jacobian, phi_s, q_s);
                    });
            }
        }
    }
    return acc / (4.0 * pi);
}

FieldSample FieldEvaluator::at(const Vec3& x) const {
    const int domain = built_->domain_of_point(x);
    if (domain < 0)
        throw DomainError("field evaluation point lies in no computational domain");
    double scale = 1.0;
    const double dist = built_->nearest_surface_distance(x, &scale);
    if (dist < built_->scenario.numerics.near_surface_threshold * scale)
        throw DomainError("field evaluation point is inside the near-surface masking band");

    Complex phi = domain_integral(domain, x);
    const Complex k = built_->scenario.wavenumber(domain);
    for (int i : built_->domain_sources[static_cast<size_t>(domain)]) {
        const auto& src = built_->scenario.sources[static_cast<size_t>(i)];
        const double r = norm(src.position - x);
        if (!(r > 0.0)) throw DomainError("field evaluation point coincides with a source");
        phi += src.strength / (4.0 * pi) * std::exp(iu * k * r) / r;
    }
    const Complex p = iu * built_->scenario.omega * built_->scenario.density(domain) * phi;
    return {x, phi, p};
}

MaskedSample FieldEvaluator::at_masked(const Vec3& x) const {
    try {
        const auto s = at(x);
        return {s.position, s.phi, s.pressure, false};
    } catch (const DomainError&) {
        return {x, Complex{}, Complex{}, true};
    }
}

std::array<Complex, 3> FieldEvaluator::gradient(const Vec3& x) const {
    const int domain = built_->domain_of_point(x);
    if (domain < 0)
        throw DomainError("field evaluation point lies in no computational domain");
    const Scenario& scenario = built_->scenario;
    const Complex k = scenario.wavenumber(domain);

    std::array<Complex, 3> g{};
    for (const auto& bound : built_->domain_surfaces[static_cast<size_t>(domain)]) {
        const auto& bs = built_->surfaces[static_cast<size_t>(bound.surface)];
        const SideView f = side_view(scenario, bs.spec, bound.side);
        const auto& cache = bs.base;
        const auto& sd = data_[static_cast<size_t>(bound.surface)];
        const double flip = static_cast<double>(bound.side);
        for (size_t idx = 0; idx < cache.position.size(); ++idx) {
            const Vec3 n_dom = flip * cache.normal[idx];
            const auto kg = helmholtz_kernel_gradients(cache.position[idx], x, n_dom, k);
            const Complex phi_d = f.alpha * sd.phi_qp[idx];
            const Complex q_d = f.sigma * sd.q_qp[idx];
            const double wj = cache.weight_jacobian[idx];
            const Vec3 gg_re = kg.grad_g_re, gg_im = kg.grad_g_im;
            const Vec3 gh_re = kg.grad_h_re, gh_im = kg.grad_h_im;
            g[0] += wj * (q_d * Complex(gg_re.x, gg_im.x) - phi_d * Complex(gh_re.x, gh_im.x));
            g[1] += wj * (q_d * Complex(gg_re.y, gg_im.y) - phi_d * Complex(gh_re.y, gh_im.y));
            g[2] += wj * (q_d * Complex(gg_re.z, gg_im.z) - phi_d * Complex(gh_re.z, gh_im.z));
        }
    }
    for (auto& c : g) c /= 4.0 * pi;

    for (int i : built_->domain_sources[static_cast<size_t>(domain)]) {
        const auto& src = scenario.sources[static_cast<size_t>(i)];
        const Vec3 rvec = x - src.position;
        const double r = norm(rvec);
        if (!(r > 0.0)) throw DomainError("gradient evaluation at a source location");
        // grad_x [Q/(4pi) e^{ikr}/r] = Q/(4pi) e^{ikr}(ikr-1)/r^3 rvec
        const Complex fac =
            src.strength / (4.0 * pi) * std::exp(iu * k * r) * (iu * k * r - 1.0) / (r * r * r);
        g[0] += fac * rvec.x;
        g[1] += fac * rvec.y;
        g[2] += fac * rvec.z;
    }
    return g;
}

double monopole_reference_pressure(const BuiltScenario& built) {
    const Scenario& s = built.scenario;
    if (s.sources.empty()) return 1.0;
    int medium = -1;
    for (size_t d = 0; d < s.domains.size(); ++d)
        if (s.domains[d].unbounded) medium = static_cast<int>(d);
    if (medium < 0) medium = s.domain_index(s.sources.front().domain);
    return s.density(medium) * s.omega * std::abs(s.sources.front().strength) / (4.0 * pi);
}

PressureGrid pressure_grid_slice(const FieldEvaluator& eval, const GridOutput& spec) {
    Vec3 u, v;
    plane_axes(spec.plane, u, v);
    PressureGrid grid;
    grid.spec = spec;
    grid.normalization =
        (spec.normalization == "monopole_reference") ? monopole_reference_pressure(eval.built()) : 1.0;
    const int nu = std::max(1, spec.nu), nv = std::max(1, spec.nv);
    grid.samples.resize(static_cast<size_t>(nu) * nv);
    parallel_for(nu * nv, [&](int idx) {
        const int i = idx % nu, jj = idx / nu;
        const double fu = (nu == 1) ? 0.0 : (2.0 * i / (nu - 1.0) - 1.0);
        const double fv = (nv == 1) ? 0.0 : (2.0 * jj / (nv - 1.0) - 1.0);
        const Vec3 x = spec.center + (fu * spec.half_u) * u + (fv * spec.half_v) * v;
        grid.samples[static_cast<size_t>(idx)] = eval.at_masked(x);
    });
    return grid;
}

RadarPattern far_field_pattern(const FieldEvaluator& eval, const RadarOutput& spec) {
    Vec3 u, v;
    plane_axes(spec.plane, u, v);
    // Angle measured from the v axis toward the u axis, so "xz" starts at +z.
    RadarPattern pattern;
    pattern.radius = spec.radius;
    const int n = std::max(1, spec.n_angles);
    pattern.angles.resize(static_cast<size_t>(n));
    pattern.magnitude.resize(static_cast<size_t>(n));
    const double ref = monopole_reference_pressure(eval.built());
    const auto& built = eval.built();

    std::vector<MaskedSample> raw(static_cast<size_t>(n));
    parallel_for(n, [&](int i) {
        const double theta = 2.0 * pi * i / n;
        const Vec3 x = spec.radius * (std::cos(theta) * v + std::sin(theta) * u);
        raw[static_cast<size_t>(i)] = eval.at_masked(x);
        pattern.angles[static_cast<size_t>(i)] = theta;
    });
    for (int i = 0; i < n; ++i) {
        if (raw[static_cast<size_t>(i)].masked)
            throw ValidationError("radar circle intersects geometry or masking band");
    }
    for (int i = 0; i < n; ++i) {
        Complex p = raw[static_cast<size_t>(i)].pressure;
        if (spec.subtract_incident) {
            const Vec3 x = spec.radius * (std::cos(pattern.angles[static_cast<size_t>(i)]) * v +
                                          std::sin(pattern.angles[static_cast<size_t>(i)]) * u);
            const int domain = built.domain_of_point(x);
            const Complex k = built.scenario.wavenumber(domain);
            Complex phi_ps{};
            for (int srci : built.domain_sources[static_cast<size_t>(domain)]) {
                const auto& src = built.scenario.sources[static_cast<size_t>(srci)];
                const double r = norm(src.position - x);
                phi_ps += src.strength / (4.0 * pi) * std::exp(iu * k * r) / r;
            }
            p -= iu * built.scenario.omega * built.scenario.density(domain) * phi_ps;
        }
        pattern.magnitude[static_cast<size_t>(i)] = std::abs(p) / ref;
    }
    return pattern;
}

LineScan focal_line_scan(const FieldEvaluator& eval, const FocalScanOutput& spec) {
    LineScan scan;
    scan.spec = spec;
    scan.normalization =
        (spec.normalization == "monopole_reference") ? monopole_reference_pressure(eval.built()) : 1.0;
    const int n = std::max(2, spec.samples);
    scan.samples.resize(static_cast<size_t>(n));
    parallel_for(n, [&](int i) {
        const double t = static_cast<double>(i) / (n - 1.0);
        const Vec3 x = spec.start + t * (spec.end - spec.start);
        scan.samples[static_cast<size_t>(i)] = eval.at_masked(x);
    });
    return scan;
}

FocalMetrics focal_metrics(const LineScan& scan) {
    if (scan.samples.empty()) throw DomainError("focal_metrics: empty scan");
    int best = -1;
    double best_mag = -1.0;
    for (size_t i = 0; i < scan.samples.size(); ++i) {
        if (scan.samples[i].masked) continue;
        const double m = std::abs(scan.samples[i].pressure);
        if (m > best_mag) {
            best_mag = m;
            best = static_cast<int>(i);
        }
    }
    if (best < 0) throw DomainError("focal_metrics: all samples masked");

    FocalMetrics out;
    const auto& s = scan.samples;
    double t_off = 0.0;
    double value = best_mag;
    if (best > 0 && best + 1 < static_cast<int>(s.size()) && !s[static_cast<size_t>(best - 1)].masked &&
        !s[static_cast<size_t>(best + 1)].masked) {
        const double y0 = std::abs(s[static_cast<size_t>(best - 1)].pressure);
        const double y1 = best_mag;
        const double y2 = std::abs(s[static_cast<size_t>(best + 1)].pressure);
        const double denom = y0 - 2.0 * y1 + y2;
        if (denom < 0.0) {
            t_off = 0.5 * (y0 - y2) / denom;
            value = y1 - 0.25 * (y0 - y2) * t_off;
        }
    }
    const double step = 1.0 / (static_cast<double>(s.size()) - 1.0);
    const double t = (best + t_off) * step;
    out.position = scan.spec.start + t * (scan.spec.end - scan.spec.start);
    out.max_pressure = value / scan.normalization;
    return out;
}

std::vector<double> time_snapshot(const PressureGrid& grid, double phase) {
    std::vector<double> out(grid.samples.size(), 0.0);
    const Complex rot = std::exp(-iu * phase);
    for (size_t i = 0; i < grid.samples.size(); ++i) {
        if (grid.samples[i].masked) continue;
        out[i] = (grid.samples[i].pressure * rot).real() / grid.normalization;
    }
    return out;
}

}  // namespace nsbem
