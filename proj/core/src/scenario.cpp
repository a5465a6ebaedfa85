// SPDX-FileCopyrightText: Copyright (c) 2026 The nsbem Authors
// SPDX-License-Identifier: Apache-2.0

#include "nsbem/scenario.hpp"

#include <set>

namespace nsbem {

int Scenario::domain_index(const std::string& id) const {
    for (size_t i = 0; i < domains.size(); ++i)
        if (domains[i].id == id) return static_cast<int>(i);
    return -1;
}

Complex Scenario::wavenumber(int domain) const {
    return domains[static_cast<size_t>(domain)].k_rel * k_ref;
}

double Scenario::density(int domain) const {
    return domains[static_cast<size_t>(domain)].rho_rel * rho_ref;
}

void Scenario::validate_structure() const {
    if (!(k_ref > 0.0)) throw ValidationError("scenario: k_ref must be positive");
    if (!(rho_ref > 0.0)) throw ValidationError("scenario: rho_ref must be positive");

    std::set<std::string> ids;
    int unbounded = 0;
    for (const auto& d : domains) {
        if (d.id.empty()) throw ValidationError("scenario: domain with empty id");
        if (!ids.insert(d.id).second)
            throw ValidationError("scenario: duplicate domain id '" + d.id + "'");
        if (!(d.rho_rel > 0.0))
            throw ValidationError("domain '" + d.id + "': density ratio must be positive");
        if (d.unbounded) ++unbounded;
    }
    if (unbounded > 1)
        throw ValidationError("scenario: more than one unbounded domain");

    std::set<std::string> sids;
    for (const auto& s : surfaces) {
        if (!sids.insert(s.id).second)
            throw ValidationError("scenario: duplicate surface id '" + s.id + "'");
        if (s.kind == BoundaryKind::interface) {
            if (!s.bc_domain.empty())
                throw ValidationError("surface '" + s.id +
                                      "': both interface domains and a bc tag given");
            if (domain_index(s.inner_domain) < 0 || domain_index(s.outer_domain) < 0)
                throw ValidationError("surface '" + s.id + "': unknown interface domain");
            if (s.inner_domain == s.outer_domain)
                throw ValidationError("surface '" + s.id +
                                      "': interface must join two distinct domains");
        } else {
            if (!s.inner_domain.empty() || !s.outer_domain.empty())
                throw ValidationError("surface '" + s.id +
                                      "': boundary-condition surface must not also be an interface");
            if (domain_index(s.bc_domain) < 0)
                throw ValidationError("surface '" + s.id + "': unknown bc domain '" +
                                      s.bc_domain + "'");
        }
    }
    for (const auto& src : sources) {
        if (domain_index(src.domain) < 0)
            throw ValidationError("source in unknown domain '" + src.domain + "'");
    }
}

}  // namespace nsbem
