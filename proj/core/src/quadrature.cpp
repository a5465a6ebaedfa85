// SPDX-FileCopyrightText: Copyright (c) 2026 The nsbem Authors
// SPDX-License-Identifier: Apache-2.0

#include "nsbem/quadrature.hpp"

#include <array>
#include <map>

namespace nsbem {

namespace {

// Orbits are given in barycentric coordinates (b1, b2, b3); reference-triangle
// coordinates are (xi, eta) = (b2, b3). Table weights are normalized to sum 1
// over the unit-area triangle and scaled by 1/2 on expansion.
struct Orbit {
    double a, b;     // generator; interpretation depends on kind
    double weight;   // per point
    int kind;        // 0: centroid, 1: (a,a,1-2a) x3, 2: (a,b,1-a-b) x6
};

void expand(const Orbit& o, QuadratureRule& rule) {
    const auto push = [&rule, &o](double b1, double b2, double b3) {
        (void)b1;
        rule.points.push_back({b2, b3});
        rule.weights.push_back(0.5 * o.weight);
    };
    switch (o.kind) {
        case 0:
            push(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0);
            break;
        case 1: {
            const double c = 1.0 - 2.0 * o.a;
            push(c, o.a, o.a);
            push(o.a, c, o.a);
            push(o.a, o.a, c);
            break;
        }
        default: {
            const double c = 1.0 - o.a - o.b;
            push(o.a, o.b, c);
            push(o.a, c, o.b);
            push(o.b, o.a, c);
            push(o.b, c, o.a);
            push(c, o.a, o.b);
            push(c, o.b, o.a);
            break;
        }
    }
}

QuadratureRule make_rule(int degree, std::initializer_list<Orbit> orbits) {
    QuadratureRule rule;
    rule.degree = degree;
    for (const auto& o : orbits) expand(o, rule);
    return rule;
}

const std::map<int, QuadratureRule>& rule_table() {
    static const std::map<int, QuadratureRule> rules = [] {
        std::map<int, QuadratureRule> m;
        m.emplace(2, make_rule(2, {
            {1.0 / 6.0, 0.0, 1.0 / 3.0, 1},
        }));
        m.emplace(4, make_rule(4, {
            {0.445948490915965, 0.0, 0.223381589678011, 1},
            {0.091576213509771, 0.0, 0.109951743655322, 1},
        }));
        m.emplace(6, make_rule(6, {
            {0.063089014491502, 0.0, 0.050844906370207, 1},
            {0.249286745170910, 0.0, 0.116786275726379, 1},
            {0.310352451033785, 0.053145049844816, 0.082851075618374, 2},
        }));
        m.emplace(8, make_rule(8, {
            {0.0, 0.0, 0.144315607677787167, 0},
            {0.459292588292723154, 0.0, 0.095091634267284625, 1},
            {0.170569307751760202, 0.0, 0.103217370534718258, 1},
            {0.050547228317030976, 0.0, 0.032458497623198082, 1},
            {0.263112829634638133, 0.728492392955404274, 0.027230314174434990, 2},
        }));
        return m;
    }();
    return rules;
}

}  // namespace

const QuadratureRule& quadrature_rule(int degree) {
    const auto& rules = rule_table();
    const auto it = rules.find(degree);
    if (it == rules.end()) {
        std::string supported;
        for (const auto& [d, r] : rules) supported += (supported.empty() ? "" : ", ") + std::to_string(d);
        throw DomainError("quadrature_rule: unsupported degree " + std::to_string(degree) +
                          " (supported: " + supported + ")");
    }
    return it->second;
}

}  // namespace nsbem
