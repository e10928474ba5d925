#pragma once

#include <map>
#include <optional>
#include <string>

#include "motive/errors.hpp"
#include "motive/motive_class.hpp"
#include "motive/polynomial.hpp"

namespace motive {

// Numerical data attached to one atom: the Betti polynomial (coefficient of
// t^n is the rank of H^n) and, when the Hodge numbers are known, the Hodge
// polynomial with h^{p,q} as coefficient of u^p v^q.
struct AtomInvariants {
    Poly1 betti;
    std::optional<Poly2> hodge;
};

using AtomInvariantTable = std::map<std::string, AtomInvariants>;

// Substitute each atom by its Betti polynomial and L by t^2.  Compatible
// with every relation class_of imposes, so cut-and-paste identities turn
// into polynomial identities.
inline Poly1 virtual_poincare(const MotiveClass& c, const AtomInvariantTable& table) {
    Poly1 out;
    for (const auto& [m, coeff] : c.terms()) {
        Poly1 term = Poly1::term(coeff, 2 * m.lpow);
        for (const auto& [name, e] : m.atoms) {
            auto it = table.find(name);
            if (it == table.end())
                throw validation_error("no Betti data for atom " + name);
            term = term * it->second.betti.pow(e);
        }
        out = out + term;
    }
    return out;
}

// Substitute each atom by its Hodge polynomial and L by u*v.
inline Poly2 virtual_hodge(const MotiveClass& c, const AtomInvariantTable& table) {
    Poly2 out;
    for (const auto& [m, coeff] : c.terms()) {
        Poly2 term = Poly2::term(coeff, m.lpow, m.lpow);
        for (const auto& [name, e] : m.atoms) {
            auto it = table.find(name);
            if (it == table.end() || !it->second.hodge)
                throw validation_error("no Hodge data for atom " + name);
            term = term * it->second.hodge->pow(e);
        }
        out = out + term;
    }
    return out;
}

// Euler characteristic: the Betti polynomial at t = -1.
inline Int euler_char(const MotiveClass& c, const AtomInvariantTable& table) {
    return virtual_poincare(c, table).eval(-1);
}

}  // namespace motive
