#pragma once

#include "motive/complex.hpp"

namespace motive {

// Contracting homotopy of a complex: h_i maps term(i+1) back to term(i),
// with d h + h d the identity on every term.
struct Homotopy {
    std::map<int, GradedMorphism> maps;
};

inline GradedMorphism homotopy_at(const AbComplex& c, const Homotopy& h, int i) {
    auto it = h.maps.find(i);
    return it == h.maps.end() ? GradedMorphism::zero(c.term(i + 1), c.term(i)) : it->second;
}

inline bool is_contraction(const AbComplex& c, const Homotopy& h) {
    for (int i = c.lo(); i <= c.hi(); ++i) {
        GradedMorphism lhs = compose(c.diff(i - 1), homotopy_at(c, h, i - 1)) +
                             compose(homotopy_at(c, h, i), c.diff(i));
        if (lhs != GradedMorphism::identity(c.term(i))) return false;
    }
    return true;
}

struct ContractionResult {
    std::optional<Homotopy> homotopy;
    std::string diagnostic;  // empty on success
    explicit operator bool() const { return homotopy.has_value(); }
};

namespace detail {

// Solve H * D = R modulo the relations of the target group, with H a valid
// morphism source -> target (source = the group behind D's rows).  Returns
// the matrix of H, or nothing when no integer solution exists.
inline std::optional<IntMatrix> solve_homotopy_step(const FinAbGroup& target,
                                                    const FinAbGroup& source,
                                                    const IntMatrix& d, const IntMatrix& r) {
    int g = target.gens(), gs = source.gens(), t = int(target.torsion().size());
    IntMatrix rel = target.relation_matrix();
    std::vector<int> tors;
    for (int j = 0; j < gs; ++j)
        if (source.order(j) != 0) tors.push_back(j);

    int hvars = g * gs, avars = g * t, bvars = t * int(tors.size());
    int rows = g * g + g * int(tors.size());
    IntMatrix m(rows, hvars + avars + bvars);
    std::vector<Int> rhs(rows, Int(0));

    // vec(H * D) = (D^T kron I_g) vec(H); vec(rel * A) = (I_g kron rel) vec(A).
    IntMatrix eq = kronecker(d.transposed(), IntMatrix::identity(g));
    for (int i = 0; i < g * g; ++i) {
        for (int j = 0; j < hvars; ++j) m(i, j) = eq(i, j);
        rhs[i] = r(i % g, i / g);
    }
    IntMatrix slack = kronecker(IntMatrix::identity(g), rel);
    for (int i = 0; i < g * g; ++i)
        for (int j = 0; j < avars; ++j) m(i, hvars + j) = slack(i, j);
    // Validity: order(j) * column j of H lands in the relation lattice.
    for (std::size_t k = 0; k < tors.size(); ++k) {
        int j = tors[k];
        Int o = source.order(j);
        for (int i = 0; i < g; ++i) {
            int row = g * g + int(k) * g + i;
            m(row, j * g + i) = o;
            for (int l = 0; l < t; ++l) m(row, hvars + avars + int(k) * t + l) = rel(i, l);
        }
    }

    auto x = solve_integer(m, rhs);
    if (!x) return std::nullopt;
    IntMatrix h(g, gs);
    for (int j = 0; j < gs; ++j)
        for (int i = 0; i < g; ++i) h(i, j) = (*x)[j * g + i];
    return h;
}

}  // namespace detail

// Synthesize a contracting homotopy column by column, solving the integer
// system h_i d_i = 1 - d_{i-1} h_{i-1} at each step.  Absence comes with a
// diagnostic: either nonzero homology, or acyclicity without an integral
// contraction (torsion obstruction).
inline ContractionResult find_contraction(const AbComplex& c) {
    if (c.is_zero()) return {Homotopy{}, ""};
    for (int i = c.lo(); i <= c.hi(); ++i) {
        GradedGroup hom = homology(c, i);
        for (const auto& [n, hg] : hom.parts())
            return {std::nullopt, "nonzero homology " + hg.to_string() + " at column " +
                                      std::to_string(i) + ", degree " + std::to_string(n)};
    }

    Homotopy h;
    for (int i = c.lo(); i <= c.hi(); ++i) {
        GradedMorphism prev = compose(c.diff(i - 1), homotopy_at(c, h, i - 1));
        std::map<int, IntMatrix> mats;
        for (const auto& [n, g] : c.term(i).parts()) {
            const FinAbGroup& src = c.term(i + 1).at(n);
            IntMatrix r = AbMorphism::identity(g).matrix() - prev.at(n).matrix();
            auto sol = detail::solve_homotopy_step(g, src, c.diff(i).at(n).matrix(), r);
            if (!sol)
                return {std::nullopt,
                        "acyclic but not contractible: no integral homotopy at column " +
                            std::to_string(i) + ", degree " + std::to_string(n)};
            if (src.gens() > 0) mats.emplace(n, *sol);
        }
        if (i < c.hi()) h.maps.emplace(i, GradedMorphism(c.term(i + 1), c.term(i), mats));
    }
    if (!is_contraction(c, h))
        return {std::nullopt, "acyclic but not contractible: synthesis check failed"};
    return {std::move(h), ""};
}

}  // namespace motive
