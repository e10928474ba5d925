#pragma once

#include "motive/complex.hpp"

namespace motive {

// A tensor or Tor group together with the change of basis between its
// canonical generators and the defining pair coordinates (one coordinate per
// generator pair of the two factors).  pr maps pair coordinates to canonical
// generators, sec lifts canonical generators back.
struct BilinearPackage {
    FinAbGroup group;
    IntMatrix pr, sec;
    std::vector<std::pair<int, int>> coords;
};

// A (x) B on generator pairs w_ij = a_i (x) b_j of order gcd(o_i, p_j),
// canonicalized through Smith normal form.
inline BilinearPackage tensor_group(const FinAbGroup& a, const FinAbGroup& b) {
    BilinearPackage out;
    for (int i = 0; i < a.gens(); ++i)
        for (int j = 0; j < b.gens(); ++j) out.coords.push_back({i, j});
    int n = int(out.coords.size());
    std::vector<Int> orders(n);
    int nrel = 0;
    for (int k = 0; k < n; ++k) {
        orders[k] = gcd(a.order(out.coords[k].first), b.order(out.coords[k].second));
        if (orders[k] != 0) ++nrel;
    }
    IntMatrix rel(n, nrel);
    for (int k = 0, c = 0; k < n; ++k)
        if (orders[k] != 0) rel(k, c++) = orders[k];
    PresentedGroup p = presented_group(n, rel);
    out.group = p.group;
    out.pr = p.pr;
    out.sec = p.sec;
    return out;
}

// Tor(A, B) on generator pairs of torsion generators, t_ij of order
// gcd(o_i, p_j); free generators contribute nothing.
inline BilinearPackage tor_group(const FinAbGroup& a, const FinAbGroup& b) {
    BilinearPackage out;
    for (int i = a.rank(); i < a.gens(); ++i)
        for (int j = b.rank(); j < b.gens(); ++j) out.coords.push_back({i, j});
    int n = int(out.coords.size());
    IntMatrix rel(n, n);
    for (int k = 0; k < n; ++k)
        rel(k, k) = gcd(a.order(out.coords[k].first), b.order(out.coords[k].second));
    PresentedGroup p = presented_group(n, rel);
    out.group = p.group;
    out.pr = p.pr;
    out.sec = p.sec;
    return out;
}

// f (x) g on tensor groups: Kronecker product in pair coordinates, conjugated
// into canonical generators.
inline AbMorphism tensor_map(const BilinearPackage& src, const BilinearPackage& tgt,
                             const AbMorphism& f, const AbMorphism& g) {
    IntMatrix k = kronecker(f.matrix(), g.matrix());
    return AbMorphism(src.group, tgt.group, tgt.pr * k * src.sec);
}

// Tor(f, g): lift f to the defining resolutions and push the canonical Tor
// generators through.  With t_ij realized as (p_j / g_ij) b_j inside B[o_i],
// the (k,l) component of its image has coordinate
//   tau / (p'_l / g'_kl),  tau = (F(k,i) o_i / o'_k) (p_j / g_ij) G(l,j),
// both divisions exact because f and g are valid morphisms.
inline AbMorphism tor_map(const BilinearPackage& src, const BilinearPackage& tgt,
                          const AbMorphism& f, const AbMorphism& g) {
    const FinAbGroup &a = f.source(), &a2 = f.target(), &b = g.source(), &b2 = g.target();
    IntMatrix c(int(tgt.coords.size()), int(src.coords.size()));
    for (std::size_t s = 0; s < src.coords.size(); ++s) {
        auto [i, j] = src.coords[s];
        Int oi = a.order(i), pj = b.order(j);
        Int gij = gcd(oi, pj);
        if (gij == 1) continue;
        for (std::size_t t = 0; t < tgt.coords.size(); ++t) {
            auto [k, l] = tgt.coords[t];
            Int ok = a2.order(k), pl = b2.order(l);
            Int gkl = gcd(ok, pl);
            if (gkl == 1) continue;
            Int f1 = f.matrix()(k, i) * oi / ok;
            Int tau = f1 * (pj / gij) * g.matrix()(l, j);
            c(t, s) = pos_mod(tau, pl) / (pl / gkl);
        }
    }
    return AbMorphism(src.group, tgt.group, tgt.pr * c * src.sec);
}

// Kunneth data for a pair of graded groups: per degree, the canonical direct
// sum of all tensor pieces A^p (x) B^q (p+q = n) followed by all Tor pieces
// Tor(A^p, B^q) (p+q = n+1), pieces ordered by p.
struct KunnethPiece {
    int p, q;
    bool tor;
    BilinearPackage pkg;
};

struct KunnethGroup {
    GradedGroup group;
    std::map<int, std::vector<KunnethPiece>> pieces;
    std::map<int, DirectSum> sums;
};

inline KunnethGroup kunneth_product(const GradedGroup& a, const GradedGroup& b) {
    KunnethGroup out;
    if (a.is_zero() || b.is_zero()) return out;
    int lo = a.min_degree() + b.min_degree() - 1;
    int hi = a.max_degree() + b.max_degree();
    std::map<int, FinAbGroup> parts;
    for (int n = lo; n <= hi; ++n) {
        std::vector<KunnethPiece> pieces;
        for (const auto& [p, ap] : a.parts()) {
            BilinearPackage t = tensor_group(ap, b.at(n - p));
            if (!t.group.is_zero()) pieces.push_back({p, n - p, false, std::move(t)});
        }
        for (const auto& [p, ap] : a.parts()) {
            BilinearPackage t = tor_group(ap, b.at(n + 1 - p));
            if (!t.group.is_zero()) pieces.push_back({p, n + 1 - p, true, std::move(t)});
        }
        if (pieces.empty()) continue;
        std::vector<FinAbGroup> groups;
        for (const auto& pc : pieces) groups.push_back(pc.pkg.group);
        DirectSum s = direct_sum(groups);
        parts[n] = s.group;
        out.pieces[n] = std::move(pieces);
        out.sums[n] = std::move(s);
    }
    out.group = GradedGroup(std::move(parts));
    return out;
}

// Degree n of the Kunneth formula: sum of A^p (x) B^q over p+q = n plus
// Tor(A^p, B^q) over p+q = n+1.
inline GradedGroup kunneth(const GradedGroup& a, const GradedGroup& b) {
    return kunneth_product(a, b).group;
}

// Induced map on Kunneth data, piecewise tensor_map / tor_map.
inline GradedMorphism kunneth_map(const KunnethGroup& src, const KunnethGroup& tgt,
                                  const GradedMorphism& f, const GradedMorphism& g) {
    std::map<int, IntMatrix> mats;
    for (const auto& [n, parts] : src.pieces) {
        const FinAbGroup& target = tgt.group.at(n);
        IntMatrix m(target.gens(), src.group.at(n).gens());
        auto tit = tgt.pieces.find(n);
        for (std::size_t s = 0; s < parts.size(); ++s) {
            if (tit == tgt.pieces.end()) break;
            const KunnethPiece& pc = parts[s];
            for (std::size_t t = 0; t < tit->second.size(); ++t) {
                const KunnethPiece& qc = tit->second[t];
                if (qc.p != pc.p || qc.q != pc.q || qc.tor != pc.tor) continue;
                AbMorphism step = pc.tor ? tor_map(pc.pkg, qc.pkg, f.at(pc.p), g.at(pc.q))
                                         : tensor_map(pc.pkg, qc.pkg, f.at(pc.p), g.at(pc.q));
                m = m + tgt.sums.at(n).inj[t] * step.matrix() * src.sums.at(n).proj[s];
            }
        }
        mats[n] = std::move(m);
    }
    return GradedMorphism(src.group, tgt.group, mats);
}

// Tensor product of complexes: the total complex of the Kunneth bicomplex,
// with the Koszul sign on the second factor's differential.
inline AbComplex tensor_complex(const AbComplex& c, const AbComplex& d) {
    if (c.is_zero() || d.is_zero()) return AbComplex();
    std::map<std::pair<int, int>, KunnethGroup> grid;
    for (int i = c.lo(); i <= c.hi(); ++i)
        for (int j = d.lo(); j <= d.hi(); ++j)
            grid[{i, j}] = kunneth_product(c.term(i), d.term(j));
    Bicomplex b;
    for (auto& [ij, k] : grid) {
        auto [i, j] = ij;
        if (k.group.is_zero()) continue;
        b.entries[ij] = k.group;
        if (i < c.hi() && !grid.at({i + 1, j}).group.is_zero())
            b.horiz[ij] = kunneth_map(k, grid.at({i + 1, j}), c.diff(i),
                                      GradedMorphism::identity(d.term(j)));
        if (j < d.hi() && !grid.at({i, j + 1}).group.is_zero())
            b.vert[ij] = kunneth_map(k, grid.at({i, j + 1}),
                                     GradedMorphism::identity(c.term(i)), d.diff(j));
    }
    return total(b);
}

}  // namespace motive
