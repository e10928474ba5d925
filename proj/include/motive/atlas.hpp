#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "motive/invariants.hpp"
#include "motive/polynomial.hpp"
#include "motive/smith.hpp"
#include "motive/weight_descent.hpp"

namespace motive {

// Realization data for one building block: integral cohomology plus Hodge
// numbers, with the component count fixing H^0 and the top degree.
struct AtomRecord {
    std::string name;
    int dimension = 0;
    int components = 1;
    GradedGroup cohomology;
    Poly2 hodge;
};

inline void validate_record(const AtomRecord& r) {
    auto fail = [&](const std::string& what) { throw validation_error("atom " + r.name + ": " + what); };
    if (r.name.empty()) throw validation_error("atom record needs a name");
    if (r.dimension < 0) fail("negative dimension");
    if (r.components < 1) fail("needs at least one component");
    int top = 2 * r.dimension;
    for (const auto& [n, g] : r.cohomology.parts()) {
        (void)g;
        if (n < 0 || n > top)
            fail("cohomology in degree " + std::to_string(n) + " outside 0.." + std::to_string(top));
    }
    if (!(r.cohomology.at(0) == FinAbGroup::free(r.components)))
        fail("degree 0 must be free of rank " + std::to_string(r.components));
    if (!(r.cohomology.at(top) == FinAbGroup::free(r.components)))
        fail("degree " + std::to_string(top) + " must be free of rank " +
             std::to_string(r.components));
    if (!(r.hodge == r.hodge.swapped())) fail("Hodge numbers are not symmetric");
    std::map<int, Int> diag;
    for (const auto& [pq, h] : r.hodge.coeffs()) {
        if (h < 0) fail("negative Hodge number");
        if (pq.first > r.dimension || pq.second > r.dimension)
            fail("Hodge number outside the (0,0).." + std::to_string(r.dimension) + " square");
        diag[pq.first + pq.second] += h;
    }
    for (int n = 0; n <= top; ++n)
        if (diag[n] != r.cohomology.at(n).rank())
            fail("Hodge numbers in degree " + std::to_string(n) + " sum to " + diag[n].str() +
                 ", rank is " + std::to_string(r.cohomology.at(n).rank()));
}

inline AtomRecord make_record(std::string name, int dimension, int components,
                              GradedGroup cohomology, Poly2 hodge) {
    AtomRecord r{std::move(name), dimension, components, std::move(cohomology), std::move(hodge)};
    validate_record(r);
    return r;
}

// Smooth projective curve of the given genus.
inline AtomRecord curve(int g) {
    if (g < 0) throw validation_error("curve genus must be nonnegative");
    Poly2 hodge = Poly2::constant(1) + Poly2::term(g, 1, 0) + Poly2::term(g, 0, 1) +
                  Poly2::term(1, 1, 1);
    GradedGroup h({{0, FinAbGroup::free(1)}, {1, FinAbGroup::free(2 * g)}, {2, FinAbGroup::free(1)}});
    return make_record("curve" + std::to_string(g), 1, 1, std::move(h), std::move(hodge));
}

namespace detail {

inline GradedGroup diagonal_free(int d) {
    std::map<int, FinAbGroup> parts;
    for (int i = 0; i <= d; ++i) parts[2 * i] = FinAbGroup::free(1);
    return GradedGroup(std::move(parts));
}

inline Poly2 diagonal_hodge(int d) {
    Poly2 h;
    for (int i = 0; i <= d; ++i) h = h + Poly2::term(1, i, i);
    return h;
}

inline std::map<std::string, AtomRecord> builtin_records() {
    std::map<std::string, AtomRecord> t;
    auto put = [&](AtomRecord r) { t.emplace(r.name, std::move(r)); };

    put(make_record("pt", 0, 1, diagonal_free(0), diagonal_hodge(0)));
    for (int n = 1; n <= 4; ++n)
        put(make_record("P" + std::to_string(n), n, 1, diagonal_free(n), diagonal_hodge(n)));

    AtomRecord e = curve(1);
    e.name = "elliptic";
    put(std::move(e));

    Poly2 one = Poly2::constant(1);
    Poly2 u = Poly2::term(1, 1, 0), v = Poly2::term(1, 0, 1);
    put(make_record("abelian", 2, 1,
                    GradedGroup({{0, FinAbGroup::free(1)},
                                 {1, FinAbGroup::free(4)},
                                 {2, FinAbGroup::free(6)},
                                 {3, FinAbGroup::free(4)},
                                 {4, FinAbGroup::free(1)}}),
                    (one + u) * (one + u) * (one + v) * (one + v)));

    put(make_record("K3", 2, 1,
                    GradedGroup({{0, FinAbGroup::free(1)},
                                 {2, FinAbGroup::free(22)},
                                 {4, FinAbGroup::free(1)}}),
                    one + Poly2::term(1, 2, 0) + Poly2::term(20, 1, 1) + Poly2::term(1, 0, 2) +
                        Poly2::term(1, 2, 2)));

    // b2 = 10 is forced: chi = 12 and the odd ranks vanish
    put(make_record("Enriques", 2, 1,
                    GradedGroup({{0, FinAbGroup::free(1)},
                                 {2, FinAbGroup(10, {2})},
                                 {3, FinAbGroup(0, {2})},
                                 {4, FinAbGroup::free(1)}}),
                    one + Poly2::term(10, 1, 1) + Poly2::term(1, 2, 2)));
    return t;
}

}  // namespace detail

inline const AtomRecord& atom(const std::string& name) {
    static const std::map<std::string, AtomRecord> table = detail::builtin_records();
    auto it = table.find(name);
    if (it == table.end()) throw error("unknown atom " + name);
    return it->second;
}

inline std::vector<std::string> atom_names() {
    static const std::vector<std::string> names = {"pt",       "P1", "P2",       "P3", "P4",
                                                   "elliptic", "K3", "Enriques", "abelian"};
    return names;
}

inline AtomInvariants invariants_of(const AtomRecord& r) {
    Poly1 betti;
    for (const auto& [n, g] : r.cohomology.parts()) betti = betti + Poly1::term(g.rank(), n);
    return {betti, r.hodge};
}

inline AtomInvariantTable standard_invariants() {
    AtomInvariantTable t;
    for (const auto& name : atom_names()) t[name] = invariants_of(atom(name));
    return t;
}

inline CohomologyTable standard_cohomology() {
    CohomologyTable t;
    for (const auto& name : atom_names()) t[name] = atom(name).cohomology;
    return t;
}

// Restrictions between projective spaces and all identity maps, keyed by
// name for use in presentation files.
inline MapTable standard_maps() {
    MapTable t;
    auto pname = [](int n) { return n == 0 ? std::string("pt") : "P" + std::to_string(n); };
    for (int n = 1; n <= 4; ++n)
        for (int m = 0; m < n; ++m) {
            NamedMap f{pname(n), pname(m), {}};
            for (int i = 0; i <= m; ++i) f.mats[2 * i] = IntMatrix::identity(1);
            t["restrict_" + pname(n) + "_" + pname(m)] = std::move(f);
        }
    for (int n = 1; n <= 4; ++n)
        t["pullback_pt_" + pname(n)] = NamedMap{"pt", pname(n), {{0, IntMatrix::identity(1)}}};
    for (const auto& name : atom_names()) {
        NamedMap f{name, name, {}};
        for (const auto& [n, g] : atom(name).cohomology.parts())
            f.mats[n] = IntMatrix::identity(g.gens());
        t["id_" + name] = std::move(f);
    }
    return t;
}

namespace detail {

// Codewords of affine functions on a four-dimensional binary space, as
// 16-bit evaluation masks.
inline std::vector<std::uint16_t> affine_code() {
    std::vector<std::uint16_t> words;
    for (int a0 = 0; a0 < 2; ++a0)
        for (int a = 0; a < 16; ++a) {
            std::uint16_t w = 0;
            for (int v = 0; v < 16; ++v)
                if (a0 ^ (std::popcount(unsigned(a & v)) & 1)) w |= std::uint16_t(1) << v;
            words.push_back(w);
        }
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
    return words;
}

// The five functions 1, x1..x4 span the code.
inline std::vector<std::uint16_t> affine_code_generators() {
    std::vector<std::uint16_t> g = {0xFFFF};
    for (int k = 0; k < 4; ++k) {
        std::uint16_t w = 0;
        for (int v = 0; v < 16; ++v)
            if (v >> k & 1) w |= std::uint16_t(1) << v;
        g.push_back(w);
    }
    return g;
}

inline int gf2_rank(const std::vector<std::uint16_t>& words) {
    std::vector<std::uint16_t> basis;
    for (std::uint16_t w : words) {
        for (std::uint16_t b : basis)
            if ((w ^ b) < w) w ^= b;
        if (w) basis.push_back(w);
    }
    return int(basis.size());
}

// Basis of the orthogonal complement under the mod-2 dot product.
inline std::vector<std::uint16_t> gf2_dual_basis(const std::vector<std::uint16_t>& gens) {
    std::vector<std::uint16_t> red;
    std::vector<int> pivot;
    for (std::uint16_t r : gens) {
        for (std::size_t i = 0; i < red.size(); ++i)
            if (r >> pivot[i] & 1) r ^= red[i];
        if (!r) continue;
        int p = std::countr_zero(r);
        for (auto& e : red)
            if (e >> p & 1) e ^= r;
        red.push_back(r);
        pivot.push_back(p);
    }
    std::vector<std::uint16_t> dual;
    for (int f = 0; f < 16; ++f) {
        if (std::find(pivot.begin(), pivot.end(), f) != pivot.end()) continue;
        std::uint16_t y = std::uint16_t(1) << f;
        for (std::size_t i = 0; i < red.size(); ++i)
            if (std::popcount(unsigned(red[i] & y)) & 1) y |= std::uint16_t(1) << pivot[i];
        dual.push_back(y);
    }
    return dual;
}

// Image of the restriction to the sixteen exceptional curves: doubled unit
// vectors together with lifts of the dual code, reduced to a square basis.
inline IntMatrix exceptional_image_basis() {
    std::vector<std::uint16_t> dual = gf2_dual_basis(affine_code_generators());
    IntMatrix m(16, 16 + int(dual.size()));
    for (int i = 0; i < 16; ++i) m(i, i) = 2;
    for (std::size_t j = 0; j < dual.size(); ++j)
        for (int i = 0; i < 16; ++i)
            if (dual[j] >> i & 1) m(i, 16 + int(j)) = 1;
    return column_basis(m);
}

}  // namespace detail

// The quotient of the smallest primitive sublattice containing the sixteen
// exceptional classes by the classes themselves: restricted to the curves,
// doubled unit vectors extend by the code words one level up.
inline FinAbGroup exceptional_lattice_quotient() {
    std::vector<std::uint16_t> code = detail::affine_code_generators();
    IntMatrix big(16, 16 + int(code.size()));
    IntMatrix small(16, 16);
    for (int i = 0; i < 16; ++i) big(i, i) = small(i, i) = 2;
    for (std::size_t j = 0; j < code.size(); ++j)
        for (int i = 0; i < 16; ++i)
            if (code[j] >> i & 1) big(i, 16 + int(j)) = 1;
    return lattice_quotient(big, small);
}

// Two-column presentation of the quotient surface: the blown-up cover
// together with the sixteen fixed points over the sixteen exceptional lines.
// Degree 2 out of the cover restricts H^2 = Z^22 onto the image lattice in
// Z^16 (kernel of rank 6); degree 0 matches components up.
inline DescentPresentation kummer_presentation() {
    CohomologyTable coh = {{"K3", atom("K3").cohomology},
                           {"pt", atom("pt").cohomology},
                           {"P1", atom("P1").cohomology}};
    IntMatrix image = detail::exceptional_image_basis();

    MapTable maps;
    maps["pullback_pt_P1"] = NamedMap{"pt", "P1", {{0, IntMatrix::identity(1)}}};
    for (int j = 0; j < 16; ++j) {
        IntMatrix row(1, 22);
        for (int c = 0; c < 16; ++c) row(0, c) = image(j, c);
        maps["restrict_K3_E" + std::to_string(j + 1)] =
            NamedMap{"K3", "P1", {{0, IntMatrix::identity(1)}, {2, std::move(row)}}};
    }

    std::vector<MotiveTerm> columns = {MotiveTerm{{{{"K3", 2}, 1}, {{"pt", 0}, 16}}},
                                       MotiveTerm{{{{"P1", 1}, 16}}}};
    std::vector<DifferentialEntry> entries;
    for (int j = 0; j < 16; ++j) {
        entries.push_back({0, 0, j, 1, "restrict_K3_E" + std::to_string(j + 1)});
        entries.push_back({0, 1 + j, j, -1, "pullback_pt_P1"});
    }
    return DescentPresentation(2, std::move(columns), entries, coh, maps);
}

}  // namespace motive
