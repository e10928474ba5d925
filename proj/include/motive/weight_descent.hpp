#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "motive/complex.hpp"
#include "motive/invariants.hpp"
#include "motive/tensor.hpp"
#include "motive/variety_expr.hpp"

namespace motive {

// Formal direct sum of atoms with multiplicities; one column of a
// presentation.  Slots are the expanded copies, numbered left to right.
struct MotiveSummand {
    AtomSymbol atom;
    int copies = 1;
};

struct MotiveTerm {
    std::vector<MotiveSummand> summands;

    int slots() const {
        int n = 0;
        for (const auto& s : summands) n += s.copies;
        return n;
    }
    const AtomSymbol& slot_atom(int slot) const {
        for (const auto& s : summands) {
            if (slot < s.copies) return s.atom;
            slot -= s.copies;
        }
        throw validation_error("slot index out of range");
    }
    int max_dimension() const {
        int d = -1;
        for (const auto& s : summands) d = std::max(d, s.atom.dimension);
        return d;
    }
    bool empty() const { return summands.empty(); }
};

// A named map between two atoms' cohomologies, one integer matrix per degree
// (absent degrees are zero).
struct NamedMap {
    std::string source, target;
    std::map<int, IntMatrix> mats;
};

using MapTable = std::map<std::string, NamedMap>;
using CohomologyTable = std::map<std::string, GradedGroup>;

// One block of a differential (or of a map between presentations): the named
// map from a slot of one column into a slot of the next, with a sign.
struct DifferentialEntry {
    int column = 0;
    int from = 0;
    int to = 0;
    int sign = 1;
    std::string map;
};

namespace detail {

inline GradedMorphism named_block(const GradedDirectSum& src, const GradedDirectSum& tgt,
                                  const MotiveTerm& src_term, const MotiveTerm& tgt_term,
                                  const DifferentialEntry& e, const MapTable& maps) {
    if (e.from < 0 || e.from >= src_term.slots() || e.to < 0 || e.to >= tgt_term.slots())
        throw validation_error("differential entry: slot out of range in column " +
                               std::to_string(e.column));
    if (e.sign != 1 && e.sign != -1)
        throw validation_error("differential entry: sign must be +1 or -1");
    auto it = maps.find(e.map);
    if (it == maps.end()) throw validation_error("unknown map " + e.map);
    const std::string& sa = src_term.slot_atom(e.from).name;
    const std::string& ta = tgt_term.slot_atom(e.to).name;
    if (it->second.source != sa || it->second.target != ta)
        throw validation_error("map " + e.map + " connects " + it->second.source + " -> " +
                               it->second.target + ", not " + sa + " -> " + ta);
    GradedMorphism named(src.proj[e.from].target(), tgt.proj[e.to].target(), it->second.mats);
    GradedMorphism block = compose(tgt.inj[e.to], compose(named, src.proj[e.from]));
    return e.sign < 0 ? -block : block;
}

}  // namespace detail

// Bounded complex of motive terms with an integer realization: column i
// carries a formal sum of atoms, the differential is assembled from signed
// named maps, and the realized complex of graded groups is validated on
// construction.  The column ladder (an atom in column i has dimension at
// most dim X - i) and the length bound (at most dim X + 1 columns) are
// enforced.
class DescentPresentation {
  public:
    DescentPresentation(int dim, std::vector<MotiveTerm> columns,
                        const std::vector<DifferentialEntry>& entries,
                        const CohomologyTable& cohomology, const MapTable& maps)
        : dim_(dim), columns_(std::move(columns)) {
        if (int(columns_.size()) > dim_ + 1)
            throw validation_error("presentation has " + std::to_string(columns_.size()) +
                                   " columns but dimension " + std::to_string(dim_) +
                                   " allows at most " + std::to_string(dim_ + 1));
        check_ladder(dim_, columns_);

        std::vector<GradedGroup> terms;
        for (const auto& col : columns_) {
            std::vector<GradedGroup> parts;
            for (const auto& s : col.summands) {
                if (s.copies < 1) throw validation_error("summand multiplicity must be positive");
                auto it = cohomology.find(s.atom.name);
                if (it == cohomology.end())
                    throw validation_error("no cohomology data for atom " + s.atom.name);
                for (int c = 0; c < s.copies; ++c) parts.push_back(it->second);
            }
            slot_sums_.push_back(graded_direct_sum(parts));
            terms.push_back(slot_sums_.back().group);
        }

        std::vector<GradedMorphism> diffs;
        for (std::size_t i = 0; i + 1 < terms.size(); ++i)
            diffs.push_back(GradedMorphism::zero(terms[i], terms[i + 1]));
        for (const auto& e : entries) {
            if (e.column < 0 || e.column + 1 >= int(columns_.size()))
                throw validation_error("differential entry: no column pair at " +
                                       std::to_string(e.column));
            diffs[e.column] =
                diffs[e.column] + detail::named_block(slot_sums_[e.column], slot_sums_[e.column + 1],
                                                      columns_[e.column], columns_[e.column + 1], e,
                                                      maps);
        }
        if (!terms.empty()) realization_ = AbComplex(0, std::move(terms), std::move(diffs));
    }

    // Results of cone, gluing, and tensor constructions carry a ready-made
    // realization and no slot structure.
    static DescentPresentation derived(int dim, std::vector<MotiveTerm> columns,
                                       AbComplex realization) {
        check_ladder(dim, columns);
        DescentPresentation p;
        p.dim_ = dim;
        p.columns_ = std::move(columns);
        p.realization_ = std::move(realization);
        return p;
    }

    int dim() const { return dim_; }
    const std::vector<MotiveTerm>& columns() const { return columns_; }
    const AbComplex& realization() const { return realization_; }

    bool has_slots() const { return !slot_sums_.empty(); }
    const GradedDirectSum& slot_sum(int column) const {
        if (!has_slots())
            throw validation_error("presentation does not expose its summand structure");
        return slot_sums_.at(column);
    }

  private:
    DescentPresentation() = default;

    static void check_ladder(int dim, const std::vector<MotiveTerm>& columns) {
        for (std::size_t i = 0; i < columns.size(); ++i)
            for (const auto& s : columns[i].summands)
                if (s.atom.dimension < 0)
                    throw validation_error("atom " + s.atom.name + " has negative dimension");
                else if (s.atom.dimension > dim - int(i))
                    throw validation_error("column " + std::to_string(i) + ": atom " +
                                           s.atom.name + " has dimension " +
                                           std::to_string(s.atom.dimension) + ", allowed at most " +
                                           std::to_string(dim - int(i)));
    }

    int dim_ = 0;
    std::vector<MotiveTerm> columns_;
    std::vector<GradedDirectSum> slot_sums_;
    AbComplex realization_;
};

// Normal-crossing configuration: an ambient variety with components Y_1..Y_n
// whose r-fold intersections are the declared strata.  Absent subsets are
// empty intersections.  Face maps name the restriction from the stratum of J
// to the stratum of I for each I = J plus one element.
struct NCConfiguration {
    AtomSymbol ambient;
    int components = 0;
    std::map<std::vector<int>, AtomSymbol> strata;
    std::map<std::pair<std::vector<int>, std::vector<int>>, std::string> faces;
};

inline DescentPresentation build_from_ncc(const NCConfiguration& cfg,
                                          const CohomologyTable& cohomology,
                                          const MapTable& maps) {
    // validate the subset combinatorics
    int max_size = 0;
    for (const auto& [I, atom] : cfg.strata) {
        if (I.empty()) throw validation_error("strata are indexed by nonempty subsets");
        for (std::size_t k = 0; k < I.size(); ++k) {
            if (I[k] < 1 || I[k] > cfg.components)
                throw validation_error("stratum index out of range");
            if (k > 0 && I[k] <= I[k - 1])
                throw validation_error("stratum subsets must be strictly increasing");
        }
        if (atom.dimension != cfg.ambient.dimension - int(I.size()))
            throw validation_error("stratum " + atom.name + " has dimension " +
                                   std::to_string(atom.dimension) + ", expected " +
                                   std::to_string(cfg.ambient.dimension - int(I.size())));
        for (std::size_t k = 0; k < I.size() && I.size() > 1; ++k) {
            std::vector<int> J = I;
            J.erase(J.begin() + k);
            if (!cfg.strata.count(J))
                throw validation_error("stratum for " + atom.name +
                                       " is present but a sub-intersection is marked empty");
        }
        max_size = std::max(max_size, int(I.size()));
    }

    // columns: lexicographic blocks of equal-size subsets, ambient first
    std::vector<MotiveTerm> columns(max_size + 1);
    columns[0].summands.push_back({cfg.ambient, 1});
    std::map<std::vector<int>, int> slot_of;
    slot_of[{}] = 0;
    for (const auto& [I, atom] : cfg.strata) {
        slot_of[I] = columns[I.size()].slots();
        columns[I.size()].summands.push_back({atom, 1});
    }

    // d = sum over removed positions k of (-1)^k times the face restriction
    std::vector<DifferentialEntry> entries;
    for (const auto& [I, atom] : cfg.strata) {
        (void)atom;
        for (std::size_t k = 0; k < I.size(); ++k) {
            std::vector<int> J = I;
            J.erase(J.begin() + k);
            auto face = cfg.faces.find({J, I});
            if (face == cfg.faces.end())
                throw validation_error("missing face map into the stratum of column " +
                                       std::to_string(I.size()));
            int sign = (k % 2 == 0) ? -1 : 1;
            entries.push_back(
                {int(I.size()) - 1, slot_of.at(J), slot_of.at(I), sign, face->second});
        }
    }
    return DescentPresentation(cfg.ambient.dimension, std::move(columns), entries, cohomology,
                               maps);
}

namespace detail {

// Realize slot-level entries as one graded map per column between two
// presentations' realizations.
inline std::map<int, GradedMorphism> presentation_map(const DescentPresentation& src,
                                                      const DescentPresentation& tgt,
                                                      const std::vector<DifferentialEntry>& entries,
                                                      const MapTable& maps) {
    std::map<int, GradedMorphism> cols;
    for (const auto& e : entries) {
        if (e.column < 0 || e.column >= int(src.columns().size()) ||
            e.column >= int(tgt.columns().size()))
            throw validation_error("presentation map: no column " + std::to_string(e.column));
        GradedMorphism block =
            named_block(src.slot_sum(e.column), tgt.slot_sum(e.column), src.columns()[e.column],
                        tgt.columns()[e.column], e, maps);
        auto it = cols.find(e.column);
        if (it == cols.end()) cols.emplace(e.column, block);
        else it->second = it->second + block;
    }
    return cols;
}

inline std::vector<MotiveTerm> cone_columns(const std::vector<MotiveTerm>& x,
                                            const std::vector<MotiveTerm>& y) {
    std::vector<MotiveTerm> out(std::max(x.size(), y.size() + 1));
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (i < x.size()) out[i] = x[i];
        if (i >= 1 && i - 1 < y.size())
            out[i].summands.insert(out[i].summands.end(), y[i - 1].summands.begin(),
                                   y[i - 1].summands.end());
    }
    while (!out.empty() && out.back().empty()) out.pop_back();
    return out;
}

}  // namespace detail

// The open complement: for T closed in the complete variety X, W(X minus T)
// is the shifted cone on the restriction W(X) -> W(T).
inline DescentPresentation open_closed(const DescentPresentation& complete,
                                       const DescentPresentation& closed,
                                       const std::vector<DifferentialEntry>& restriction,
                                       const MapTable& maps) {
    if (closed.realization().is_zero()) return complete;
    ComplexMap f(complete.realization(), closed.realization(),
                 detail::presentation_map(complete, closed, restriction, maps));
    return DescentPresentation::derived(complete.dim(),
                                        detail::cone_columns(complete.columns(), closed.columns()),
                                        shift(cone(f), -1));
}

// Closed cover X = A union B: W(X) is the shifted cone on the difference of
// the two restrictions W(A) + W(B) -> W(A intersect B).
inline DescentPresentation mayer_vietoris_closed(const DescentPresentation& a,
                                                 const DescentPresentation& b,
                                                 const DescentPresentation& ab,
                                                 const std::vector<DifferentialEntry>& restrict_a,
                                                 const std::vector<DifferentialEntry>& restrict_b,
                                                 const MapTable& maps) {
    const AbComplex &ca = a.realization(), &cb = b.realization();
    int cols = std::max(ca.is_zero() ? 0 : ca.hi() + 1, cb.is_zero() ? 0 : cb.hi() + 1);

    std::vector<GradedGroup> terms;
    std::vector<GradedDirectSum> sums;
    for (int i = 0; i < cols; ++i) {
        sums.push_back(graded_direct_sum({ca.term(i), cb.term(i)}));
        terms.push_back(sums.back().group);
    }
    std::vector<GradedMorphism> diffs;
    for (int i = 0; i + 1 < cols; ++i)
        diffs.push_back(compose(sums[i + 1].inj[0], compose(ca.diff(i), sums[i].proj[0])) +
                        compose(sums[i + 1].inj[1], compose(cb.diff(i), sums[i].proj[1])));
    AbComplex pair_complex(0, terms, std::move(diffs));

    std::map<int, GradedMorphism> fa = detail::presentation_map(a, ab, restrict_a, maps);
    std::map<int, GradedMorphism> fb = detail::presentation_map(b, ab, restrict_b, maps);
    std::map<int, GradedMorphism> g;
    for (int i = 0; i < cols; ++i) {
        GradedMorphism ga = fa.count(i) ? fa.at(i)
                                        : GradedMorphism::zero(ca.term(i), ab.realization().term(i));
        GradedMorphism gb = fb.count(i) ? fb.at(i)
                                        : GradedMorphism::zero(cb.term(i), ab.realization().term(i));
        g.emplace(i, compose(ga, sums[i].proj[0]) - compose(gb, sums[i].proj[1]));
    }
    ComplexMap diff_map(pair_complex, ab.realization(), std::move(g));

    std::vector<MotiveTerm> glued(std::max(a.columns().size(), b.columns().size()));
    for (std::size_t i = 0; i < glued.size(); ++i) {
        if (i < a.columns().size()) glued[i] = a.columns()[i];
        if (i < b.columns().size())
            glued[i].summands.insert(glued[i].summands.end(), b.columns()[i].summands.begin(),
                                     b.columns()[i].summands.end());
    }
    return DescentPresentation::derived(std::max(a.dim(), b.dim()),
                                        detail::cone_columns(glued, ab.columns()),
                                        shift(cone(diff_map), -1));
}

// W(X x Y) = W(X) tensor W(Y), Kunneth at the level of realizations and
// formal products of atoms at the level of columns.
inline DescentPresentation product(const DescentPresentation& x, const DescentPresentation& y) {
    std::size_t kx = x.columns().size(), ky = y.columns().size();
    std::vector<MotiveTerm> columns(kx && ky ? kx + ky - 1 : 0);
    for (std::size_t i = 0; i < kx; ++i)
        for (std::size_t j = 0; j < ky; ++j)
            for (const auto& sx : x.columns()[i].summands)
                for (const auto& sy : y.columns()[j].summands)
                    columns[i + j].summands.push_back(
                        {{sx.atom.name + "*" + sy.atom.name, sx.atom.dimension + sy.atom.dimension},
                         sx.copies * sy.copies});
    return DescentPresentation::derived(x.dim() + y.dim(), std::move(columns),
                                        tensor_complex(x.realization(), y.realization()));
}

// Coefficient choice for weight tables.
struct Coefficients {
    enum class Kind { integral, modular, rational };
    Kind kind = Kind::integral;
    Int modulus = 0;

    static Coefficients Z() { return {}; }
    static Coefficients Q() { return {Kind::rational, 0}; }
    static Coefficients mod(const Int& m) {
        if (m < 2) throw validation_error("coefficient modulus must be at least 2");
        return {Kind::modular, m};
    }

    std::string to_string() const {
        if (kind == Kind::rational) return "Q";
        if (kind == Kind::modular) return "Z/" + modulus.str();
        return "Z";
    }
};

// Weight table: entry (i, n) contributes weight n to H_c^{i+n}.  When the
// spectral sequence is forced to degenerate (rational coefficients, or a
// presentation of at most two columns), the entries are the weight-graded
// pieces themselves; otherwise they are only the second page.
struct WeightTable {
    Coefficients coeff;
    int dim = 0;
    bool weights_determined = false;
    std::map<std::pair<int, int>, FinAbGroup> entries;
};

namespace detail {

// The realization with Z/m coefficients: degree n of each term picks up the
// mod-m reduction of H^n plus the m-torsion of H^{n+1}, with the maps acting
// blockwise.  The interaction between the two blocks is not recorded in
// integral atom data and is taken to vanish; it can only be nonzero when an
// atom has torsion in the adjacent degree.
inline AbComplex modular_realization(const AbComplex& c, const Int& m) {
    if (c.is_zero()) return c;
    FinAbGroup zm = FinAbGroup::cyclic(m);
    AbMorphism idm = AbMorphism::identity(zm);

    struct DegreeParts {
        BilinearPackage ten, tor;
        DirectSum sum;
    };
    std::vector<std::map<int, DegreeParts>> parts(c.columns());
    std::vector<GradedGroup> terms;
    for (int i = c.lo(); i <= c.hi(); ++i) {
        std::set<int> degrees;
        for (const auto& [n, g] : c.term(i).parts()) {
            (void)g;
            degrees.insert(n);
            if (n > 0) degrees.insert(n - 1);
        }
        std::map<int, FinAbGroup> col;
        for (int n : degrees) {
            DegreeParts p;
            p.ten = tensor_group(c.term(i).at(n), zm);
            p.tor = tor_group(c.term(i).at(n + 1), zm);
            p.sum = direct_sum({p.ten.group, p.tor.group});
            if (!p.sum.group.is_zero()) col[n] = p.sum.group;
            parts[i - c.lo()].emplace(n, std::move(p));
        }
        terms.push_back(GradedGroup(std::move(col)));
    }

    std::vector<GradedMorphism> diffs;
    for (int i = c.lo(); i < c.hi(); ++i) {
        std::map<int, IntMatrix> mats;
        for (const auto& [n, src] : parts[i - c.lo()]) {
            if (src.sum.group.is_zero()) continue;
            auto it = parts[i + 1 - c.lo()].find(n);
            if (it == parts[i + 1 - c.lo()].end()) continue;
            const DegreeParts& tgt = it->second;
            if (tgt.sum.group.is_zero()) continue;
            AbMorphism t = tensor_map(src.ten, tgt.ten, c.diff(i).at(n), idm);
            AbMorphism r = tor_map(src.tor, tgt.tor, c.diff(i).at(n + 1), idm);
            mats[n] = tgt.sum.inj[0] * t.matrix() * src.sum.proj[0] +
                      tgt.sum.inj[1] * r.matrix() * src.sum.proj[1];
        }
        diffs.push_back(GradedMorphism(terms[i - c.lo()], terms[i + 1 - c.lo()], mats));
    }
    return AbComplex(c.lo(), std::move(terms), std::move(diffs));
}

}  // namespace detail

inline WeightTable weight_table(const DescentPresentation& w, const Coefficients& coeff) {
    WeightTable out;
    out.coeff = coeff;
    out.dim = w.dim();
    switch (coeff.kind) {
        case Coefficients::Kind::integral:
            out.entries = e2_page(w.realization());
            out.weights_determined = w.realization().columns() <= 2;
            break;
        case Coefficients::Kind::rational: {
            // flat coefficients: ranks survive, torsion does not, and the
            // sequence degenerates, so the table is the weight grading itself
            for (const auto& [key, g] : e2_page(w.realization()))
                if (g.rank() > 0) out.entries[key] = FinAbGroup::free(g.rank());
            out.weights_determined = true;
            break;
        }
        case Coefficients::Kind::modular: {
            AbComplex cm = detail::modular_realization(w.realization(), coeff.modulus);
            out.entries = e2_page(cm);
            out.weights_determined = cm.columns() <= 2;
            break;
        }
    }
    return out;
}

// Check that the class and the presentation tell the same Betti story:
// the t^n coefficient of the virtual Poincare polynomial must equal the
// alternating sum of the ranks in column i of the degree-n row.  Returns an
// empty string on success, a description of the first mismatch otherwise.
inline std::string virtual_betti_consistency(const DescentPresentation& w, const MotiveClass& c,
                                             const AtomInvariantTable& atoms) {
    Poly1 p = virtual_poincare(c, atoms);
    std::map<int, Int> table_ranks;
    for (const auto& [key, g] : e2_page(w.realization())) {
        Int r = g.rank();
        table_ranks[key.second] += (key.first % 2 == 0) ? r : -r;
    }
    std::set<int> degrees;
    for (const auto& [n, a] : p.coeffs()) {
        (void)a;
        degrees.insert(n);
    }
    for (const auto& [n, r] : table_ranks) {
        (void)r;
        degrees.insert(n);
    }
    for (int n : degrees)
        if (p.coeff(n) != table_ranks[n])
            return "virtual Betti mismatch at degree " + std::to_string(n) + ": class gives " +
                   p.coeff(n).str() + ", weight table gives " + table_ranks[n].str();
    return "";
}

}  // namespace motive
