#pragma once

#include <algorithm>

#include "motive/graded.hpp"

namespace motive {

// Bounded cochain complex of graded groups.  Columns are stored contiguously;
// `offset` is the column index of the first stored term, so cones and shifts
// can move the window without renumbering (a cone over complexes starting at
// column 0 naturally starts at column -1).  d o d = 0 is checked on
// construction, degree by degree.
class AbComplex {
  public:
    AbComplex() = default;
    AbComplex(int offset, std::vector<GradedGroup> terms, std::vector<GradedMorphism> diffs)
        : offset_(offset), terms_(std::move(terms)), diffs_(std::move(diffs)) {
        if (!terms_.empty() && diffs_.size() + 1 != terms_.size())
            throw validation_error("complex: need one differential per adjacent column pair");
        for (std::size_t i = 0; i < diffs_.size(); ++i) {
            if (diffs_[i].source() != terms_[i] || diffs_[i].target() != terms_[i + 1])
                throw validation_error("complex: differential at column " +
                                       std::to_string(offset_ + int(i)) +
                                       " does not match its terms");
        }
        for (std::size_t i = 0; i + 1 < diffs_.size(); ++i) {
            GradedMorphism dd = compose(diffs_[i + 1], diffs_[i]);
            if (!dd.is_zero())
                throw validation_error(
                    "complex: d o d != 0 at column " + std::to_string(offset_ + int(i)) +
                    ", degree " + std::to_string(*dd.first_nonzero_degree()));
        }
        trim();
    }
    static AbComplex single(int column, const GradedGroup& g) {
        if (g.is_zero()) return AbComplex();
        return AbComplex(column, {g}, {});
    }

    bool is_zero() const { return terms_.empty(); }
    int columns() const { return int(terms_.size()); }
    int lo() const { return offset_; }
    int hi() const { return offset_ + columns() - 1; }

    const GradedGroup& term(int i) const {
        static const GradedGroup zero;
        if (terms_.empty() || i < lo() || i > hi()) return zero;
        return terms_[i - offset_];
    }
    GradedMorphism diff(int i) const {
        if (!terms_.empty() && i >= lo() && i < hi()) return diffs_[i - offset_];
        return GradedMorphism::zero(term(i), term(i + 1));
    }

    // Equality as diagrams: same terms and differentials at every column.
    bool operator==(const AbComplex& o) const {
        int a = std::min(lo(), o.lo()), b = std::max(hi(), o.hi());
        if (is_zero() || o.is_zero()) return is_zero() == o.is_zero();
        for (int i = a; i <= b; ++i)
            if (term(i) != o.term(i) || diff(i) != o.diff(i)) return false;
        return true;
    }
    bool operator!=(const AbComplex& o) const { return !(*this == o); }

  private:
    void trim() {
        std::size_t drop = 0;
        while (drop < terms_.size() && terms_[drop].is_zero()) ++drop;
        if (drop == terms_.size()) {
            offset_ = 0;
            terms_.clear();
            diffs_.clear();
            return;
        }
        terms_.erase(terms_.begin(), terms_.begin() + drop);
        diffs_.erase(diffs_.begin(), diffs_.begin() + drop);
        offset_ += int(drop);
        while (!terms_.empty() && terms_.back().is_zero()) {
            terms_.pop_back();
            if (!diffs_.empty()) diffs_.pop_back();
        }
    }

    int offset_ = 0;
    std::vector<GradedGroup> terms_;
    std::vector<GradedMorphism> diffs_;
};

// Chain map of complexes: one degree-preserving map per column, commuting
// with the differentials (verified).
class ComplexMap {
  public:
    ComplexMap(AbComplex source, AbComplex target, std::map<int, GradedMorphism> maps)
        : source_(std::move(source)), target_(std::move(target)) {
        for (auto& [i, f] : maps) {
            if (f.source() != source_.term(i) || f.target() != target_.term(i))
                throw validation_error("chain map: wrong groups at column " + std::to_string(i));
            if (!f.is_zero()) maps_.emplace(i, std::move(f));
        }
        int a = std::min(source_.lo(), target_.lo()) - 1;
        int b = std::max(source_.hi(), target_.hi());
        for (int i = a; i <= b; ++i)
            if (compose(at(i + 1), source_.diff(i)) != compose(target_.diff(i), at(i)))
                throw validation_error("not a chain map at column " + std::to_string(i));
    }
    static ComplexMap zero(AbComplex source, AbComplex target) {
        return ComplexMap(std::move(source), std::move(target), {});
    }
    static ComplexMap identity(const AbComplex& c) {
        std::map<int, GradedMorphism> maps;
        for (int i = c.lo(); i <= c.hi(); ++i)
            maps.emplace(i, GradedMorphism::identity(c.term(i)));
        return ComplexMap(c, c, std::move(maps));
    }

    const AbComplex& source() const { return source_; }
    const AbComplex& target() const { return target_; }
    GradedMorphism at(int i) const {
        auto it = maps_.find(i);
        return it == maps_.end() ? GradedMorphism::zero(source_.term(i), target_.term(i))
                                 : it->second;
    }

  private:
    AbComplex source_, target_;
    std::map<int, GradedMorphism> maps_;
};

// Mapping cone: term i = X^{i+1} + Y^i, differential (x,y) -> (-dx, f(x)+dy).
inline AbComplex cone(const ComplexMap& f) {
    const AbComplex& x = f.source();
    const AbComplex& y = f.target();
    if (x.is_zero() && y.is_zero()) return AbComplex();
    int a = y.lo(), b = y.hi();
    if (!x.is_zero()) {
        a = y.is_zero() ? x.lo() - 1 : std::min(x.lo() - 1, a);
        b = y.is_zero() ? x.hi() - 1 : std::max(x.hi() - 1, b);
    }
    std::vector<GradedDirectSum> sums;
    std::vector<GradedGroup> terms;
    for (int i = a; i <= b; ++i) {
        sums.push_back(graded_direct_sum({x.term(i + 1), y.term(i)}));
        terms.push_back(sums.back().group);
    }
    std::vector<GradedMorphism> diffs;
    for (int i = a; i < b; ++i) {
        const GradedDirectSum& s = sums[i - a];
        const GradedDirectSum& t = sums[i - a + 1];
        GradedMorphism d = compose(t.inj[0], compose(-x.diff(i + 1), s.proj[0])) +
                           compose(t.inj[1], compose(f.at(i + 1), s.proj[0])) +
                           compose(t.inj[1], compose(y.diff(i), s.proj[1]));
        diffs.push_back(std::move(d));
    }
    return AbComplex(a, std::move(terms), std::move(diffs));
}

// Column i of the result = column i+k of the input; odd shifts flip the sign
// of the differential.
inline AbComplex shift(const AbComplex& c, int k) {
    if (c.is_zero()) return c;
    std::vector<GradedGroup> terms;
    std::vector<GradedMorphism> diffs;
    for (int i = c.lo(); i <= c.hi(); ++i) terms.push_back(c.term(i));
    for (int i = c.lo(); i < c.hi(); ++i)
        diffs.push_back(k % 2 == 0 ? c.diff(i) : -c.diff(i));
    return AbComplex(c.lo() - k, std::move(terms), std::move(diffs));
}

// Blockwise direct sum of complexes, aligned by column index.
inline AbComplex direct_sum(const std::vector<AbComplex>& parts) {
    bool any = false;
    int a = 0, b = 0;
    for (const auto& p : parts) {
        if (p.is_zero()) continue;
        a = any ? std::min(a, p.lo()) : p.lo();
        b = any ? std::max(b, p.hi()) : p.hi();
        any = true;
    }
    if (!any) return AbComplex();
    std::vector<GradedDirectSum> sums;
    std::vector<GradedGroup> terms;
    for (int i = a; i <= b; ++i) {
        std::vector<GradedGroup> slice;
        for (const auto& p : parts) slice.push_back(p.term(i));
        sums.push_back(graded_direct_sum(slice));
        terms.push_back(sums.back().group);
    }
    std::vector<GradedMorphism> diffs;
    for (int i = a; i < b; ++i) {
        GradedMorphism d = GradedMorphism::zero(terms[i - a], terms[i - a + 1]);
        for (std::size_t k = 0; k < parts.size(); ++k)
            d = d + compose(sums[i - a + 1].inj[k],
                            compose(parts[k].diff(i), sums[i - a].proj[k]));
        diffs.push_back(std::move(d));
    }
    return AbComplex(a, std::move(terms), std::move(diffs));
}

// Double complex on a finite grid: entry (i,j) with a horizontal differential
// to (i+1,j) and a vertical one to (i,j+1).  Squares are stored commuting;
// the Koszul sign (-1)^i enters when the total complex is assembled.
struct Bicomplex {
    std::map<std::pair<int, int>, GradedGroup> entries;
    std::map<std::pair<int, int>, GradedMorphism> horiz, vert;

    const GradedGroup& entry(int i, int j) const {
        static const GradedGroup zero;
        auto it = entries.find({i, j});
        return it == entries.end() ? zero : it->second;
    }
    GradedMorphism h(int i, int j) const {
        auto it = horiz.find({i, j});
        return it == horiz.end() ? GradedMorphism::zero(entry(i, j), entry(i + 1, j))
                                 : it->second;
    }
    GradedMorphism v(int i, int j) const {
        auto it = vert.find({i, j});
        return it == vert.end() ? GradedMorphism::zero(entry(i, j), entry(i, j + 1))
                                : it->second;
    }
};

inline AbComplex total(const Bicomplex& b) {
    if (b.entries.empty()) return AbComplex();
    for (const auto& [ij, f] : b.horiz)
        if (f.source() != b.entry(ij.first, ij.second) ||
            f.target() != b.entry(ij.first + 1, ij.second))
            throw validation_error("bicomplex: horizontal map at (" +
                                   std::to_string(ij.first) + "," + std::to_string(ij.second) +
                                   ") does not match its entries");
    for (const auto& [ij, f] : b.vert)
        if (f.source() != b.entry(ij.first, ij.second) ||
            f.target() != b.entry(ij.first, ij.second + 1))
            throw validation_error("bicomplex: vertical map at (" + std::to_string(ij.first) +
                                   "," + std::to_string(ij.second) +
                                   ") does not match its entries");
    for (const auto& [ij, g] : b.entries) {
        (void)g;
        auto [i, j] = ij;
        if (!compose(b.h(i + 1, j), b.h(i, j)).is_zero())
            throw validation_error("bicomplex: horizontal d o d != 0 at (" +
                                   std::to_string(i) + "," + std::to_string(j) + ")");
        if (!compose(b.v(i, j + 1), b.v(i, j)).is_zero())
            throw validation_error("bicomplex: vertical d o d != 0 at (" + std::to_string(i) +
                                   "," + std::to_string(j) + ")");
        if (compose(b.v(i + 1, j), b.h(i, j)) != compose(b.h(i, j + 1), b.v(i, j)))
            throw validation_error("bicomplex: square at (" + std::to_string(i) + "," +
                                   std::to_string(j) + ") does not commute");
    }
    int a = 0, z = 0;
    bool first = true;
    std::map<int, std::vector<std::pair<int, int>>> cols;
    for (const auto& [ij, g] : b.entries) {
        if (g.is_zero()) continue;
        int m = ij.first + ij.second;
        cols[m].push_back(ij);
        a = first ? m : std::min(a, m);
        z = first ? m : std::max(z, m);
        first = false;
    }
    if (first) return AbComplex();
    for (auto& [m, list] : cols) {
        (void)m;
        std::sort(list.begin(), list.end());
    }
    std::vector<GradedDirectSum> sums;
    std::vector<GradedGroup> terms;
    std::vector<std::map<std::pair<int, int>, int>> pos(z - a + 1);
    for (int m = a; m <= z; ++m) {
        std::vector<GradedGroup> slice;
        for (std::size_t k = 0; k < cols[m].size(); ++k) {
            pos[m - a][cols[m][k]] = int(k);
            slice.push_back(b.entry(cols[m][k].first, cols[m][k].second));
        }
        sums.push_back(graded_direct_sum(slice));
        terms.push_back(sums.back().group);
    }
    std::vector<GradedMorphism> diffs;
    for (int m = a; m < z; ++m) {
        GradedMorphism d = GradedMorphism::zero(terms[m - a], terms[m - a + 1]);
        for (const auto& ij : cols[m]) {
            auto [i, j] = ij;
            const GradedMorphism& from = sums[m - a].proj[pos[m - a].at(ij)];
            auto tpos = pos[m - a + 1].find({i + 1, j});
            if (tpos != pos[m - a + 1].end())
                d = d + compose(sums[m - a + 1].inj[tpos->second], compose(b.h(i, j), from));
            tpos = pos[m - a + 1].find({i, j + 1});
            if (tpos != pos[m - a + 1].end()) {
                GradedMorphism step = compose(b.v(i, j), from);
                if (pos_mod(Int(i), Int(2)) == 1) step = -step;
                d = d + compose(sums[m - a + 1].inj[tpos->second], step);
            }
        }
        diffs.push_back(std::move(d));
    }
    return AbComplex(a, std::move(terms), std::move(diffs));
}

// Homology at one column, degree by degree.
inline GradedGroup homology(const AbComplex& c, int i) {
    std::map<int, FinAbGroup> parts;
    GradedMorphism in = c.diff(i - 1), out = c.diff(i);
    for (const auto& [n, g] : c.term(i).parts()) {
        (void)g;
        FinAbGroup h = homology_at(in.at(n), out.at(n));
        if (!h.is_zero()) parts[n] = h;
    }
    return GradedGroup(std::move(parts));
}

// Full table (column, degree) -> homology, nonzero entries only.
inline std::map<std::pair<int, int>, FinAbGroup> e2_page(const AbComplex& c) {
    std::map<std::pair<int, int>, FinAbGroup> table;
    for (int i = c.lo(); i <= c.hi(); ++i) {
        GradedGroup h = homology(c, i);
        for (const auto& [n, g] : h.parts()) table[{i, n}] = g;
    }
    return table;
}

// Alternating sum of the columns' classes, one GroupClass per degree.
// Column signs use the true column index, so shifting flips the sign.
inline std::map<int, GroupClass> euler_chi(const AbComplex& c) {
    std::map<int, GroupClass> chi;
    for (int i = c.lo(); i <= c.hi(); ++i) {
        bool odd = pos_mod(Int(i), Int(2)) == 1;
        for (const auto& [n, g] : c.term(i).parts()) {
            GroupClass cls = group_class(g);
            chi[n] += odd ? -cls : cls;
        }
    }
    for (auto it = chi.begin(); it != chi.end();)
        it = it->second.is_zero() ? chi.erase(it) : std::next(it);
    return chi;
}

}  // namespace motive
