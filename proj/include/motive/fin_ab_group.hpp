#pragma once

#include <map>
#include <vector>

#include "motive/smith.hpp"

namespace motive {

// Finitely generated abelian group in canonical form: Z^rank + Z/d1 + ... + Z/dt
// with 2 <= d1 | d2 | ... | dt.  Canonical generator order is free generators
// first, then torsion generators by increasing invariant factor.
class FinAbGroup {
  public:
    FinAbGroup() = default;
    FinAbGroup(int rank, std::vector<Int> torsion) : rank_(rank), torsion_(std::move(torsion)) {
        if (rank_ < 0) throw validation_error("group rank must be nonnegative");
        for (std::size_t i = 0; i < torsion_.size(); ++i) {
            if (torsion_[i] < 2) throw validation_error("invariant factors must be >= 2");
            if (i && torsion_[i] % torsion_[i - 1] != 0)
                throw validation_error("invariant factors must form a divisibility chain");
        }
    }
    static FinAbGroup zero() { return FinAbGroup(); }
    static FinAbGroup free(int rank) { return FinAbGroup(rank, {}); }
    static FinAbGroup cyclic(const Int& n) {
        if (n == 0) return free(1);
        Int m = motive::abs(n);
        if (m == 1) return zero();
        return FinAbGroup(0, {m});
    }

    int rank() const { return rank_; }
    const std::vector<Int>& torsion() const { return torsion_; }
    int gens() const { return rank_ + int(torsion_.size()); }
    bool is_zero() const { return rank_ == 0 && torsion_.empty(); }
    bool is_finite() const { return rank_ == 0; }

    // Order of the i-th canonical generator; 0 means infinite.
    Int order(int i) const { return i < rank_ ? Int(0) : torsion_[i - rank_]; }
    std::vector<Int> orders() const {
        std::vector<Int> o(gens());
        for (int i = 0; i < gens(); ++i) o[i] = order(i);
        return o;
    }

    // gens x torsion-count matrix whose column span is the relation lattice.
    IntMatrix relation_matrix() const {
        IntMatrix r(gens(), int(torsion_.size()));
        for (int k = 0; k < int(torsion_.size()); ++k) r(rank_ + k, k) = torsion_[k];
        return r;
    }

    bool operator==(const FinAbGroup& o) const {
        return rank_ == o.rank_ && torsion_ == o.torsion_;
    }
    bool operator!=(const FinAbGroup& o) const { return !(*this == o); }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string s;
        auto append = [&s](const std::string& part) {
            if (!s.empty()) s += " + ";
            s += part;
        };
        if (rank_ == 1) append("Z");
        else if (rank_ > 1) append("Z^" + std::to_string(rank_));
        for (std::size_t i = 0; i < torsion_.size();) {
            std::size_t j = i;
            while (j < torsion_.size() && torsion_[j] == torsion_[i]) ++j;
            std::string cyc = "Z/" + torsion_[i].str();
            if (j - i == 1) append(cyc);
            else append("(" + cyc + ")^" + std::to_string(j - i));
            i = j;
        }
        return s;
    }

  private:
    int rank_ = 0;
    std::vector<Int> torsion_;
};

// A group presented as Z^gens / span(relations), together with the
// change of basis onto canonical form:
//   pr  (group.gens() x gens):  class of a presentation vector in canonical
//                               generators,
//   sec (gens x group.gens()):  an integer lift of each canonical generator,
// with pr * sec == identity, and sec * pr == identity modulo relations.
struct PresentedGroup {
    FinAbGroup group;
    IntMatrix pr, sec;
};

inline PresentedGroup presented_group(int gens, const IntMatrix& relations) {
    if (relations.rows() != gens) throw validation_error("relation matrix row count mismatch");
    // A presentation that is already in canonical shape (free generators
    // first, one ascending invariant factor per relation column, on the
    // diagonal of the torsion block) keeps its generators untouched.  Unit
    // laws like summing a single group or tensoring with Z stay equalities
    // on the nose this way, whatever the elimination happens to do.
    if (relations.cols() <= gens) {
        int t = relations.cols(), rank = gens - t;
        bool canonical = true;
        std::vector<Int> tors;
        for (int k = 0; k < t && canonical; ++k) {
            for (int i = 0; i < gens; ++i)
                if (i != rank + k && relations(i, k) != 0) canonical = false;
            const Int& o = relations(rank + k, k);
            if (o < 2 || (k > 0 && o % tors.back() != 0)) canonical = false;
            if (canonical) tors.push_back(o);
        }
        if (canonical) {
            PresentedGroup p;
            p.group = FinAbGroup(rank, tors);
            p.pr = IntMatrix::identity(gens);
            p.sec = IntMatrix::identity(gens);
            return p;
        }
    }
    SmithDecomposition s = smith(relations);
    std::vector<Int> order(gens, Int(0));
    for (int i = 0; i < int(s.diag.size()); ++i) order[i] = s.diag[i];
    std::vector<int> kept;  // free coordinates first, then torsion ascending
    for (int i = 0; i < gens; ++i)
        if (order[i] == 0) kept.push_back(i);
    std::vector<Int> tors;
    for (int i = 0; i < gens; ++i)
        if (order[i] >= 2) kept.push_back(i), tors.push_back(order[i]);
    int rank = int(kept.size() - tors.size());

    PresentedGroup p;
    p.group = FinAbGroup(rank, tors);
    p.pr = IntMatrix(int(kept.size()), gens);
    p.sec = IntMatrix(gens, int(kept.size()));
    for (int k = 0; k < int(kept.size()); ++k)
        for (int j = 0; j < gens; ++j) {
            p.pr(k, j) = s.u(kept[k], j);
            p.sec(j, k) = s.uinv(j, kept[k]);
        }
    return p;
}

inline FinAbGroup cokernel(const IntMatrix& a) { return presented_group(a.rows(), a).group; }

// Quotient of two lattices span(big) / span(small); requires containment.
inline FinAbGroup lattice_quotient(const IntMatrix& big, const IntMatrix& small) {
    IntMatrix basis = column_basis(big);
    auto x = solve_integer(basis, small);
    if (!x) throw validation_error("lattice_quotient: second lattice not contained in first");
    return cokernel(*x);
}

// Canonical direct sum, with the canonical injections and projections as
// generator matrices (inj[k]: part k -> sum, proj[k]: sum -> part k).
struct DirectSum {
    FinAbGroup group;
    std::vector<IntMatrix> inj, proj;
};

inline DirectSum direct_sum(const std::vector<FinAbGroup>& parts) {
    int total = 0;
    for (const auto& g : parts) total += g.gens();
    std::vector<Int> orders;
    orders.reserve(total);
    for (const auto& g : parts)
        for (int i = 0; i < g.gens(); ++i) orders.push_back(g.order(i));
    int nrel = 0;
    for (const auto& o : orders)
        if (o != 0) ++nrel;
    IntMatrix rel(total, nrel);
    for (int i = 0, k = 0; i < total; ++i)
        if (orders[i] != 0) rel(i, k++) = orders[i];
    PresentedGroup p = presented_group(total, rel);

    DirectSum ds;
    ds.group = p.group;
    int off = 0;
    for (const auto& g : parts) {
        ds.inj.push_back(p.pr.submatrix(0, off, p.group.gens(), g.gens()));
        ds.proj.push_back(p.sec.submatrix(off, 0, g.gens(), p.group.gens()));
        off += g.gens();
    }
    return ds;
}

// Class in the Grothendieck group of finitely generated abelian groups:
// a free rank plus, for each prime p, the multiset of p-power orders with
// (possibly negative) multiplicities.
struct GroupClass {
    long long rank = 0;
    std::map<Int, std::map<int, long long>> primary;  // prime -> exponent -> multiplicity

    void prune() {
        for (auto it = primary.begin(); it != primary.end();) {
            for (auto jt = it->second.begin(); jt != it->second.end();)
                jt = jt->second == 0 ? it->second.erase(jt) : std::next(jt);
            it = it->second.empty() ? primary.erase(it) : std::next(it);
        }
    }
    bool is_zero() const {
        if (rank != 0) return false;
        for (const auto& [p, m] : primary)
            for (const auto& [e, c] : m)
                if (c != 0) return false;
        return true;
    }
    GroupClass& operator+=(const GroupClass& o) {
        rank += o.rank;
        for (const auto& [p, m] : o.primary)
            for (const auto& [e, c] : m) primary[p][e] += c;
        prune();
        return *this;
    }
    GroupClass operator+(const GroupClass& o) const {
        GroupClass r = *this;
        r += o;
        return r;
    }
    GroupClass operator-() const {
        GroupClass r = *this;
        r.rank = -r.rank;
        for (auto& [p, m] : r.primary)
            for (auto& [e, c] : m) c = -c;
        return r;
    }
    GroupClass operator-(const GroupClass& o) const { return *this + (-o); }
    bool operator==(const GroupClass& o) const {
        GroupClass d = *this - o;
        return d.is_zero();
    }
    bool operator!=(const GroupClass& o) const { return !(*this == o); }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string s = "rank " + std::to_string(rank);
        for (const auto& [p, m] : primary)
            for (const auto& [e, c] : m) {
                Int q = 1;
                for (int i = 0; i < e; ++i) q *= p;
                s += ", " + std::to_string(c) + " x Z/" + q.str();
            }
        return s;
    }
};

inline std::map<Int, int> factorize(Int n) {
    std::map<Int, int> f;
    for (Int p = 2; p * p <= n; ++p)
        while (n % p == 0) {
            ++f[p];
            n /= p;
        }
    if (n > 1) ++f[n];
    return f;
}

inline GroupClass group_class(const FinAbGroup& g) {
    GroupClass c;
    c.rank = g.rank();
    for (const auto& d : g.torsion())
        for (const auto& [p, e] : factorize(d)) ++c.primary[p][e];
    c.prune();
    return c;
}

// Inverse of group_class on genuine (nonnegative) classes.
inline FinAbGroup reconstruct(const GroupClass& c) {
    if (c.rank < 0) throw validation_error("reconstruct: negative rank");
    std::size_t levels = 0;
    for (const auto& [p, m] : c.primary) {
        long long count = 0;
        for (const auto& [e, mult] : m) {
            if (mult < 0) throw validation_error("reconstruct: negative multiplicity");
            count += mult;
        }
        levels = std::max(levels, std::size_t(count));
    }
    // Largest invariant factor takes the largest p-power of every prime.
    std::vector<Int> desc(levels, Int(1));
    for (const auto& [p, m] : c.primary) {
        std::vector<int> exps;
        for (auto it = m.rbegin(); it != m.rend(); ++it)
            for (long long k = 0; k < it->second; ++k) exps.push_back(it->first);
        for (std::size_t i = 0; i < exps.size(); ++i) {
            Int q = 1;
            for (int j = 0; j < exps[i]; ++j) q *= p;
            desc[i] *= q;
        }
    }
    std::vector<Int> asc(desc.rbegin(), desc.rend());
    return FinAbGroup(int(c.rank), asc);
}

// Canonical form of a direct sum of cyclic groups given by generator orders
// (0 = infinite order, 1 = trivial summand).
inline FinAbGroup from_cyclic_orders(const std::vector<Int>& orders) {
    GroupClass c;
    for (const auto& o : orders) {
        if (o == 0) ++c.rank;
        else
            for (const auto& [p, e] : factorize(o)) ++c.primary[p][e];
    }
    c.prune();
    return reconstruct(c);
}

}  // namespace motive
