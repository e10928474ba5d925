#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "motive/errors.hpp"
#include "motive/motive_class.hpp"

namespace motive {

// A named building block with a declared dimension.  The same name must keep
// the same dimension wherever it appears inside one expression.
struct AtomSymbol {
    std::string name;
    int dimension = 0;
};

// Formal description of how a variety is assembled from atoms and standard
// spaces.  Construction validates the dimension bookkeeping immediately, so
// an expression that exists is one whose pieces fit together.
class VarietyExpr {
  public:
    enum class Kind {
        Atom,
        Empty,
        Point,
        Affine,
        Proj,
        DisjointUnion,
        Product,
        Complement,
        Cone,
        ProjBundle,
        Blowup,
        Fibration,
    };

    static VarietyExpr atom(const std::string& name, int dimension) {
        if (name.empty()) throw validation_error("atom needs a name");
        if (dimension < 0) throw validation_error("atom " + name + " has negative dimension");
        VarietyExpr e(Kind::Atom);
        e.sym_ = AtomSymbol{name, dimension};
        e.dim_ = dimension;
        return e;
    }
    static VarietyExpr empty() { return VarietyExpr(Kind::Empty); }
    static VarietyExpr point() {
        VarietyExpr e(Kind::Point);
        e.dim_ = 0;
        return e;
    }
    static VarietyExpr affine(int n) {
        if (n < 0) throw validation_error("affine space of negative dimension");
        VarietyExpr e(Kind::Affine);
        e.param_ = n;
        e.dim_ = n;
        return e;
    }
    static VarietyExpr proj(int n) {
        if (n < 0) throw validation_error("projective space of negative dimension");
        VarietyExpr e(Kind::Proj);
        e.param_ = n;
        e.dim_ = n;
        return e;
    }
    static VarietyExpr disjoint_union(VarietyExpr a, VarietyExpr b) {
        VarietyExpr e(Kind::DisjointUnion);
        e.dim_ = max_dim(a.dim_, b.dim_);
        e.children_ = {std::move(a), std::move(b)};
        return e;
    }
    static VarietyExpr product(VarietyExpr a, VarietyExpr b) {
        VarietyExpr e(Kind::Product);
        e.dim_ = sum_dim(a.dim_, b.dim_);
        e.children_ = {std::move(a), std::move(b)};
        return e;
    }
    // whole minus a closed piece of it
    static VarietyExpr complement(VarietyExpr whole, VarietyExpr closed) {
        if (closed.dim_ && (!whole.dim_ || *closed.dim_ > *whole.dim_))
            throw validation_error("complement: removed piece has larger dimension than the variety");
        VarietyExpr e(Kind::Complement);
        e.dim_ = whole.dim_;
        e.children_ = {std::move(whole), std::move(closed)};
        return e;
    }
    // affine cone with the given base: the vertex plus a punctured cone
    static VarietyExpr cone(VarietyExpr base) {
        VarietyExpr e(Kind::Cone);
        e.dim_ = base.dim_ ? *base.dim_ + 1 : 0;
        e.children_ = {std::move(base)};
        return e;
    }
    // bundle of projective (rank-1)-spaces over the base
    static VarietyExpr proj_bundle(VarietyExpr base, int rank) {
        if (rank < 1) throw validation_error("projective bundle needs rank at least 1");
        VarietyExpr e(Kind::ProjBundle);
        e.param_ = rank;
        if (base.dim_) e.dim_ = *base.dim_ + rank - 1;
        e.children_ = {std::move(base)};
        return e;
    }
    // blow up the ambient variety along a center of codimension codim
    static VarietyExpr blowup(VarietyExpr ambient, VarietyExpr center, int codim) {
        if (codim < 1) throw validation_error("blowup center needs codimension at least 1");
        if (center.dim_) {
            if (!ambient.dim_ || *center.dim_ + codim != *ambient.dim_)
                throw validation_error("blowup: center dimension plus codimension must equal the ambient dimension");
        }
        VarietyExpr e(Kind::Blowup);
        e.param_ = codim;
        e.dim_ = ambient.dim_;
        e.children_ = {std::move(ambient), std::move(center)};
        return e;
    }
    // fibration with fiber a and base b, locally trivial in the Zariski sense
    static VarietyExpr fibration(VarietyExpr fiber, VarietyExpr base) {
        VarietyExpr e(Kind::Fibration);
        e.dim_ = sum_dim(fiber.dim_, base.dim_);
        e.children_ = {std::move(fiber), std::move(base)};
        return e;
    }

    Kind kind() const { return kind_; }
    int param() const { return param_; }
    const AtomSymbol& symbol() const { return sym_; }
    const std::vector<VarietyExpr>& children() const { return children_; }
    // empty expressions have no dimension
    std::optional<int> dimension() const { return dim_; }

  private:
    explicit VarietyExpr(Kind k) : kind_(k) {}

    static std::optional<int> max_dim(std::optional<int> a, std::optional<int> b) {
        if (!a) return b;
        if (!b) return a;
        return std::max(*a, *b);
    }
    static std::optional<int> sum_dim(std::optional<int> a, std::optional<int> b) {
        if (!a || !b) return std::nullopt;
        return *a + *b;
    }

    Kind kind_;
    int param_ = 0;
    AtomSymbol sym_;
    std::vector<VarietyExpr> children_;
    std::optional<int> dim_;
};

namespace detail {

inline void collect_atom_dims(const VarietyExpr& e, std::map<std::string, int>& dims) {
    if (e.kind() == VarietyExpr::Kind::Atom) {
        auto [it, inserted] = dims.emplace(e.symbol().name, e.symbol().dimension);
        if (!inserted && it->second != e.symbol().dimension)
            throw validation_error("atom " + e.symbol().name + " appears with two different dimensions");
    }
    for (const VarietyExpr& child : e.children()) collect_atom_dims(child, dims);
}

inline MotiveClass class_rec(const VarietyExpr& e) {
    using Kind = VarietyExpr::Kind;
    switch (e.kind()) {
        case Kind::Atom:
            return MotiveClass::atom_class(e.symbol().name);
        case Kind::Empty:
            return MotiveClass::zero();
        case Kind::Point:
            return MotiveClass::one();
        case Kind::Affine:
            return MotiveClass::tate(e.param());
        case Kind::Proj:
            return projective_space_class(e.param());
        case Kind::DisjointUnion:
            return class_rec(e.children()[0]) + class_rec(e.children()[1]);
        case Kind::Product:
        case Kind::Fibration:
            return class_rec(e.children()[0]) * class_rec(e.children()[1]);
        case Kind::Complement:
            return class_rec(e.children()[0]) - class_rec(e.children()[1]);
        case Kind::Cone: {
            MotiveClass y = class_rec(e.children()[0]);
            return MotiveClass::one() + y * MotiveClass::tate(1) - y;
        }
        case Kind::ProjBundle:
            return class_rec(e.children()[0]) * projective_space_class(e.param() - 1);
        case Kind::Blowup: {
            MotiveClass x = class_rec(e.children()[0]);
            MotiveClass y = class_rec(e.children()[1]);
            return x - y + y * projective_space_class(e.param() - 1);
        }
    }
    throw error("unhandled expression kind");
}

}  // namespace detail

// The class of the variety in the free ring on its atoms and L.  Cutting,
// pasting and fibering are resolved; only atoms remain symbolic.
inline MotiveClass class_of(const VarietyExpr& e) {
    std::map<std::string, int> dims;
    detail::collect_atom_dims(e, dims);
    return detail::class_rec(e);
}

}  // namespace motive
