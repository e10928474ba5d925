#pragma once

#include "motive/fin_ab_group.hpp"

namespace motive {

// Morphism of finitely generated abelian groups, stored as an integer matrix
// on canonical generators (column j = image of generator j of the source).
// Rows hitting torsion generators are kept reduced mod the invariant factor,
// so equal morphisms have equal matrices.
class AbMorphism {
  public:
    AbMorphism() = default;
    AbMorphism(FinAbGroup source, FinAbGroup target, IntMatrix mat)
        : source_(std::move(source)), target_(std::move(target)), mat_(std::move(mat)) {
        if (mat_.rows() != target_.gens() || mat_.cols() != source_.gens())
            throw validation_error("morphism matrix shape mismatch: expected " +
                                   std::to_string(target_.gens()) + "x" +
                                   std::to_string(source_.gens()) + ", got " + mat_.to_string());
        normalize();
        validate();
    }

    static AbMorphism zero(const FinAbGroup& source, const FinAbGroup& target) {
        return AbMorphism(source, target, IntMatrix(target.gens(), source.gens()));
    }
    static AbMorphism identity(const FinAbGroup& g) {
        return AbMorphism(g, g, IntMatrix::identity(g.gens()));
    }

    const FinAbGroup& source() const { return source_; }
    const FinAbGroup& target() const { return target_; }
    const IntMatrix& matrix() const { return mat_; }

    bool is_zero() const { return mat_.is_zero(); }

    AbMorphism operator+(const AbMorphism& o) const {
        require_parallel(o);
        return AbMorphism(source_, target_, mat_ + o.mat_);
    }
    AbMorphism operator-(const AbMorphism& o) const {
        require_parallel(o);
        return AbMorphism(source_, target_, mat_ - o.mat_);
    }
    AbMorphism operator-() const { return AbMorphism(source_, target_, -mat_); }
    AbMorphism operator*(const Int& c) const { return AbMorphism(source_, target_, mat_ * c); }

    bool operator==(const AbMorphism& o) const {
        return source_ == o.source_ && target_ == o.target_ && mat_ == o.mat_;
    }
    bool operator!=(const AbMorphism& o) const { return !(*this == o); }

  private:
    void require_parallel(const AbMorphism& o) const {
        if (source_ != o.source_ || target_ != o.target_)
            throw validation_error("morphism arithmetic on mismatched groups");
    }
    void normalize() {
        for (int i = target_.rank(); i < target_.gens(); ++i) {
            const Int& m = target_.order(i);
            for (int j = 0; j < source_.gens(); ++j) mat_(i, j) = pos_mod(mat_(i, j), m);
        }
    }
    void validate() const {
        for (int j = 0; j < source_.gens(); ++j) {
            const Int oj = source_.order(j);
            if (oj == 0) continue;
            for (int i = 0; i < target_.gens(); ++i) {
                const Int oi = target_.order(i);
                const Int v = oj * mat_(i, j);
                bool ok = (oi == 0) ? v == 0 : v % oi == 0;
                if (!ok)
                    throw validation_error("not a morphism: generator " + std::to_string(j) +
                                           " of order " + oj.str() + " maps outside the target (" +
                                           mat_.to_string() + ")");
            }
        }
    }

    FinAbGroup source_, target_;
    IntMatrix mat_;
};

// f after g.
inline AbMorphism compose(const AbMorphism& f, const AbMorphism& g) {
    if (g.target() != f.source()) throw validation_error("composition source/target mismatch");
    return AbMorphism(g.source(), f.target(), f.matrix() * g.matrix());
}

// Homology at G of  A --g--> G --f--> C  with f o g == 0.
// Representative arithmetic: an element of ker f is a generator vector v with
// f(v) in the relation lattice of C; the kernel is span(v's) modulo relations
// of G, and we then divide by the image lattice of g.
inline FinAbGroup homology_at(const AbMorphism& g, const AbMorphism& f) {
    if (g.target() != f.source()) throw validation_error("homology_at: groups do not match");
    if (!compose(f, g).is_zero()) throw validation_error("homology_at: composition is not zero");
    const FinAbGroup& mid = f.source();
    const int m = mid.gens();

    // Kernel of the induced map on representatives: {v : F v in rel(C)}.
    IntMatrix fr = f.matrix().augmented(f.target().relation_matrix());
    IntMatrix kb = kernel_basis(fr);
    IntMatrix kbasis = column_basis(kb.submatrix(0, 0, m, kb.cols()));

    // Lattice to divide by: image of g together with relations of G.
    IntMatrix sub = g.matrix().augmented(mid.relation_matrix());
    auto x = solve_integer(kbasis, sub);
    if (!x) throw validation_error("homology_at: incoming image does not lie in the kernel");
    return cokernel(*x);
}

// Convenience: homology with zero maps on either side.
inline FinAbGroup homology_at(const FinAbGroup& g, const AbMorphism& f) {
    return homology_at(AbMorphism::zero(FinAbGroup::zero(), g), f);
}

}  // namespace motive
