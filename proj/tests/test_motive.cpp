#include <doctest.h>

#include <random>
#include <vector>

#include "motive/invariants.hpp"
#include "motive/variety_expr.hpp"
#include "variety_gen.hpp"

using namespace motive;

namespace {

using E = VarietyExpr;

// disjoint union of the cells indexed by the mask bits; empty mask = empty
E cell_union(const std::vector<E>& cells, unsigned mask) {
    E out = E::empty();
    for (std::size_t i = 0; i < cells.size(); ++i)
        if (mask & (1u << i)) out = E::disjoint_union(out, cells[i]);
    return out;
}

}  // namespace

TEST_CASE("classes of standard spaces") {
    CHECK(class_of(E::point()) == MotiveClass::one());
    CHECK(class_of(E::point()).to_string() == "1");
    CHECK(class_of(E::empty()).is_zero());
    CHECK(class_of(E::empty()).to_string() == "0");
    for (int n = 0; n <= 5; ++n) CHECK(class_of(E::affine(n)) == MotiveClass::tate(n));
    CHECK(class_of(E::proj(0)) == MotiveClass::one());
    CHECK(class_of(E::proj(2)).to_string() == "1 + L + L^2");
    CHECK(class_of(E::proj(2)) ==
          MotiveClass::one() + MotiveClass::tate(1) + MotiveClass::tate(2));
}

TEST_CASE("affine space as a projective complement") {
    for (int n = 1; n <= 6; ++n)
        CHECK(class_of(E::affine(n)) ==
              class_of(E::complement(E::proj(n), E::proj(n - 1))));
}

TEST_CASE("the punctured line") {
    E cstar = E::complement(E::proj(1), E::disjoint_union(E::point(), E::point()));
    CHECK(class_of(cstar) == MotiveClass::tate(1) - MotiveClass::one());
    CHECK(class_of(cstar).to_string() == "L - 1");
    CHECK(class_of(cstar) != class_of(E::affine(1)));
}

TEST_CASE("cone classes") {
    E y = E::atom("Y", 1);
    CHECK(class_of(E::cone(y)).to_string() == "1 + Y*L - Y");
    // cone over a line in the plane is the plane
    CHECK(class_of(E::cone(E::proj(1))) == class_of(E::affine(2)));
    CHECK(class_of(E::cone(E::empty())) == MotiveClass::one());
    CHECK(E::cone(E::empty()).dimension() == 0);
    CHECK(E::cone(y).dimension() == 2);
}

TEST_CASE("bundles and blowups") {
    E b = E::blowup(E::proj(2), E::point(), 2);
    CHECK(class_of(b).to_string() == "1 + 2L + L^2");
    CHECK(class_of(b) == class_of(E::proj(2)) + MotiveClass::tate(1));

    E y = E::atom("Y", 1);
    CHECK(class_of(E::proj_bundle(y, 2)) ==
          class_of(y) * (MotiveClass::one() + MotiveClass::tate(1)));
    CHECK(class_of(E::proj_bundle(E::point(), 3)) == class_of(E::proj(2)));

    // blowing up along nothing changes nothing
    CHECK(class_of(E::blowup(E::proj(3), E::empty(), 2)) == class_of(E::proj(3)));
}

TEST_CASE("dimension bookkeeping is enforced") {
    CHECK_THROWS_AS(E::blowup(E::proj(2), E::proj(1), 2), validation_error);
    CHECK_THROWS_AS(E::blowup(E::empty(), E::point(), 1), validation_error);
    CHECK_THROWS_AS(E::complement(E::point(), E::proj(1)), validation_error);
    CHECK_THROWS_AS(E::complement(E::empty(), E::point()), validation_error);
    CHECK_THROWS_AS(E::proj_bundle(E::point(), 0), validation_error);
    CHECK_THROWS_AS(E::blowup(E::proj(2), E::point(), 0), validation_error);
    CHECK_THROWS_AS(E::affine(-1), validation_error);
    CHECK_THROWS_AS(E::proj(-1), validation_error);
    CHECK_THROWS_AS(E::atom("", 0), validation_error);
    CHECK_THROWS_AS(E::atom("Y", -1), validation_error);

    // same name, two dimensions, caught across the whole tree
    E clash = E::product(E::atom("Y", 1), E::cone(E::atom("Y", 2)));
    CHECK_THROWS_WITH_AS(class_of(clash),
                         "atom Y appears with two different dimensions", validation_error);
}

TEST_CASE("normal form arithmetic") {
    MotiveClass y = MotiveClass::atom_class("Y");
    CHECK((MotiveClass::one() + y) * (MotiveClass::one() + y) ==
          MotiveClass::one() + MotiveClass::constant(2) * y + y * y);
    CHECK((MotiveClass::tate(1) + MotiveClass::one()) *
              (MotiveClass::tate(1) - MotiveClass::one()) ==
          MotiveClass::tate(2) - MotiveClass::one());
    CHECK((y - y).is_zero());
    CHECK(MotiveClass::constant(-3).to_string() == "-3");
    CHECK((MotiveClass::constant(2) * y * y * MotiveClass::tate(3)).to_string() == "2Y^2*L^3");
}

TEST_CASE("virtual Poincare polynomial") {
    AtomInvariantTable empty_table;
    MotiveClass cstar = MotiveClass::tate(1) - MotiveClass::one();
    CHECK(virtual_poincare(cstar, empty_table).to_string() == "t^2 - 1");
    CHECK(virtual_poincare(MotiveClass::one(), empty_table) == Poly1::constant(1));
    CHECK(virtual_poincare(class_of(E::proj(2)), empty_table).to_string() ==
          "1 + t^2 + t^4");

    CHECK_THROWS_WITH_AS(virtual_poincare(MotiveClass::atom_class("K"), empty_table),
                         "no Betti data for atom K", validation_error);

    // an elliptic-curve-shaped atom: 1 + 2t + t^2
    AtomInvariantTable table;
    table["C"] = {Poly1::constant(1) + Poly1::term(2, 1) + Poly1::term(1, 2), std::nullopt};
    Poly1 p = virtual_poincare(MotiveClass::atom_class("C") * MotiveClass::tate(1), table);
    CHECK(p == Poly1::term(1, 2) + Poly1::term(2, 3) + Poly1::term(1, 4));
}

TEST_CASE("virtual Hodge polynomial") {
    AtomInvariantTable empty_table;
    CHECK(virtual_hodge(MotiveClass::tate(1), empty_table) == Poly2::term(1, 1, 1));
    CHECK(virtual_hodge(MotiveClass::tate(1), empty_table).to_string() == "u*v");
    CHECK(virtual_hodge(MotiveClass::one(), empty_table) == Poly2::constant(1));
    CHECK(virtual_hodge(class_of(E::proj(2)), empty_table).to_string() ==
          "1 + u*v + u^2*v^2");

    // abelian-surface-shaped table: (1+u)^2 (1+v)^2
    Poly2 ab = ((Poly2::constant(1) + Poly2::term(1, 1, 0)).pow(2)) *
               ((Poly2::constant(1) + Poly2::term(1, 0, 1)).pow(2));
    CHECK(ab.swapped() == ab);
    CHECK(ab.coeff(1, 1) == 4);
    CHECK(ab.diagonal().eval(-1) == 0);

    AtomInvariantTable table;
    table["A"] = {ab.diagonal(), ab};
    CHECK(virtual_hodge(MotiveClass::atom_class("A"), table) == ab);

    // Betti data alone is not enough for the Hodge realization
    table["B"] = {Poly1::constant(2), std::nullopt};
    CHECK(virtual_poincare(MotiveClass::atom_class("B"), table) == Poly1::constant(2));
    CHECK_THROWS_WITH_AS(virtual_hodge(MotiveClass::atom_class("B"), table),
                         "no Hodge data for atom B", validation_error);
}

TEST_CASE("euler characteristics") {
    AtomInvariantTable table;
    CHECK(euler_char(class_of(E::proj(2)), table) == 3);
    for (int n = 0; n <= 5; ++n) CHECK(euler_char(class_of(E::proj(n)), table) == n + 1);
    CHECK(euler_char(MotiveClass::tate(1) - MotiveClass::one(), table) == 0);
    CHECK(euler_char(class_of(E::affine(3)), table) == 1);
}

TEST_CASE("random trees: realizations are ring morphisms") {
    std::mt19937 rng(77);
    std::vector<AtomSymbol> atoms;
    AtomInvariantTable table = testgen::synthetic_table(rng, atoms);
    for (int trial = 0; trial < 300; ++trial) {
        E a = testgen::random_tree(rng, 1 + rng() % 3, atoms);
        E b = testgen::random_tree(rng, 1 + rng() % 2, atoms);
        MotiveClass ca = class_of(a), cb = class_of(b);

        CHECK(class_of(E::disjoint_union(a, b)) == ca + cb);
        CHECK(class_of(E::product(a, b)) == ca * cb);
        CHECK(class_of(E::fibration(a, b)) == ca * cb);

        Poly1 pa = virtual_poincare(ca, table), pb = virtual_poincare(cb, table);
        CHECK(virtual_poincare(ca + cb, table) == pa + pb);
        CHECK(virtual_poincare(ca * cb, table) == pa * pb);
        Poly2 ha = virtual_hodge(ca, table), hb = virtual_hodge(cb, table);
        CHECK(virtual_hodge(ca * cb, table) == ha * hb);

        // the two realizations agree where they overlap
        CHECK(ha.swapped() == ha);
        CHECK(ha.diagonal() == pa);
        CHECK(pa.eval(-1) == euler_char(ca, table));
    }
}

TEST_CASE("random blowups satisfy the Euler count") {
    std::mt19937 rng(78);
    std::vector<AtomSymbol> atoms;
    AtomInvariantTable table = testgen::synthetic_table(rng, atoms);
    int built = 0;
    while (built < 50) {
        E ambient = testgen::random_tree(rng, 1 + rng() % 3, atoms);
        if (!ambient.dimension() || *ambient.dimension() == 0) continue;
        int d = 1 + rng() % *ambient.dimension();
        E center = testgen::random_leaf_of_dim(rng, *ambient.dimension() - d, atoms);
        E blown = E::blowup(ambient, center, d);
        CHECK(euler_char(class_of(blown), table) ==
              euler_char(class_of(ambient), table) +
                  (d - 1) * euler_char(class_of(center), table));
        ++built;
    }
}

TEST_CASE("inclusion-exclusion over shared cells") {
    std::mt19937 rng(79);
    std::vector<AtomSymbol> atoms;
    AtomInvariantTable table = testgen::synthetic_table(rng, atoms);
    for (int trial = 0; trial < 100; ++trial) {
        int k = 3 + rng() % 3;
        std::vector<E> cells;
        for (int i = 0; i < k; ++i) cells.push_back(testgen::random_tree(rng, 1, atoms));
        unsigned mu = rng() % (1u << k), mv = rng() % (1u << k);
        MotiveClass u = class_of(cell_union(cells, mu));
        MotiveClass v = class_of(cell_union(cells, mv));
        MotiveClass both = class_of(cell_union(cells, mu & mv));
        MotiveClass either = class_of(cell_union(cells, mu | mv));
        CHECK(both + either == u + v);
        CHECK(virtual_poincare(both, table) + virtual_poincare(either, table) ==
              virtual_poincare(u, table) + virtual_poincare(v, table));
    }
}

TEST_CASE("polynomial printing and evaluation") {
    Poly1 t = Poly1::term(1, 1);
    CHECK(((t - Poly1::constant(1)) * (t + Poly1::constant(1))).to_string() == "t^2 - 1");
    CHECK(Poly1{}.to_string() == "0");
    CHECK((Poly1::constant(-1) - Poly1::term(2, 3)).to_string() == "-1 - 2t^3");
    CHECK(Poly1::term(1, 2).eval(-1) == 1);
    CHECK((t.pow(4) - Poly1::constant(1)).eval(3) == 80);
    CHECK(t.pow(0) == Poly1::constant(1));
    CHECK(Poly1::constant(0).is_zero());

    Poly2 u = Poly2::term(1, 1, 0), v = Poly2::term(1, 0, 1);
    CHECK(((Poly2::constant(1) + u) * (Poly2::constant(1) + v)).to_string() ==
          "1 + u + v + u*v");
    CHECK((u.pow(2) - v.pow(2)).to_string() == "u^2 - v^2");
    CHECK((u * v).diagonal() == Poly1::term(1, 2));
    CHECK(u.swapped() == v);

    CHECK_THROWS_AS(Poly1::term(1, -1), validation_error);
    CHECK_THROWS_AS(Poly2::term(1, -1, 0), validation_error);
}
