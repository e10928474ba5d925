#include <doctest.h>

#include <random>
#include <set>

#include "motive/ab_morphism.hpp"

using namespace motive;

namespace {

// All elements of a finite group as generator-coefficient tuples.
std::vector<std::vector<Int>> elements(const FinAbGroup& g) {
    REQUIRE(g.is_finite());
    std::vector<std::vector<Int>> out{std::vector<Int>(g.gens(), Int(0))};
    for (int i = 0; i < g.gens(); ++i) {
        std::vector<std::vector<Int>> next;
        for (Int v = 0; v < g.order(i); ++v)
            for (auto e : out) {
                e[i] = v;
                next.push_back(e);
            }
        out = std::move(next);
    }
    return out;
}

std::vector<Int> reduce(const FinAbGroup& g, std::vector<Int> v) {
    for (int i = 0; i < g.gens(); ++i)
        if (g.order(i) != 0) v[i] = pos_mod(v[i], g.order(i));
    return v;
}

std::vector<Int> add(const FinAbGroup& g, const std::vector<Int>& a, const std::vector<Int>& b) {
    std::vector<Int> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return reduce(g, r);
}

std::vector<Int> scale(const FinAbGroup& g, const Int& c, const std::vector<Int>& a) {
    std::vector<Int> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return reduce(g, r);
}

FinAbGroup random_finite_group(std::mt19937_64& rng, long long max_order) {
    std::vector<Int> orders;
    long long total = 1;
    while (true) {
        long long o = 2 + (long long)(rng() % 7);
        if (total * o > max_order || rng() % 3 == 0) break;
        total *= o;
        orders.push_back(o);
    }
    return from_cyclic_orders(orders);
}

// Random valid morphism matrix: entry (i,j) must be a multiple of
// order(i)/gcd(order(i), order(j)) when row i is torsion, and a free target
// row forces 0 out of torsion generators.
AbMorphism random_morphism(std::mt19937_64& rng, const FinAbGroup& a, const FinAbGroup& b) {
    IntMatrix m(b.gens(), a.gens());
    for (int i = 0; i < b.gens(); ++i)
        for (int j = 0; j < a.gens(); ++j) {
            Int oi = b.order(i), oj = a.order(j);
            if (oj == 0) {
                m(i, j) = Int(rng() % 7) - 3;
            } else if (oi == 0) {
                m(i, j) = 0;
            } else {
                Int step = oi / gcd(oi, oj);
                m(i, j) = step * Int(rng() % 5);
            }
        }
    return AbMorphism(a, b, m);
}

// Multiset invariant that determines a finite abelian group: the number of
// elements killed by d, for enough d.
long long killed_by(const FinAbGroup& g, long long d) {
    long long n = 1;
    for (const auto& t : g.torsion()) n *= gcd(Int(d), t).convert_to<long long>();
    return n;
}

}  // namespace

TEST_CASE("group construction enforces canonical form") {
    CHECK_THROWS_AS(FinAbGroup(1, {3, 4}), validation_error);
    CHECK_THROWS_AS(FinAbGroup(0, {1}), validation_error);
    CHECK_THROWS_AS(FinAbGroup(-1, {}), validation_error);
    CHECK(FinAbGroup(1, {2, 4}).gens() == 3);
    CHECK(FinAbGroup(2, {2, 2, 4}).to_string() == "Z^2 + (Z/2)^2 + Z/4");
}

TEST_CASE("cokernel examples") {
    CHECK(cokernel(IntMatrix{{2}}) == FinAbGroup::cyclic(2));
    CHECK(cokernel(IntMatrix{{2, 0}, {0, 3}}) == FinAbGroup::cyclic(6));
    CHECK(cokernel(IntMatrix(2, 0)) == FinAbGroup::free(2));
    CHECK(cokernel(IntMatrix{{1, 0}, {0, 6}}) == FinAbGroup::cyclic(6));
}

TEST_CASE("presented_group change of basis is exact") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 100; ++it) {
        int gens = 1 + int(rng() % 4), rels = int(rng() % 5);
        IntMatrix r(gens, rels);
        std::uniform_int_distribution<int> d(-6, 6);
        for (int i = 0; i < gens; ++i)
            for (int j = 0; j < rels; ++j) r(i, j) = d(rng);
        PresentedGroup p = presented_group(gens, r);
        CHECK(p.pr * p.sec == IntMatrix::identity(p.group.gens()));
        // Relations die in the canonical group.
        IntMatrix img = p.pr * r;
        for (int j = 0; j < rels; ++j)
            for (int i = 0; i < p.group.gens(); ++i) {
                Int o = p.group.order(i);
                if (o == 0) CHECK(img(i, j) == 0);
                else CHECK(img(i, j) % o == 0);
            }
        // sec*pr fixes every class: (I - sec*pr) lands in the relation lattice.
        IntMatrix delta = IntMatrix::identity(gens) - p.sec * p.pr;
        CHECK(solve_integer(r, delta).has_value());
    }
}

TEST_CASE("morphism validation") {
    FinAbGroup z2 = FinAbGroup::cyclic(2), z4 = FinAbGroup::cyclic(4), z = FinAbGroup::free(1);
    // Z/2 -> Z/4 must land in the 2-torsion.
    CHECK_THROWS_AS(AbMorphism(z2, z4, IntMatrix{{1}}), validation_error);
    CHECK_NOTHROW(AbMorphism(z2, z4, IntMatrix{{2}}));
    // Torsion cannot map to a free generator.
    CHECK_THROWS_AS(AbMorphism(z2, z, IntMatrix{{1}}), validation_error);
    // Matrices are normalized mod the invariant factors.
    CHECK(AbMorphism(z, z2, IntMatrix{{3}}) == AbMorphism(z, z2, IntMatrix{{1}}));
}

TEST_CASE("homology of elementary complexes") {
    FinAbGroup z = FinAbGroup::free(1), z2 = FinAbGroup::free(2);
    // Z --x2--> Z: homology at the right term is Z/2, at the left term 0.
    AbMorphism times2(z, z, IntMatrix{{2}});
    CHECK(homology_at(times2, AbMorphism::zero(z, FinAbGroup::zero())) == FinAbGroup::cyclic(2));
    CHECK(homology_at(AbMorphism::zero(FinAbGroup::zero(), z), times2) == FinAbGroup::zero());
    // diag(2,3) as a map Z^2 -> Z^2 has cokernel Z/6.
    AbMorphism diag23(z2, z2, IntMatrix{{2, 0}, {0, 3}});
    CHECK(homology_at(diag23, AbMorphism::zero(z2, FinAbGroup::zero())) == FinAbGroup::cyclic(6));
}

TEST_CASE("homology agrees with exhaustive enumeration on finite groups") {
    std::mt19937_64 rng(2024);
    int done = 0;
    while (done < 40) {
        FinAbGroup G = random_finite_group(rng, 48);
        FinAbGroup C = random_finite_group(rng, 24);
        AbMorphism f = random_morphism(rng, G, C);

        auto gel = elements(G);
        std::vector<std::vector<Int>> ker;
        for (const auto& v : gel) {
            bool in_ker = true;
            auto img = reduce(C, f.matrix().apply(v));
            for (const auto& x : img) in_ker &= (x == 0);
            if (in_ker) ker.push_back(v);
        }

        // Pick random kernel elements killed by the orders of a random source.
        FinAbGroup A = random_finite_group(rng, 16);
        IntMatrix gm(G.gens(), A.gens());
        for (int j = 0; j < A.gens(); ++j) {
            for (int tries = 0; tries < 50; ++tries) {
                const auto& cand = ker[rng() % ker.size()];
                bool killed = true;
                auto scaled = scale(G, A.order(j), cand);
                for (const auto& x : scaled) killed &= (x == 0);
                if (killed) {
                    gm.set_col(j, cand);
                    break;
                }
            }
        }
        AbMorphism g(A, G, gm);
        if (!compose(f, g).is_zero()) continue;  // defensive; should not happen

        FinAbGroup H = homology_at(g, f);

        // Image of g as a set.
        std::set<std::vector<Int>> img;
        for (const auto& v : elements(A)) img.insert(reduce(G, g.matrix().apply(v)));
        REQUIRE(ker.size() % img.size() == 0);
        long long order = (long long)(ker.size() / img.size());
        Int horder = 1;
        for (const auto& t : H.torsion()) horder *= t;
        CHECK(H.rank() == 0);
        CHECK(horder == order);
        // Element-order census pins the isomorphism type.
        for (long long d = 1; d <= 12; ++d) {
            long long cnt = 0;
            for (const auto& v : ker) {
                if (img.count(scale(G, d, v))) ++cnt;
            }
            CHECK(cnt / (long long)img.size() == killed_by(H, d));
        }
        ++done;
    }
}

TEST_CASE("group_class primary decomposition") {
    GroupClass c = group_class(FinAbGroup(2, {2, 4}));
    CHECK(c.rank == 2);
    CHECK(c.primary[2][1] == 1);
    CHECK(c.primary[2][2] == 1);

    GroupClass z6 = group_class(FinAbGroup::cyclic(6));
    CHECK(z6.rank == 0);
    CHECK(z6.primary[2][1] == 1);
    CHECK(z6.primary[3][1] == 1);
}

TEST_CASE("group_class arithmetic and reconstruction") {
    std::mt19937_64 rng(17);
    for (int it = 0; it < 100; ++it) {
        FinAbGroup g = random_finite_group(rng, 200);
        FinAbGroup h(int(rng() % 3), g.torsion());
        CHECK(reconstruct(group_class(h)) == h);
    }
    // The class map is additive across direct sums.
    FinAbGroup a = from_cyclic_orders({4, 6}), b = from_cyclic_orders({9, 2});
    DirectSum s = direct_sum({a, b});
    CHECK(group_class(s.group) == group_class(a) + group_class(b));
    CHECK(from_cyclic_orders({6, 4}) == FinAbGroup(0, {2, 12}));
}

TEST_CASE("direct_sum injections and projections") {
    std::vector<FinAbGroup> parts{FinAbGroup(1, {2}), FinAbGroup::cyclic(4),
                                  FinAbGroup::free(1)};
    DirectSum s = direct_sum(parts);
    CHECK(s.group == FinAbGroup(2, {2, 4}));
    for (std::size_t k = 0; k < parts.size(); ++k) {
        AbMorphism inj(parts[k], s.group, s.inj[k]);
        AbMorphism proj(s.group, parts[k], s.proj[k]);
        CHECK(compose(proj, inj) == AbMorphism::identity(parts[k]));
        for (std::size_t l = 0; l < parts.size(); ++l) {
            if (l == k) continue;
            AbMorphism injl(parts[l], s.group, s.inj[l]);
            CHECK(compose(proj, injl).is_zero());
        }
    }
    // The injections jointly cover the sum.
    AbMorphism total = AbMorphism::zero(s.group, s.group);
    for (std::size_t k = 0; k < parts.size(); ++k)
        total = total + compose(AbMorphism(parts[k], s.group, s.inj[k]),
                                AbMorphism(s.group, parts[k], s.proj[k]));
    CHECK(total == AbMorphism::identity(s.group));
}
