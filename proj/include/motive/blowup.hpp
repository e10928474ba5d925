#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "motive/fin_ab_group.hpp"
#include "motive/graded.hpp"
#include "motive/int_matrix.hpp"
#include "motive/smith.hpp"

namespace motive {

// Blow-up square, with E the exceptional divisor over the center Z:
//
//          j
//      E -----> X'
//      |        |
//    g |        | f
//      v        v
//      Z -----> X
//          i
//
// The cohomology formulas below are the free recombinations of the pieces of
// X and Z; the Chow side is checked, not computed, from user-supplied cycle
// data for the four spaces.

// Cohomology of the projectivization of a rank-d bundle over a base with the
// given cohomology: one shifted copy of the base per power of the relative
// hyperplane class.
inline GradedGroup projective_bundle(const GradedGroup& base, int rank) {
    if (rank < 1) throw validation_error("projective bundle rank must be at least 1");
    std::map<int, std::vector<FinAbGroup>> parts;
    for (int i = 0; i < rank; ++i)
        for (const auto& [n, g] : base.parts()) parts[n + 2 * i].push_back(g);
    std::map<int, FinAbGroup> out;
    for (auto& [n, gs] : parts) out[n] = direct_sum(gs).group;
    return GradedGroup(std::move(out));
}

// Cohomology of the blow-up of X along a center Z of codimension d: the
// ambient cohomology plus d-1 shifted copies of the center's.
inline GradedGroup blowup_cohomology(const GradedGroup& ambient, const GradedGroup& center,
                                     int codim) {
    if (codim < 1) throw validation_error("blow-up codimension must be at least 1");
    std::map<int, std::vector<FinAbGroup>> parts;
    for (const auto& [n, g] : ambient.parts()) parts[n].push_back(g);
    for (int i = 1; i < codim; ++i)
        for (const auto& [n, g] : center.parts()) parts[n + 2 * i].push_back(g);
    std::map<int, FinAbGroup> out;
    for (auto& [n, gs] : parts) out[n] = direct_sum(gs).group;
    return GradedGroup(std::move(out));
}

// Cycle groups of the four spaces in one dimension p, each free on the named
// basis, together with the matrices of the four pushforwards in those bases.
// Pullback matrices are optional; when recorded they are taken in the bases
// dual to the named ones under the intersection pairing, which for the
// built-in datasets makes them the transposes of the pushforwards.
struct ChowLevel {
    std::vector<std::string> exceptional, center, blowup, base;
    IntMatrix push_g{0, 0};  // E -> Z
    IntMatrix push_j{0, 0};  // E -> X'
    IntMatrix push_i{0, 0};  // Z -> X
    IntMatrix push_f{0, 0};  // X' -> X
    std::optional<IntMatrix> pull_g, pull_j, pull_i, pull_f;
};

struct ChowData {
    std::map<int, ChowLevel> levels;  // cycle dimension -> bases and maps
};

namespace detail {

inline std::string shape(const IntMatrix& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

inline void check_shape(const IntMatrix& m, int rows, int cols, const std::string& name, int p) {
    if (m.rows() != rows || m.cols() != cols)
        throw validation_error("chow data: map " + name + " at p=" + std::to_string(p) +
                               " has shape " + shape(m) + ", expected " + std::to_string(rows) +
                               "x" + std::to_string(cols));
}

inline void check_names(const std::vector<std::string>& names, int p) {
    std::set<std::string> seen;
    for (const auto& name : names) {
        if (name.empty())
            throw validation_error("chow data: empty cycle name at p=" + std::to_string(p));
        if (!seen.insert(name).second)
            throw validation_error("chow data: duplicate cycle name \"" + name +
                                   "\" at p=" + std::to_string(p));
    }
}

inline IntMatrix stack_rows(const IntMatrix& top, const IntMatrix& bottom) {
    if (top.cols() != bottom.cols()) throw validation_error("stack column mismatch");
    IntMatrix r(top.rows() + bottom.rows(), top.cols());
    for (int i = 0; i < top.rows(); ++i)
        for (int j = 0; j < top.cols(); ++j) r(i, j) = top(i, j);
    for (int i = 0; i < bottom.rows(); ++i)
        for (int j = 0; j < bottom.cols(); ++j) r(top.rows() + i, j) = bottom(i, j);
    return r;
}

}  // namespace detail

inline void validate_chow(const ChowData& cd) {
    for (const auto& [p, lv] : cd.levels) {
        if (p < 0)
            throw validation_error("chow data: negative cycle dimension p=" + std::to_string(p));
        detail::check_names(lv.exceptional, p);
        detail::check_names(lv.center, p);
        detail::check_names(lv.blowup, p);
        detail::check_names(lv.base, p);
        int ne = int(lv.exceptional.size());
        int nz = int(lv.center.size());
        int nb = int(lv.blowup.size());
        int nx = int(lv.base.size());
        detail::check_shape(lv.push_g, nz, ne, "g", p);
        detail::check_shape(lv.push_j, nb, ne, "j", p);
        detail::check_shape(lv.push_i, nx, nz, "i", p);
        detail::check_shape(lv.push_f, nx, nb, "f", p);
        if (!(lv.push_i * lv.push_g - lv.push_f * lv.push_j).is_zero())
            throw validation_error("chow data: pushforward square does not commute at p=" +
                                   std::to_string(p));
        if (lv.pull_g) detail::check_shape(*lv.pull_g, ne, nz, "g pullback", p);
        if (lv.pull_j) detail::check_shape(*lv.pull_j, ne, nb, "j pullback", p);
        if (lv.pull_i) detail::check_shape(*lv.pull_i, nz, nx, "i pullback", p);
        if (lv.pull_f) detail::check_shape(*lv.pull_f, nb, nx, "f pullback", p);
        if (lv.pull_g && lv.pull_j && lv.pull_i && lv.pull_f &&
            !(*lv.pull_g * *lv.pull_i - *lv.pull_j * *lv.pull_f).is_zero())
            throw validation_error("chow data: pullback square does not commute at p=" +
                                   std::to_string(p));
    }
}

// Result of testing the sequence 0 -> A -> B (+) C -> D -> 0 in one dimension.
struct SequenceCheck {
    bool left_injective = true;
    bool middle_exact = true;
    bool right_surjective = true;
    bool ok() const { return left_injective && middle_exact && right_surjective; }
};

struct BlowupVerdict {
    std::map<int, SequenceCheck> pushforward;
    std::map<int, SequenceCheck> pullback;  // only at levels with all four pullbacks

    bool ok() const {
        for (const auto& [p, c] : pushforward)
            if (!c.ok()) return false;
        for (const auto& [p, c] : pullback)
            if (!c.ok()) return false;
        return true;
    }

    std::vector<std::string> failures() const {
        std::vector<std::string> out;
        auto collect = [&](const std::map<int, SequenceCheck>& checks, const std::string& kind) {
            for (const auto& [p, c] : checks) {
                std::string at = "p=" + std::to_string(p) + ": " + kind;
                if (!c.left_injective) out.push_back(at + " left map not injective");
                if (!c.middle_exact) out.push_back(at + " sequence not exact at the middle");
                if (!c.right_surjective) out.push_back(at + " right map not surjective");
            }
        };
        collect(pushforward, "pushforward");
        collect(pullback, "pullback");
        return out;
    }

    std::string to_string() const {
        if (ok()) return "exact";
        std::string out;
        for (const auto& line : failures()) {
            if (!out.empty()) out += "\n";
            out += line;
        }
        return out;
    }
};

namespace detail {

// Exactness of 0 -> A -> M -> D -> 0 given the two matrices. The middle test
// needs both containments: the composite must vanish and every kernel vector
// of the right map must lift integrally through the left one.
inline SequenceCheck check_short_exact(const IntMatrix& alpha, const IntMatrix& beta) {
    SequenceCheck r;
    r.left_injective = kernel_basis(alpha).cols() == 0;
    if (!(beta * alpha).is_zero())
        r.middle_exact = false;
    else
        r.middle_exact = solve_integer(alpha, kernel_basis(beta)).has_value();
    r.right_surjective = cokernel(beta).is_zero();
    return r;
}

}  // namespace detail

// Check, dimension by dimension, that the cycle groups of the square fit into
// the exact sequence 0 -> A_p(E) -> A_p(Z) (+) A_p(X') -> A_p(X) -> 0, and
// the dual sequence 0 -> A_p(X) -> A_p(Z) (+) A_p(X') -> A_p(E) -> 0 at
// levels where all four pullbacks are recorded.
inline BlowupVerdict check_blowup_exactness(const ChowData& cd) {
    validate_chow(cd);
    BlowupVerdict v;
    for (const auto& [p, lv] : cd.levels) {
        IntMatrix alpha = detail::stack_rows(lv.push_g, lv.push_j);
        IntMatrix beta = lv.push_i.augmented(-lv.push_f);
        v.pushforward[p] = detail::check_short_exact(alpha, beta);
        if (lv.pull_g && lv.pull_j && lv.pull_i && lv.pull_f) {
            IntMatrix alpha2 = detail::stack_rows(*lv.pull_i, *lv.pull_f);
            IntMatrix beta2 = lv.pull_g->augmented(-*lv.pull_j);
            v.pullback[p] = detail::check_short_exact(alpha2, beta2);
        }
    }
    return v;
}

namespace detail {

// Fills in the dual-basis pullbacks as transposes of the pushforwards.
inline void add_dual_pullbacks(ChowData& cd) {
    for (auto& [p, lv] : cd.levels) {
        lv.pull_g = lv.push_g.transposed();
        lv.pull_j = lv.push_j.transposed();
        lv.pull_i = lv.push_i.transposed();
        lv.pull_f = lv.push_f.transposed();
    }
}

}  // namespace detail

// Cycle data for the plane blown up at a point. In dimension one the basis
// of the blow-up side is the strict transform of a line through the center
// together with the exceptional curve; the former pushes to the line class,
// the latter dies.
inline ChowData plane_point_chow() {
    ChowData cd;
    ChowLevel p0;
    p0.exceptional = {"point"};
    p0.center = {"point"};
    p0.blowup = {"point"};
    p0.base = {"point"};
    p0.push_g = IntMatrix(1, 1, {1});
    p0.push_j = IntMatrix(1, 1, {1});
    p0.push_i = IntMatrix(1, 1, {1});
    p0.push_f = IntMatrix(1, 1, {1});
    cd.levels[0] = p0;

    ChowLevel p1;
    p1.exceptional = {"E"};
    p1.blowup = {"line", "E"};
    p1.base = {"line"};
    p1.push_g = IntMatrix(0, 1);
    p1.push_j = IntMatrix(2, 1, {0, 1});
    p1.push_i = IntMatrix(1, 0);
    p1.push_f = IntMatrix(1, 2, {1, 0});
    cd.levels[1] = p1;

    ChowLevel p2;
    p2.blowup = {"plane"};
    p2.base = {"plane"};
    p2.push_g = IntMatrix(0, 0);
    p2.push_j = IntMatrix(1, 0);
    p2.push_i = IntMatrix(1, 0);
    p2.push_f = IntMatrix(1, 1, {1});
    cd.levels[2] = p2;

    detail::add_dual_pullbacks(cd);
    return cd;
}

// Cycle data for projective 3-space blown up along a line. The exceptional
// divisor is a quadric: its curve classes are the fiber of the projection to
// the center and a section. The section meets the exceptional divisor in
// degree -1, so inside the blow-up it is the strict transform of a line plus
// a fiber.
inline ChowData space_line_chow() {
    ChowData cd;
    ChowLevel p0;
    p0.exceptional = {"point"};
    p0.center = {"point"};
    p0.blowup = {"point"};
    p0.base = {"point"};
    p0.push_g = IntMatrix(1, 1, {1});
    p0.push_j = IntMatrix(1, 1, {1});
    p0.push_i = IntMatrix(1, 1, {1});
    p0.push_f = IntMatrix(1, 1, {1});
    cd.levels[0] = p0;

    ChowLevel p1;
    p1.exceptional = {"fiber", "section"};
    p1.center = {"line"};
    p1.blowup = {"line", "fiber"};
    p1.base = {"line"};
    p1.push_g = IntMatrix(1, 2, {0, 1});
    p1.push_j = IntMatrix(2, 2, {0, 1, 1, 1});
    p1.push_i = IntMatrix(1, 1, {1});
    p1.push_f = IntMatrix(1, 2, {1, 0});
    cd.levels[1] = p1;

    ChowLevel p2;
    p2.exceptional = {"E"};
    p2.blowup = {"plane", "E"};
    p2.base = {"plane"};
    p2.push_g = IntMatrix(0, 1);
    p2.push_j = IntMatrix(2, 1, {0, 1});
    p2.push_i = IntMatrix(1, 0);
    p2.push_f = IntMatrix(1, 2, {1, 0});
    cd.levels[2] = p2;

    ChowLevel p3;
    p3.blowup = {"space"};
    p3.base = {"space"};
    p3.push_g = IntMatrix(0, 0);
    p3.push_j = IntMatrix(1, 0);
    p3.push_i = IntMatrix(1, 0);
    p3.push_f = IntMatrix(1, 1, {1});
    cd.levels[3] = p3;

    detail::add_dual_pullbacks(cd);
    return cd;
}

// Cycle data for an empty center: the blow-down map is the identity.
inline ChowData empty_center_chow(int dim) {
    if (dim < 0) throw validation_error("chow data: negative cycle dimension p=" + std::to_string(dim));
    ChowData cd;
    for (int p = 0; p <= dim; ++p) {
        ChowLevel lv;
        lv.blowup = {"a" + std::to_string(p)};
        lv.base = {"a" + std::to_string(p)};
        lv.push_g = IntMatrix(0, 0);
        lv.push_j = IntMatrix(1, 0);
        lv.push_i = IntMatrix(1, 0);
        lv.push_f = IntMatrix(1, 1, {1});
        cd.levels[p] = lv;
    }
    detail::add_dual_pullbacks(cd);
    return cd;
}

}  // namespace motive
