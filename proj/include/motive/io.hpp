#pragma once

#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "motive/atlas.hpp"
#include "motive/blowup.hpp"
#include "motive/errors.hpp"
#include "motive/motive_class.hpp"
#include "motive/variety_expr.hpp"
#include "motive/weight_descent.hpp"

namespace motive {

using Json = nlohmann::ordered_json;

// Parse a whole document, converting syntax errors to parse_error with
// 1-based line and column.
inline Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::size_t line = 1, column = 1;
        std::size_t stop = e.byte > 0 ? e.byte - 1 : 0;
        if (stop > text.size()) stop = text.size();
        for (std::size_t k = 0; k < stop; ++k) {
            if (text[k] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        std::string msg = e.what();
        std::size_t cut = msg.find("] ");
        if (cut != std::string::npos) msg = msg.substr(cut + 2);
        if (msg.compare(0, 11, "parse error") == 0) {
            cut = msg.find(": ");
            if (cut != std::string::npos) msg = msg.substr(cut + 2);
        }
        throw parse_error(msg, line, column);
    }
}

namespace detail {

// A node of a parsed document together with the path that led there, so
// schema complaints in a syntactically fine file can point at the spot.
struct JsonLoc {
    const Json* j;
    std::string path;
};

[[noreturn]] inline void bad_json(const JsonLoc& at, const std::string& what) {
    throw parse_error(at.path + ": " + what);
}

inline JsonLoc require_key(const JsonLoc& at, const std::string& key) {
    if (!at.j->is_object()) bad_json(at, "expected an object");
    auto it = at.j->find(key);
    if (it == at.j->end()) bad_json(at, "missing \"" + key + "\"");
    return {&*it, at.path + "." + key};
}

inline std::optional<JsonLoc> optional_key(const JsonLoc& at, const std::string& key) {
    if (!at.j->is_object()) bad_json(at, "expected an object");
    auto it = at.j->find(key);
    if (it == at.j->end()) return std::nullopt;
    return JsonLoc{&*it, at.path + "." + key};
}

inline const Json& expect_array(const JsonLoc& at) {
    if (!at.j->is_array()) bad_json(at, "expected an array");
    return *at.j;
}

inline JsonLoc element(const JsonLoc& at, std::size_t i) {
    return {&(*at.j)[i], at.path + "[" + std::to_string(i) + "]"};
}

inline std::string expect_string(const JsonLoc& at) {
    if (!at.j->is_string()) bad_json(at, "expected a string");
    return at.j->get<std::string>();
}

inline long long expect_int(const JsonLoc& at) {
    if (!at.j->is_number_integer()) bad_json(at, "expected an integer");
    return at.j->get<long long>();
}

// Integers may arrive as JSON numbers or as decimal strings; strings keep
// values exact past the 64-bit range.
inline Int expect_big(const JsonLoc& at) {
    if (at.j->is_number_integer()) return Int(at.j->get<long long>());
    if (at.j->is_string()) {
        const std::string s = at.j->get<std::string>();
        std::size_t k = (!s.empty() && s[0] == '-') ? 1 : 0;
        if (k == s.size()) bad_json(at, "expected an integer");
        for (; k < s.size(); ++k)
            if (!std::isdigit(static_cast<unsigned char>(s[k]))) bad_json(at, "expected an integer");
        return Int(s);
    }
    bad_json(at, "expected an integer");
}

inline IntMatrix expect_matrix(const JsonLoc& at, int rows, int cols) {
    const Json& a = expect_array(at);
    if (int(a.size()) != rows)
        bad_json(at, "matrix has " + std::to_string(a.size()) + " rows, expected " +
                         std::to_string(rows));
    IntMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        JsonLoc row = element(at, std::size_t(i));
        const Json& ra = expect_array(row);
        if (int(ra.size()) != cols)
            bad_json(row, "row has " + std::to_string(ra.size()) + " entries, expected " +
                              std::to_string(cols));
        for (int j = 0; j < cols; ++j) m(i, j) = expect_big(element(row, std::size_t(j)));
    }
    return m;
}

inline int parse_degree_key(const JsonLoc& at, const std::string& key) {
    std::size_t k = (!key.empty() && key[0] == '-') ? 1 : 0;
    bool ok = k < key.size();
    for (; k < key.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(key[k]))) ok = false;
    if (!ok) bad_json(at, "bad degree key \"" + key + "\"");
    return std::stoi(key);
}

inline AtomRecord parse_atom_record(const JsonLoc& at) {
    std::string name = expect_string(require_key(at, "name"));
    int dimension = int(expect_int(require_key(at, "dimension")));
    int components = 1;
    if (auto c = optional_key(at, "components")) components = int(expect_int(*c));

    std::map<int, FinAbGroup> coh;
    JsonLoc ch = require_key(at, "cohomology");
    if (!ch.j->is_object()) bad_json(ch, "expected an object");
    for (auto it = ch.j->begin(); it != ch.j->end(); ++it) {
        int n = parse_degree_key(ch, it.key());
        JsonLoc gl{&it.value(), ch.path + "." + it.key()};
        int rank = 0;
        std::vector<Int> torsion;
        if (auto r = optional_key(gl, "rank")) rank = int(expect_int(*r));
        if (auto t = optional_key(gl, "torsion")) {
            const Json& ta = expect_array(*t);
            for (std::size_t k = 0; k < ta.size(); ++k) torsion.push_back(expect_big(element(*t, k)));
        }
        coh.emplace(n, FinAbGroup(rank, std::move(torsion)));
    }

    Poly2 hodge;
    JsonLoc hl = require_key(at, "hodge");
    const Json& ha = expect_array(hl);
    for (std::size_t k = 0; k < ha.size(); ++k) {
        JsonLoc tl = element(hl, k);
        if (!tl.j->is_array() || tl.j->size() != 3) bad_json(tl, "expected [p, q, value]");
        hodge = hodge + Poly2::term(expect_big(element(tl, 2)), int(expect_int(element(tl, 0))),
                                    int(expect_int(element(tl, 1))));
    }

    return make_record(std::move(name), dimension, components, GradedGroup(std::move(coh)),
                       std::move(hodge));
}

inline std::vector<AtomRecord> parse_atom_list(const JsonLoc& at) {
    std::vector<AtomRecord> out;
    const Json& a = expect_array(at);
    for (std::size_t k = 0; k < a.size(); ++k) {
        AtomRecord r = parse_atom_record(element(at, k));
        for (const AtomRecord& seen : out)
            if (seen.name == r.name) throw validation_error("duplicate atom record " + r.name);
        out.push_back(std::move(r));
    }
    return out;
}

inline int atom_dimension(const std::string& name, const std::map<std::string, AtomRecord>& local) {
    auto it = local.find(name);
    if (it != local.end()) return it->second.dimension;
    for (const std::string& builtin : atom_names())
        if (builtin == name) return atom(name).dimension;
    throw validation_error("unknown atom " + name);
}

inline VarietyExpr parse_expr(const JsonLoc& at,
                              const std::map<std::string, AtomRecord>& local) {
    std::string kind = expect_string(require_key(at, "kind"));
    if (kind == "atom") {
        std::string name = expect_string(require_key(at, "name"));
        int dim = 0;
        if (auto d = optional_key(at, "dimension")) dim = int(expect_int(*d));
        else dim = atom_dimension(name, local);
        return VarietyExpr::atom(name, dim);
    }
    if (kind == "empty") return VarietyExpr::empty();
    if (kind == "point") return VarietyExpr::point();
    if (kind == "affine") return VarietyExpr::affine(int(expect_int(require_key(at, "n"))));
    if (kind == "proj") return VarietyExpr::proj(int(expect_int(require_key(at, "n"))));
    if (kind == "disjoint-union")
        return VarietyExpr::disjoint_union(parse_expr(require_key(at, "a"), local),
                                           parse_expr(require_key(at, "b"), local));
    if (kind == "product")
        return VarietyExpr::product(parse_expr(require_key(at, "a"), local),
                                    parse_expr(require_key(at, "b"), local));
    if (kind == "complement")
        return VarietyExpr::complement(parse_expr(require_key(at, "whole"), local),
                                       parse_expr(require_key(at, "closed"), local));
    if (kind == "cone") return VarietyExpr::cone(parse_expr(require_key(at, "base"), local));
    if (kind == "proj-bundle")
        return VarietyExpr::proj_bundle(parse_expr(require_key(at, "base"), local),
                                        int(expect_int(require_key(at, "rank"))));
    if (kind == "blowup")
        return VarietyExpr::blowup(parse_expr(require_key(at, "ambient"), local),
                                   parse_expr(require_key(at, "center"), local),
                                   int(expect_int(require_key(at, "codim"))));
    if (kind == "fibration")
        return VarietyExpr::fibration(parse_expr(require_key(at, "fiber"), local),
                                      parse_expr(require_key(at, "base"), local));
    bad_json(at, "unknown expression kind \"" + kind + "\"");
}

}  // namespace detail

// A variety file: an expression over built-in and locally defined atoms.  A
// file holding a single atom record and no expression counts as that atom.
struct VarietyFile {
    std::vector<AtomRecord> atoms;
    VarietyExpr expr;
};

inline VarietyFile load_variety(const std::string& text) {
    Json doc = parse_json_text(text);
    detail::JsonLoc root{&doc, "$"};
    std::vector<AtomRecord> atoms;
    std::map<std::string, AtomRecord> local;
    if (auto a = detail::optional_key(root, "atoms")) {
        atoms = detail::parse_atom_list(*a);
        for (const AtomRecord& r : atoms) local.emplace(r.name, r);
    }
    if (auto e = detail::optional_key(root, "expr"))
        return {std::move(atoms), detail::parse_expr(*e, local)};
    if (atoms.size() == 1) {
        VarietyExpr one = VarietyExpr::atom(atoms[0].name, atoms[0].dimension);
        return {std::move(atoms), std::move(one)};
    }
    detail::bad_json(root, atoms.empty() ? "missing \"expr\""
                                         : "atom file with several records needs an \"expr\"");
}

// A presentation file: columns of atom summands, differential entries naming
// maps, and the maps' matrices.  Built-in atoms, restriction maps and
// identities are available without being spelled out; local atom records get
// an id_<name> map automatically.
inline DescentPresentation load_presentation(const std::string& text) {
    Json doc = parse_json_text(text);
    detail::JsonLoc root{&doc, "$"};
    int dim = int(detail::expect_int(detail::require_key(root, "dimension")));

    std::map<std::string, AtomRecord> local;
    CohomologyTable coh = standard_cohomology();
    MapTable maps = standard_maps();
    if (auto a = detail::optional_key(root, "atoms")) {
        std::vector<AtomRecord> file_atoms = detail::parse_atom_list(*a);
        for (AtomRecord& r : file_atoms) {
            coh.insert_or_assign(r.name, r.cohomology);
            std::map<int, IntMatrix> id;
            for (const auto& [n, g] : r.cohomology.parts())
                id.emplace(n, IntMatrix::identity(g.gens()));
            maps.insert_or_assign("id_" + r.name, NamedMap{r.name, r.name, std::move(id)});
            local.emplace(r.name, std::move(r));
        }
    }

    std::vector<MotiveTerm> columns;
    detail::JsonLoc cl = detail::require_key(root, "columns");
    const Json& ca = detail::expect_array(cl);
    for (std::size_t i = 0; i < ca.size(); ++i) {
        detail::JsonLoc col = detail::element(cl, i);
        const Json& colA = detail::expect_array(col);
        MotiveTerm term;
        for (std::size_t k = 0; k < colA.size(); ++k) {
            detail::JsonLoc s = detail::element(col, k);
            std::string name = detail::expect_string(detail::require_key(s, "atom"));
            int copies = 1;
            if (auto c = detail::optional_key(s, "copies")) copies = int(detail::expect_int(*c));
            term.summands.push_back({AtomSymbol{name, detail::atom_dimension(name, local)}, copies});
        }
        columns.push_back(std::move(term));
    }

    std::vector<DifferentialEntry> entries;
    if (auto dl = detail::optional_key(root, "differentials")) {
        const Json& da = detail::expect_array(*dl);
        for (std::size_t k = 0; k < da.size(); ++k) {
            detail::JsonLoc e = detail::element(*dl, k);
            DifferentialEntry de;
            de.column = int(detail::expect_int(detail::require_key(e, "column")));
            de.from = int(detail::expect_int(detail::require_key(e, "from")));
            de.to = int(detail::expect_int(detail::require_key(e, "to")));
            de.sign = int(detail::expect_int(detail::require_key(e, "sign")));
            de.map = detail::expect_string(detail::require_key(e, "map"));
            entries.push_back(std::move(de));
        }
    }

    if (auto ml = detail::optional_key(root, "maps")) {
        if (!ml->j->is_object()) detail::bad_json(*ml, "expected an object");
        for (auto it = ml->j->begin(); it != ml->j->end(); ++it) {
            detail::JsonLoc m{&it.value(), ml->path + "." + it.key()};
            std::string src = detail::expect_string(detail::require_key(m, "source"));
            std::string tgt = detail::expect_string(detail::require_key(m, "target"));
            auto sIt = coh.find(src);
            if (sIt == coh.end()) throw validation_error("unknown atom " + src);
            auto tIt = coh.find(tgt);
            if (tIt == coh.end()) throw validation_error("unknown atom " + tgt);
            NamedMap nm{src, tgt, {}};
            detail::JsonLoc mm = detail::require_key(m, "matrices");
            if (!mm.j->is_object()) detail::bad_json(mm, "expected an object");
            for (auto dIt = mm.j->begin(); dIt != mm.j->end(); ++dIt) {
                int n = detail::parse_degree_key(mm, dIt.key());
                detail::JsonLoc mat{&dIt.value(), mm.path + "." + dIt.key()};
                nm.mats.emplace(n, detail::expect_matrix(mat, tIt->second.at(n).gens(),
                                                         sIt->second.at(n).gens()));
            }
            maps.insert_or_assign(it.key(), std::move(nm));
        }
    }

    return DescentPresentation(dim, std::move(columns), entries, coh, maps);
}

// A cycle-data file for a blow-up square: named bases and pushforward
// matrices per dimension, pullbacks optional.
inline ChowData load_chow(const std::string& text) {
    Json doc = parse_json_text(text);
    detail::JsonLoc root{&doc, "$"};
    detail::JsonLoc levels = detail::require_key(root, "chow");
    const Json& la = detail::expect_array(levels);

    ChowData cd;
    for (std::size_t k = 0; k < la.size(); ++k) {
        detail::JsonLoc l = detail::element(levels, k);
        int p = int(detail::expect_int(detail::require_key(l, "p")));
        if (cd.levels.count(p)) detail::bad_json(l, "duplicate level p=" + std::to_string(p));

        ChowLevel lv;
        auto names = [&](const char* key) {
            std::vector<std::string> out;
            if (auto nl = detail::optional_key(l, key)) {
                const Json& na = detail::expect_array(*nl);
                for (std::size_t i = 0; i < na.size(); ++i)
                    out.push_back(detail::expect_string(detail::element(*nl, i)));
            }
            return out;
        };
        lv.exceptional = names("exceptional");
        lv.center = names("center");
        lv.blowup = names("blowup");
        lv.base = names("base");
        int ne = int(lv.exceptional.size());
        int nz = int(lv.center.size());
        int nb = int(lv.blowup.size());
        int nx = int(lv.base.size());

        detail::JsonLoc push = detail::require_key(l, "push");
        lv.push_g = detail::expect_matrix(detail::require_key(push, "g"), nz, ne);
        lv.push_j = detail::expect_matrix(detail::require_key(push, "j"), nb, ne);
        lv.push_i = detail::expect_matrix(detail::require_key(push, "i"), nx, nz);
        lv.push_f = detail::expect_matrix(detail::require_key(push, "f"), nx, nb);
        if (auto pull = detail::optional_key(l, "pull")) {
            if (auto g = detail::optional_key(*pull, "g"))
                lv.pull_g = detail::expect_matrix(*g, ne, nz);
            if (auto j = detail::optional_key(*pull, "j"))
                lv.pull_j = detail::expect_matrix(*j, ne, nb);
            if (auto i = detail::optional_key(*pull, "i"))
                lv.pull_i = detail::expect_matrix(*i, nz, nx);
            if (auto f = detail::optional_key(*pull, "f"))
                lv.pull_f = detail::expect_matrix(*f, nb, nx);
        }
        cd.levels.emplace(p, std::move(lv));
    }
    return cd;
}

inline Json group_to_json(const FinAbGroup& g) {
    Json torsion = Json::array();
    for (const Int& t : g.torsion()) torsion.push_back(t.str());
    return Json{{"rank", g.rank()}, {"torsion", torsion}};
}

// Machine-readable form of a class; class_from_record reads it back, so the
// records output round-trips.
inline Json class_to_json(const MotiveClass& c) {
    Json terms = Json::array();
    for (const auto& [m, a] : c.terms()) {
        Json t;
        t["coeff"] = a.str();
        if (m.lpow != 0) t["L"] = m.lpow;
        if (!m.atoms.empty()) {
            Json at = Json::object();
            for (const auto& [name, e] : m.atoms) at[name] = e;
            t["atoms"] = std::move(at);
        }
        terms.push_back(std::move(t));
    }
    return Json{{"type", "class"}, {"terms", std::move(terms)}};
}

inline MotiveClass class_from_record(const std::string& line) {
    Json doc = parse_json_text(line);
    detail::JsonLoc root{&doc, "$"};
    MotiveClass out;
    detail::JsonLoc terms = detail::require_key(root, "terms");
    const Json& ta = detail::expect_array(terms);
    for (std::size_t k = 0; k < ta.size(); ++k) {
        detail::JsonLoc t = detail::element(terms, k);
        Int coeff = detail::expect_big(detail::require_key(t, "coeff"));
        MotiveMonomial m;
        if (auto lp = detail::optional_key(t, "L")) m.lpow = int(detail::expect_int(*lp));
        if (auto am = detail::optional_key(t, "atoms")) {
            if (!am->j->is_object()) detail::bad_json(*am, "expected an object");
            for (auto it = am->j->begin(); it != am->j->end(); ++it) {
                detail::JsonLoc e{&it.value(), am->path + "." + it.key()};
                m.atoms[it.key()] = int(detail::expect_int(e));
            }
        }
        out = out + MotiveClass::monomial(coeff, std::move(m));
    }
    return out;
}

}  // namespace motive
