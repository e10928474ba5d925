#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "motive/atlas.hpp"
#include "motive/blowup.hpp"
#include "motive/contraction.hpp"
#include "motive/errors.hpp"
#include "motive/invariants.hpp"
#include "motive/io.hpp"
#include "motive/variety_expr.hpp"
#include "motive/weight_descent.hpp"

namespace motive {

// A fully parsed command line.  run_command is deterministic: the same
// command and input bytes produce the same output bytes.
struct Command {
    std::string subcommand;
    std::string input;
    Coefficients coeff = Coefficients::Z();
    bool records = false;
};

namespace detail {

struct DemoInfo {
    std::string name;
    std::string description;
};

inline const std::vector<DemoInfo>& demo_list() {
    static const std::vector<DemoInfo> demos = {
        {"cstar", "the projective line minus two points"},
        {"kummer", "a nodal quotient surface: sixteen nodes resolved by lines"},
        {"nodal-cubic", "a rational curve with its two branches glued at a node"},
    };
    return demos;
}

inline std::string demo_name(const std::string& input) {
    std::string name = input.rfind("demo:", 0) == 0 ? input.substr(5) : input;
    for (const DemoInfo& d : demo_list())
        if (d.name == name) return name;
    throw validation_error("unknown demo " + name);
}

inline bool is_demo(const std::string& input) { return input.rfind("demo:", 0) == 0; }

inline VarietyExpr demo_expr(const std::string& name) {
    if (name == "cstar") {
        VarietyExpr two = VarietyExpr::disjoint_union(VarietyExpr::point(), VarietyExpr::point());
        return VarietyExpr::complement(VarietyExpr::proj(1), two);
    }
    if (name == "kummer") {
        VarietyExpr lines = VarietyExpr::proj(1);
        VarietyExpr nodes = VarietyExpr::point();
        for (int k = 1; k < 16; ++k) {
            lines = VarietyExpr::disjoint_union(std::move(lines), VarietyExpr::proj(1));
            nodes = VarietyExpr::disjoint_union(std::move(nodes), VarietyExpr::point());
        }
        VarietyExpr smooth = VarietyExpr::complement(VarietyExpr::atom("K3", 2), std::move(lines));
        return VarietyExpr::disjoint_union(std::move(smooth), std::move(nodes));
    }
    if (name == "nodal-cubic") {
        VarietyExpr two = VarietyExpr::disjoint_union(VarietyExpr::point(), VarietyExpr::point());
        VarietyExpr branch = VarietyExpr::complement(VarietyExpr::proj(1), std::move(two));
        return VarietyExpr::disjoint_union(std::move(branch), VarietyExpr::point());
    }
    throw validation_error("unknown demo " + name);
}

inline DescentPresentation demo_presentation(const std::string& name) {
    using Subset = std::vector<int>;
    if (name == "cstar") {
        NCConfiguration cfg;
        cfg.ambient = AtomSymbol{"P1", 1};
        cfg.components = 2;
        cfg.strata[Subset{1}] = AtomSymbol{"pt", 0};
        cfg.strata[Subset{2}] = AtomSymbol{"pt", 0};
        cfg.faces[{Subset{}, Subset{1}}] = "restrict_P1_pt";
        cfg.faces[{Subset{}, Subset{2}}] = "restrict_P1_pt";
        return build_from_ncc(cfg, standard_cohomology(), standard_maps());
    }
    if (name == "kummer") return kummer_presentation();
    if (name == "nodal-cubic") {
        std::vector<MotiveTerm> columns = {
            MotiveTerm{{{AtomSymbol{"P1", 1}, 1}, {AtomSymbol{"pt", 0}, 1}}},
            MotiveTerm{{{AtomSymbol{"pt", 0}, 2}}},
        };
        std::vector<DifferentialEntry> entries = {
            {0, 0, 0, 1, "restrict_P1_pt"},
            {0, 0, 1, 1, "restrict_P1_pt"},
            {0, 1, 0, -1, "id_pt"},
            {0, 1, 1, -1, "id_pt"},
        };
        return DescentPresentation(1, std::move(columns), entries, standard_cohomology(),
                                   standard_maps());
    }
    throw validation_error("unknown demo " + name);
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot read");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct ClassSource {
    MotiveClass cls;
    AtomInvariantTable table;
};

inline ClassSource load_class_source(const std::string& input) {
    if (is_demo(input)) return {class_of(demo_expr(demo_name(input))), standard_invariants()};
    VarietyFile vf = load_variety(read_file(input));
    AtomInvariantTable table = standard_invariants();
    for (const AtomRecord& r : vf.atoms) table.insert_or_assign(r.name, invariants_of(r));
    return {class_of(vf.expr), std::move(table)};
}

inline DescentPresentation load_presentation_source(const std::string& input) {
    if (is_demo(input)) return demo_presentation(demo_name(input));
    return load_presentation(read_file(input));
}

// One failure report, in the requested format.  Records mode puts the error
// record on stdout so a consumer sees exactly one stream; plain mode keeps
// stdout clean and prefixes file positions the compiler way.
inline int report_failure(const Command& cmd, const std::string& kind, const std::string& message,
                          std::size_t line, std::size_t column, std::ostream& out,
                          std::ostream& err, int code) {
    if (cmd.records) {
        Json rec{{"type", "error"}, {"error", kind}};
        if (!cmd.input.empty()) rec["input"] = cmd.input;
        if (line > 0) {
            rec["line"] = line;
            rec["column"] = column;
        }
        rec["message"] = message;
        out << rec.dump() << "\n";
    } else if (kind == "parse" && !cmd.input.empty() && !is_demo(cmd.input)) {
        if (line > 0)
            err << "error: " << cmd.input << ":" << line << ":" << column << ": " << message
                << "\n";
        else
            err << "error: " << cmd.input << ": " << message << "\n";
    } else {
        err << "error: " << message << "\n";
    }
    return code;
}

inline int run_class(const Command& cmd, std::ostream& out) {
    ClassSource src = load_class_source(cmd.input);
    if (cmd.records)
        out << class_to_json(src.cls).dump() << "\n";
    else
        out << src.cls.to_string() << "\n";
    return 0;
}

inline int run_betti(const Command& cmd, std::ostream& out) {
    ClassSource src = load_class_source(cmd.input);
    Poly1 p = virtual_poincare(src.cls, src.table);
    if (cmd.records) {
        Json rec{{"type", "poincare"}, {"coefficients", Json::object()}};
        for (const auto& [n, a] : p.coeffs()) rec["coefficients"][std::to_string(n)] = a.str();
        out << rec.dump() << "\n";
    } else {
        out << p.to_string() << "\n";
    }
    return 0;
}

inline int run_hodge(const Command& cmd, std::ostream& out) {
    ClassSource src = load_class_source(cmd.input);
    Poly2 e = virtual_hodge(src.cls, src.table);
    if (cmd.records) {
        Json rec{{"type", "hodge"}, {"coefficients", Json::object()}};
        for (const auto& [pq, a] : e.coeffs())
            rec["coefficients"][std::to_string(pq.first) + "," + std::to_string(pq.second)] =
                a.str();
        out << rec.dump() << "\n";
    } else {
        out << e.to_string() << "\n";
    }
    return 0;
}

inline int run_euler(const Command& cmd, std::ostream& out) {
    ClassSource src = load_class_source(cmd.input);
    Int chi = euler_char(src.cls, src.table);
    if (cmd.records)
        out << Json{{"type", "euler"}, {"value", chi.str()}}.dump() << "\n";
    else
        out << chi.str() << "\n";
    return 0;
}

inline int run_weights(const Command& cmd, std::ostream& out) {
    DescentPresentation w = load_presentation_source(cmd.input);
    WeightTable t = weight_table(w, cmd.coeff);

    // Rows keyed by (cohomological degree, weight); an entry at column i,
    // internal degree n lands in degree n+i with weight n.
    std::map<std::pair<int, int>, const FinAbGroup*> rows;
    for (const auto& [key, g] : t.entries) rows[{key.first + key.second, key.second}] = &g;

    if (cmd.records) {
        out << Json{{"type", "weight-table"},
                    {"coefficients", t.coeff.to_string()},
                    {"dimension", t.dim},
                    {"determined", t.weights_determined}}
                   .dump()
            << "\n";
        for (const auto& [dw, g] : rows) {
            Json rec{{"type", "weight"}, {"degree", dw.first}, {"weight", dw.second}};
            Json grp = group_to_json(*g);
            rec["rank"] = grp["rank"];
            rec["torsion"] = grp["torsion"];
            out << rec.dump() << "\n";
        }
    } else {
        out << "coefficients: " << t.coeff.to_string() << "\n";
        out << "dimension: " << t.dim << "\n";
        out << "filtration: " << (t.weights_determined ? "determined" : "graded pieces only")
            << "\n";
        for (const auto& [dw, g] : rows)
            out << "grW_" << dw.second << " H^" << dw.first << "_c = " << g->to_string() << "\n";
    }
    return 0;
}

inline int run_blowup_check(const Command& cmd, std::ostream& out, std::ostream& err) {
    if (is_demo(cmd.input)) throw validation_error("blowup-check needs a cycle-data file");
    ChowData cd = load_chow(read_file(cmd.input));
    BlowupVerdict v = check_blowup_exactness(cd);
    if (cmd.records) {
        Json fails = Json::array();
        for (const std::string& f : v.failures()) fails.push_back(f);
        out << Json{{"type", "blowup-check"}, {"ok", v.ok()}, {"failures", std::move(fails)}}.dump()
            << "\n";
    } else {
        out << v.to_string() << "\n";
    }
    if (!v.ok()) return report_failure(cmd, "validation", "cycle sequences not exact", 0, 0, out,
                                       err, 1);
    return 0;
}

inline int run_contract(const Command& cmd, std::ostream& out) {
    DescentPresentation w = load_presentation_source(cmd.input);
    ContractionResult r = find_contraction(w.realization());
    if (cmd.records) {
        Json rec{{"type", "contraction"}, {"contractible", bool(r)}};
        if (!r) rec["diagnostic"] = r.diagnostic;
        out << rec.dump() << "\n";
    } else if (r) {
        out << "contractible: homotopy verified\n";
    } else {
        out << "not contractible: " << r.diagnostic << "\n";
    }
    return 0;
}

inline int run_demo(const Command& cmd, std::ostream& out) {
    std::vector<DemoInfo> chosen;
    if (cmd.input.empty())
        chosen = demo_list();
    else
        for (const DemoInfo& d : demo_list())
            if (d.name == demo_name(cmd.input)) chosen.push_back(d);

    std::size_t width = 0;
    for (const DemoInfo& d : chosen) width = std::max(width, d.name.size());
    for (const DemoInfo& d : chosen) {
        if (cmd.records) {
            out << Json{{"type", "demo"}, {"name", "demo:" + d.name}, {"about", d.description}}
                       .dump()
                << "\n";
        } else {
            out << "demo:" << d.name << std::string(width - d.name.size() + 2, ' ')
                << d.description << "\n";
        }
    }
    return 0;
}

}  // namespace detail

inline int run_command(const Command& cmd, std::ostream& out, std::ostream& err) {
    try {
        if (cmd.subcommand == "class") return detail::run_class(cmd, out);
        if (cmd.subcommand == "betti") return detail::run_betti(cmd, out);
        if (cmd.subcommand == "hodge") return detail::run_hodge(cmd, out);
        if (cmd.subcommand == "euler") return detail::run_euler(cmd, out);
        if (cmd.subcommand == "weights") return detail::run_weights(cmd, out);
        if (cmd.subcommand == "blowup-check") return detail::run_blowup_check(cmd, out, err);
        if (cmd.subcommand == "contract") return detail::run_contract(cmd, out);
        if (cmd.subcommand == "demo") return detail::run_demo(cmd, out);
        throw parse_error("unknown subcommand " + cmd.subcommand);
    } catch (const parse_error& e) {
        return detail::report_failure(cmd, "parse", e.what(), e.line, e.column, out, err, 2);
    } catch (const validation_error& e) {
        return detail::report_failure(cmd, "validation", e.what(), 0, 0, out, err, 1);
    } catch (const error& e) {
        return detail::report_failure(cmd, "validation", e.what(), 0, 0, out, err, 1);
    }
}

inline std::string usage_text() {
    return "usage: motive-cli [--records] [--coeff Z|Q|Z/m] <subcommand> [input]\n"
           "\n"
           "subcommands:\n"
           "  class <file|demo>     class of a variety in the cut-and-paste ring\n"
           "  betti <file|demo>     virtual Poincare polynomial\n"
           "  hodge <file|demo>     virtual Hodge polynomial\n"
           "  euler <file|demo>     Euler characteristic\n"
           "  weights <file|demo>   weight table of a presentation (--coeff applies)\n"
           "  blowup-check <file>   exactness of blow-up cycle sequences\n"
           "  contract <file|demo>  search for a contracting homotopy\n"
           "  demo [name]           list the built-in demos\n"
           "\n"
           "Inputs are JSON files; demo:<name> picks a built-in example.\n"
           "--records switches stdout to one JSON record per line.\n";
}

inline Coefficients parse_coeff(const std::string& s) {
    if (s == "Z") return Coefficients::Z();
    if (s == "Q") return Coefficients::Q();
    if (s.rfind("Z/", 0) == 0 && s.size() > 2) {
        std::string digits = s.substr(2);
        for (char ch : digits)
            if (!std::isdigit(static_cast<unsigned char>(ch)))
                throw parse_error("bad coefficient spec " + s);
        return Coefficients::mod(Int(digits));
    }
    throw parse_error("bad coefficient spec " + s);
}

inline Command parse_args(const std::vector<std::string>& args) {
    Command cmd;
    std::vector<std::string> positional;
    for (std::size_t k = 0; k < args.size(); ++k) {
        const std::string& a = args[k];
        if (a == "--records") {
            cmd.records = true;
        } else if (a == "--coeff") {
            if (k + 1 >= args.size()) throw parse_error("--coeff needs a value");
            cmd.coeff = parse_coeff(args[++k]);
        } else if (a.rfind("--coeff=", 0) == 0) {
            cmd.coeff = parse_coeff(a.substr(8));
        } else if (a == "--help" || a == "-h") {
            cmd.subcommand = "help";
            return cmd;
        } else if (!a.empty() && a[0] == '-') {
            throw parse_error("unknown option " + a);
        } else {
            positional.push_back(a);
        }
    }
    if (positional.empty()) throw parse_error("no subcommand given");
    if (positional.size() > 2) throw parse_error("too many arguments");
    cmd.subcommand = positional[0];
    if (positional.size() == 2) cmd.input = positional[1];

    static const std::vector<std::string> known = {"class",   "betti",        "hodge",
                                                   "euler",   "weights",      "blowup-check",
                                                   "contract", "demo"};
    bool ok = false;
    for (const std::string& s : known) ok = ok || s == cmd.subcommand;
    if (!ok) throw parse_error("unknown subcommand " + cmd.subcommand);
    if (cmd.subcommand != "demo" && cmd.input.empty())
        throw parse_error(cmd.subcommand + " needs an input");
    return cmd;
}

// Entry point behind main: argv minus the program name in, exit status out.
// Parse trouble exits 2, validation trouble 1; in records mode either kind
// lands on stdout as an error record.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    bool records = false;
    for (const std::string& a : args) records = records || a == "--records";
    Command cmd;
    try {
        cmd = parse_args(args);
    } catch (const parse_error& e) {
        Command bare;
        bare.records = records;
        int code = detail::report_failure(bare, "parse", e.what(), 0, 0, out, err, 2);
        if (!records) err << "run with --help for usage\n";
        return code;
    } catch (const validation_error& e) {
        Command bare;
        bare.records = records;
        return detail::report_failure(bare, "validation", e.what(), 0, 0, out, err, 1);
    }
    if (cmd.subcommand == "help") {
        out << usage_text();
        return 0;
    }
    return run_command(cmd, out, err);
}

}  // namespace motive
