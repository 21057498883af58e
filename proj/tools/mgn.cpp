#include "mgn/covers.hpp"
#include "mgn/cycledb.hpp"
#include "mgn/enumerate.hpp"
#include "mgn/ggraph.hpp"
#include "mgn/hurwitz.hpp"
#include "mgn/json_io.hpp"
#include "mgn/taut.hpp"
#include "mgn/witten.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using namespace mgn;

namespace {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::size_t budget = 0;
    double timeout = 0;
    std::string db_dir;
    std::string cache_dir;
    int jobs = 1;
    bool normalized = false;
    std::string format = "json";
};

// run f, turning anything it throws into a parse error
template <class F>
auto parsing(const std::string& what, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const std::exception& e) {
        throw ParseError(what + ": " + e.what());
    }
}

json load_json(const std::string& arg) {
    return parsing("input '" + arg.substr(0, 40) + "'", [&] {
        auto first = arg.find_first_not_of(" \t\n");
        if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return json::parse(arg);
        std::ifstream in(arg);
        if (!in) throw std::runtime_error("cannot open file");
        return json::parse(in);
    });
}

StableGraph load_graph(const std::string& arg) {
    json j = load_json(arg);
    return parsing("graph", [&] { return graph_from_json(j.contains("graph") ? j.at("graph") : j); });
}

TautClass load_class(const std::string& arg) {
    json j = load_json(arg);
    return parsing("class", [&] { return taut_from_json(j); });
}

HurwitzCycleRef load_cycle(const std::string& s) {
    try {
        return parse_cycle(s);
    } catch (const std::domain_error&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(std::string("cycle: ") + e.what());
    }
}

Group load_group(const std::string& tok) {
    return parsing("group", [&] {
        if (tok.rfind("cyclic:", 0) == 0) return Group::cyclic(std::stoi(tok.substr(7)));
        if (tok.size() > 1 && tok[0] == 'Z') return Group::cyclic(std::stoi(tok.substr(1)));
        if (tok.rfind("table:", 0) == 0) return Group::from_json_file(tok.substr(6));
        throw std::invalid_argument("unknown group token");
    });
}

std::vector<int> load_xi(const Group& G, const std::string& s) {
    return parsing("monodromy datum", [&] {
        std::vector<int> xi;
        std::stringstream ss(s);
        std::string e;
        while (std::getline(ss, e, ',')) {
            if (e.empty()) continue;
            auto p = e.find('^');
            int h = G.parse_element(e.substr(0, p));
            int k = p == std::string::npos ? 1 : std::stoi(e.substr(p + 1));
            for (int i = 0; i < k; ++i) xi.push_back(h);
        }
        return xi;
    });
}

std::vector<int> labels_upto(int n) {
    std::vector<int> l;
    for (int i = 1; i <= n; ++i) l.push_back(i);
    return l;
}

void emit(const json& j) { std::cout << j.dump(1) << "\n"; }

void emit_class(const TautClass& x, const Options& o) {
    if (o.format == "table")
        std::cout << coefficient_table(x);
    else
        emit(to_json(x));
}

CycleDB open_db(const Options& o) { return CycleDB::load_dir(o.db_dir.empty() ? CycleDB::default_dir() : o.db_dir); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"intersection numbers and Hurwitz cycles on moduli of stable curves"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--budget", o.budget, "candidate cap for enumerations (0 = none)");
    app.add_option("--timeout", o.timeout, "wall clock limit in seconds");
    app.add_option("--db", o.db_dir, "cycle database directory");
    app.add_option("--cache", o.cache_dir, "directory for the intersection number cache");
    app.add_option("--jobs", o.jobs, "worker count")->check(CLI::PositiveNumber);
    app.add_flag("--normalized", o.normalized, "read stratum coefficients as normalized by 1/|Aut|");
    app.add_option("--format", o.format, "json or table")->check(CLI::IsMember({"json", "table"}));

    std::string graph, xarg, yarg, cycle, strata, group, xi, action;
    int g = 0, n = 0, max_edges = 0, gprime = 0, degree = -1, copies = 2;

    auto* c_validate = app.add_subcommand("validate", "check a stable graph");
    c_validate->add_option("--graph", graph, "graph JSON or file")->required();

    auto* c_enum = app.add_subcommand("enum-graphs", "stable graphs up to isomorphism");
    c_enum->add_option("--g", g)->required();
    c_enum->add_option("--n", n)->required();
    c_enum->add_option("--max-edges", max_edges)->required();

    auto* c_aut = app.add_subcommand("aut", "automorphism count of a graph");
    c_aut->add_option("--graph", graph)->required();

    auto* c_product = app.add_subcommand("product", "product of two classes");
    c_product->add_option("--x", xarg)->required();
    c_product->add_option("--y", yarg)->required();

    auto* c_pullback = app.add_subcommand("pullback", "boundary pullback to M_A");
    c_pullback->add_option("--graph", graph)->required();
    c_pullback->add_option("--class", xarg)->required();

    auto* c_pushforward = app.add_subcommand("pushforward", "boundary pushforward from M_A");
    c_pushforward->add_option("--graph", graph)->required();
    c_pushforward->add_option("--class", xarg)->required();

    auto* c_integral = app.add_subcommand("integral", "degree of a top class");
    c_integral->add_option("--class", xarg)->required();

    auto* c_deg = app.add_subcommand("deg-delta", "degree of the target map");
    c_deg->add_option("--group", group)->required();
    c_deg->add_option("--gprime", gprime)->required();
    c_deg->add_option("--xi", xi)->required();

    auto* c_gs = app.add_subcommand("enum-gstructures", "generic A-structures on admissible G-graphs");
    c_gs->add_option("--cycle", cycle)->required();
    c_gs->add_option("--graph", graph)->required();

    auto* c_pp = app.add_subcommand("pullpush", "delta_* phi^* of a class");
    c_pp->add_option("--cycle", cycle)->required();
    c_pp->add_option("--class", xarg)->required();

    auto* c_pair = app.add_subcommand("pair", "intersection numbers of a cycle with strata");
    c_pair->add_option("--cycle", cycle)->required();
    c_pair->add_option("--strata", strata, "JSON list of classes")->required();

    auto* c_solve = app.add_subcommand("solve-cycle", "express a cycle by its pairings");
    c_solve->add_option("--cycle", cycle)->required();
    c_solve->add_option("--degree", degree);
    bool store = false;
    c_solve->add_flag("--store", store, "add the result to the database");

    auto* c_diag = app.add_subcommand("diagonal", "class of the small diagonal");
    c_diag->add_option("--g", g)->required();
    c_diag->add_option("--n", n)->required();
    c_diag->add_option("--copies", copies);

    auto* c_db = app.add_subcommand("db", "cycle database");
    c_db->add_option("action", action, "list, show, import or export")
        ->required()
        ->check(CLI::IsMember({"list", "show", "import", "export"}));
    std::string target;
    c_db->add_option("target", target, "cycle string, record file or directory");

    auto* c_bp = app.add_subcommand("boundary", "pullback of a Hurwitz cycle to M_A");
    c_bp->add_option("--cycle", cycle)->required();
    c_bp->add_option("--graph", graph)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    auto& b = global_budget();
    b.cap = o.budget;
    if (o.timeout > 0)
        b.deadline =
            std::chrono::duration<double>(std::chrono::system_clock::now().time_since_epoch()).count() + o.timeout;
    const std::string cache = o.cache_dir.empty() && std::getenv("MGN_CACHE_DIR") ? std::getenv("MGN_CACHE_DIR")
                                                                                   : o.cache_dir;
    if (!cache.empty()) load_witten_cache(cache);
    auto from_input = [&](TautClass x) {
        if (!o.normalized) return x;
        TautClass y(x.space());
        for (const auto& [k, t] : x.terms()) y.add(normalized_stratum(t.graph, &t.dec, t.coeff));
        return y;
    };

    try {
        if (*c_validate) {
            StableGraph G = load_graph(graph);
            if (!G.is_stable()) throw std::domain_error("graph is not stable");
            if (!G.is_connected()) throw std::domain_error("graph is not connected");
            emit({{"valid", true},
                  {"genus", G.total_genus()},
                  {"legs", G.num_legs()},
                  {"dimension", G.dimension()},
                  {"aut", graph_aut(G)}});
        } else if (*c_enum) {
            json out = json::array();
            for (const auto& G : enumerate_graphs(g, labels_upto(n), max_edges)) out.push_back(to_json(G));
            emit(out);
        } else if (*c_aut) {
            emit({{"aut", graph_aut(load_graph(graph))}});
        } else if (*c_product) {
            emit_class(product(from_input(load_class(xarg)), from_input(load_class(yarg))), o);
        } else if (*c_pullback) {
            emit_class(pullback_boundary(load_graph(graph), from_input(load_class(xarg))), o);
        } else if (*c_pushforward) {
            emit_class(pushforward_boundary(load_graph(graph), from_input(load_class(xarg))), o);
        } else if (*c_integral) {
            emit({{"value", evaluate(from_input(load_class(xarg))).str()}});
        } else if (*c_deg) {
            Group G = load_group(group);
            auto h = load_xi(G, xi);
            emit({{"degree", degree_delta(G, gprime, h).str()}});
        } else if (*c_gs) {
            auto c = load_cycle(cycle);
            StableGraph A = load_graph(graph);
            json out = json::array();
            for (const auto& s : enumerate_generic_A_structures(c.spec, A)) {
                json e;
                e["ggraph"] = to_json(s.gg);
                e["edges"] = s.f.edges;
                e["aut"] = aut_count_equivariant(s.gg);
                e["degree"] = ggraph_degree(s.gg).str();
                out.push_back(e);
            }
            emit(out);
        } else if (*c_pp) {
            emit_class(pullpush_delta(load_cycle(cycle), from_input(load_class(xarg))), o);
        } else if (*c_pair) {
            auto c = load_cycle(cycle);
            json j = load_json(strata);
            std::vector<TautClass> xs = parsing("strata", [&] {
                std::vector<TautClass> v;
                for (const auto& e : j) v.push_back(from_input(taut_from_json(e)));
                return v;
            });
            json vals = json::array();
            for (const auto& v : pairing_vector(c, xs)) vals.push_back(v.str());
            emit({{"values", vals}});
        } else if (*c_solve) {
            auto c = load_cycle(cycle);
            HurwitzCycleRef raw = c;
            raw.norm = Rational(1);
            auto s = solve_by_pairing(raw, degree < 0 ? c.codim() : degree);
            TautClass cls = s.cls.scaled(c.norm);
            if (o.format == "table") {
                std::cout << coefficient_table(cls);
            } else {
                json out;
                out["cycle"] = c.str();
                out["class"] = to_json(cls);
                out["unique"] = s.unique;
                json ker = json::array();
                for (const auto& k : s.kernel) ker.push_back(to_json(k));
                out["kernel"] = ker;
                emit(out);
            }
            if (!s.unique) std::cerr << "warning: solution not unique, kernel dimension " << s.kernel.size() << "\n";
            if (store) {
                if (!s.unique) throw std::domain_error("refusing to store a non-unique solution");
                CycleDB db = open_db(o);
                db.add({c, cls, "pairing solver"});
                db.save_dir(o.db_dir.empty() ? CycleDB::default_dir() : o.db_dir);
            }
        } else if (*c_diag) {
            emit_class(diagonal_class(g, n, copies), o);
        } else if (*c_db) {
            CycleDB db = open_db(o);
            if (action == "list") {
                json out = json::array();
                for (const auto& r : db.records()) out.push_back({{"cycle", r.key()}, {"provenance", r.provenance}});
                emit(out);
            } else if (action == "show") {
                const CycleRecord* r = db.find(load_cycle(target));
                if (!r) throw std::out_of_range("missing db entry: " + target);
                emit_class(r->cls, o);
            } else if (action == "import") {
                json j = load_json(target);
                CycleRecord r = parsing("record", [&] {
                    return CycleRecord{parse_cycle(j.at("cycle").get<std::string>()), taut_from_json(j.at("class")),
                                       j.value("provenance", "imported")};
                });
                db.add(r);
                db.save_dir(o.db_dir.empty() ? CycleDB::default_dir() : o.db_dir);
                emit({{"imported", r.key()}});
            } else {
                if (target.empty()) throw ParseError("db export needs a directory");
                db.save_dir(target);
                emit({{"exported", db.records().size()}});
            }
        } else if (*c_bp) {
            auto c = load_cycle(cycle);
            StableGraph A = load_graph(graph);
            CycleDB db = open_db(o);
            auto x = resolve_terms(boundary_pullback(c, A), A, db);
            if (o.format == "json") {
                json j = to_json(x);
                j["setting"] = "cohomology, rational coefficients";
                emit(j);
            } else {
                emit_class(x, o);
            }
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const json::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "precondition failed: " << e.what() << "\n";
        return 3;
    }
    if (!cache.empty()) save_witten_cache(cache);
    return 0;
}
