#include "mgn/json_io.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace mgn {

json to_json(const StableGraph& g) {
    json j;
    j["genus"] = g.genus;
    if (std::any_of(g.tag.begin(), g.tag.end(), [](int t) { return t != 0; })) j["tag"] = g.tag;
    json legs = json::array();
    for (const auto& l : g.legs) legs.push_back({l.label, l.vertex});
    j["legs"] = legs;
    json edges = json::array();
    for (int e = 0; e < g.num_edges(); ++e) edges.push_back({g.hv[2 * e], g.hv[2 * e + 1]});
    j["edges"] = edges;
    return j;
}

StableGraph graph_from_json(const json& j) {
    StableGraph g;
    auto genus = j.at("genus").get<std::vector<int>>();
    std::vector<int> tag(genus.size(), 0);
    if (j.contains("tag")) tag = j.at("tag").get<std::vector<int>>();
    if (tag.size() != genus.size()) throw std::invalid_argument("graph json: tag/genus size mismatch");
    for (size_t v = 0; v < genus.size(); ++v) {
        if (genus[v] < 0) throw std::invalid_argument("graph json: negative genus");
        g.add_vertex(genus[v], tag[v]);
    }
    auto check = [&](int v) {
        if (v < 0 || v >= g.num_vertices()) throw std::invalid_argument("graph json: vertex out of range");
        return v;
    };
    if (j.contains("legs"))
        for (const auto& l : j.at("legs")) g.add_leg(l.at(0).get<int>(), check(l.at(1).get<int>()));
    if (j.contains("edges"))
        for (const auto& e : j.at("edges")) g.add_edge(check(e.at(0).get<int>()), check(e.at(1).get<int>()));
    auto labels = g.leg_labels();
    std::sort(labels.begin(), labels.end());
    if (std::adjacent_find(labels.begin(), labels.end()) != labels.end())
        throw std::invalid_argument("graph json: duplicate leg label");
    return g;
}

json to_json(const Decoration& d) {
    json j;
    j["lpsi"] = d.lpsi;
    j["hpsi"] = d.hpsi;
    j["kappa"] = d.kappa;
    return j;
}

Decoration decoration_from_json(const json& j, const StableGraph& g) {
    Decoration d = Decoration::trivial(g);
    if (j.contains("lpsi")) d.lpsi = j.at("lpsi").get<std::vector<int>>();
    if (j.contains("hpsi")) d.hpsi = j.at("hpsi").get<std::vector<int>>();
    if (j.contains("kappa")) d.kappa = j.at("kappa").get<std::vector<std::vector<int>>>();
    if (static_cast<int>(d.lpsi.size()) != g.num_legs() || static_cast<int>(d.hpsi.size()) != g.num_halfedges() ||
        static_cast<int>(d.kappa.size()) != g.num_vertices())
        throw std::invalid_argument("decoration json: size mismatch with graph");
    return d;
}

json to_json(const Space& s) {
    json j = json::array();
    for (const auto& f : s.factors) j.push_back({{"g", f.g}, {"labels", f.labels}});
    return j;
}

Space space_from_json(const json& j) {
    Space s;
    for (const auto& f : j) {
        Factor x{f.at("g").get<int>(), f.at("labels").get<std::vector<int>>()};
        std::sort(x.labels.begin(), x.labels.end());
        s.factors.push_back(x);
    }
    return s;
}

json to_json(const TautClass& x) {
    json j;
    j["space"] = to_json(x.space());
    json terms = json::array();
    for (const auto& [k, t] : x.terms())
        terms.push_back({{"graph", to_json(t.graph)}, {"dec", to_json(t.dec)}, {"coeff", t.coeff.str()}});
    j["terms"] = terms;
    return j;
}

TautClass taut_from_json(const json& j) {
    TautClass x(space_from_json(j.at("space")));
    for (const auto& t : j.at("terms")) {
        StableGraph g = graph_from_json(t.at("graph"));
        Decoration d = t.contains("dec") ? decoration_from_json(t.at("dec"), g) : Decoration::trivial(g);
        const auto& c = t.at("coeff");
        Rational q = c.is_string() ? Rational::parse(c.get<std::string>()) : Rational(c.get<long long>());
        x.add(g, d, q);
    }
    return x;
}

json to_json(const GGraph& gg) {
    json j = to_json(gg.graph);
    json act = json::object();
    for (int t = 0; t < gg.group.order(); ++t)
        act[gg.group.name(t)] = {{"V", gg.actV[t]}, {"H", gg.actH[t]}, {"L", gg.actL[t]}};
    j["action"] = act;
    json stab = json::object();
    for (size_t h = 0; h < gg.hstab.size(); ++h) stab["h" + std::to_string(h)] = gg.group.name(gg.hstab[h]);
    for (size_t l = 0; l < gg.lstab.size(); ++l)
        stab["l" + std::to_string(gg.graph.legs[l].label)] = gg.group.name(gg.lstab[l]);
    j["stab"] = stab;
    return j;
}

std::string coefficient_table(const TautClass& x) {
    std::vector<std::pair<std::string, std::string>> rows;
    size_t w = 0;
    for (const auto& [k, t] : x.terms()) {
        rows.push_back({t.coeff.str(), describe_term(t.graph, t.dec)});
        w = std::max(w, rows.back().first.size());
    }
    std::ostringstream os;
    for (const auto& [c, d] : rows) os << std::string(w - c.size(), ' ') << c << "  " << d << "\n";
    return os.str();
}

}  // namespace mgn
