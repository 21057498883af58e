#include "mgn/taut.hpp"

#include "mgn/witten.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mgn {

Space Space::connected(int g, std::vector<int> labels) {
    std::sort(labels.begin(), labels.end());
    Space s;
    s.factors.push_back({g, labels});
    return s;
}

Space Space::standard(int g, int n) {
    std::vector<int> l(n);
    std::iota(l.begin(), l.end(), 1);
    return connected(g, l);
}

Space Space::of_graph(const StableGraph& A) {
    Space s;
    for (int v = 0; v < A.num_vertices(); ++v) {
        Factor f{A.genus[v], {}};
        for (int i : A.legs_at(v)) f.labels.push_back(A.legs[i].label);
        for (int h : A.halfedges_at(v)) f.labels.push_back(kHalfEdgeLeg + h);
        std::sort(f.labels.begin(), f.labels.end());
        s.factors.push_back(f);
    }
    return s;
}

Space Space::target_of(const StableGraph& A) {
    int nt = 0;
    for (int t : A.tag) nt = std::max(nt, t + 1);
    Space s;
    s.factors.resize(nt);
    std::vector<int> nv(nt, 0), ne(nt, 0);
    for (int v = 0; v < A.num_vertices(); ++v) {
        s.factors[A.tag[v]].g += A.genus[v];
        ++nv[A.tag[v]];
    }
    for (int e = 0; e < A.num_edges(); ++e) ++ne[A.tag[A.hv[2 * e]]];
    for (int t = 0; t < nt; ++t) s.factors[t].g += ne[t] - nv[t] + 1;
    for (const auto& l : A.legs) s.factors[A.tag[l.vertex]].labels.push_back(l.label);
    for (auto& f : s.factors) std::sort(f.labels.begin(), f.labels.end());
    return s;
}

int Space::dimension() const {
    int d = 0;
    for (const auto& f : factors) d += 3 * f.g - 3 + static_cast<int>(f.labels.size());
    return d;
}

int Space::factor_of(int label) const {
    for (size_t t = 0; t < factors.size(); ++t)
        if (std::binary_search(factors[t].labels.begin(), factors[t].labels.end(), label)) return static_cast<int>(t);
    return -1;
}

std::string Space::str() const {
    std::ostringstream os;
    for (size_t t = 0; t < factors.size(); ++t) {
        os << (t ? " x " : "") << "M(" << factors[t].g << ";";
        for (size_t i = 0; i < factors[t].labels.size(); ++i) os << (i ? "," : "") << factors[t].labels[i];
        os << ")";
    }
    return os.str();
}

TautClass TautClass::fundamental(const Space& s) {
    StableGraph g;
    for (size_t t = 0; t < s.factors.size(); ++t) {
        int v = g.add_vertex(s.factors[t].g, static_cast<int>(t));
        for (int l : s.factors[t].labels) g.add_leg(l, v);
    }
    TautClass x(s);
    x.add(g, Decoration::trivial(g), Rational(1));
    return x;
}

void TautClass::add(const StableGraph& g, const Decoration& d, const Rational& c) {
    if (c.is_zero() || d.vanishes(g)) return;
    auto cn = canonicalize(g, &d);
    auto it = terms_.find(cn.key);
    if (it == terms_.end()) {
        terms_.emplace(cn.key, TermData{std::move(cn.graph), std::move(cn.dec), c});
        return;
    }
    it->second.coeff += c;
    if (it->second.coeff.is_zero()) terms_.erase(it);
}

void TautClass::add(const TautClass& o, const Rational& scale) {
    if (!(o.space_ == space_) && !o.terms_.empty())
        throw std::invalid_argument("space mismatch: " + space_.str() + " vs " + o.space_.str());
    if (scale.is_zero()) return;
    for (const auto& [k, t] : o.terms_) {
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(k, TermData{t.graph, t.dec, t.coeff * scale});
            continue;
        }
        it->second.coeff += t.coeff * scale;
        if (it->second.coeff.is_zero()) terms_.erase(it);
    }
}

Rational TautClass::coeff(const StableGraph& g, const Decoration* d) const {
    auto it = terms_.find(canonical_key(g, d));
    return it == terms_.end() ? Rational(0) : it->second.coeff;
}

TautClass TautClass::operator-() const { return scaled(Rational(-1)); }

TautClass TautClass::scaled(const Rational& c) const {
    TautClass out(space_);
    out.add(*this, c);
    return out;
}

TautClass operator+(const TautClass& a, const TautClass& b) {
    TautClass out = a;
    out.add(b);
    return out;
}

TautClass operator-(const TautClass& a, const TautClass& b) {
    TautClass out = a;
    out.add(b, Rational(-1));
    return out;
}

std::optional<int> TautClass::degree() const {
    std::optional<int> d;
    for (const auto& [k, t] : terms_) {
        int x = t.graph.num_edges() + t.dec.degree();
        if (d && *d != x) return std::nullopt;
        d = x;
    }
    return d;
}

TautClass TautClass::degree_part(int d) const {
    TautClass out(space_);
    for (const auto& [k, t] : terms_)
        if (t.graph.num_edges() + t.dec.degree() == d) out.terms_.emplace(k, t);
    return out;
}

bool operator==(const TautClass& a, const TautClass& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    if (!a.terms_.empty() && !(a.space_ == b.space_)) return false;
    auto i = a.terms_.begin();
    for (auto j = b.terms_.begin(); j != b.terms_.end(); ++i, ++j)
        if (i->first != j->first || i->second.coeff != j->second.coeff) return false;
    return true;
}

std::string describe_term(const StableGraph& g, const Decoration& d) {
    std::ostringstream os;
    os << describe(g);
    for (int i = 0; i < g.num_legs(); ++i)
        if (d.lpsi[i]) os << " psi" << g.legs[i].label << "^" << d.lpsi[i];
    for (int h = 0; h < g.num_halfedges(); ++h)
        if (d.hpsi[h]) os << " psi_h" << h << "^" << d.hpsi[h];
    for (int v = 0; v < g.num_vertices(); ++v)
        for (int a : d.kappa[v]) os << " kappa" << a << "@" << v;
    return os.str();
}

std::string describe(const TautClass& x) {
    std::ostringstream os;
    for (const auto& [k, t] : x.terms()) os << t.coeff << " * " << describe_term(t.graph, t.dec) << "\n";
    return os.str();
}

TautClass psi_class(const Space& s, int label, int exponent) {
    auto f = TautClass::fundamental(s);
    const auto& t = f.terms().begin()->second;
    Decoration d = t.dec;
    d.lpsi[t.graph.leg_index(label)] = exponent;
    TautClass out(s);
    out.add(t.graph, d, Rational(1));
    return out;
}

TautClass kappa_class(const Space& s, int a, int factor) {
    auto f = TautClass::fundamental(s);
    const auto& t = f.terms().begin()->second;
    Decoration d = t.dec;
    for (int v = 0; v < t.graph.num_vertices(); ++v)
        if (t.graph.tag[v] == factor) d.kappa[v].push_back(a);
    TautClass out(s);
    out.add(t.graph, d, Rational(1));
    return out;
}

TautClass stratum_class(const StableGraph& A, const Decoration* theta, const Rational& c) {
    TautClass out(Space::target_of(A));
    out.add(A, theta ? *theta : Decoration::trivial(A), c);
    return out;
}

long long graph_aut(const StableGraph& g) { return canonicalize(g).aut; }

TautClass normalized_stratum(const StableGraph& A, const Decoration* theta, const Rational& c) {
    return stratum_class(A, theta, c / Rational(graph_aut(A)));
}

Rational evaluate(const TautClass& x) {
    const int dim = x.space().dimension();
    Rational total;
    for (const auto& [k, t] : x.terms()) {
        const auto& g = t.graph;
        if (g.num_edges() + t.dec.degree() != dim) throw std::domain_error("evaluate: class is not of top degree");
        Rational p(1);
        for (int v = 0; v < g.num_vertices() && !p.is_zero(); ++v) {
            std::vector<int> psi;
            for (int i : g.legs_at(v)) psi.push_back(t.dec.lpsi[i]);
            for (int h : g.halfedges_at(v)) psi.push_back(t.dec.hpsi[h]);
            p *= kappa_psi_integral(g.genus[v], psi, t.dec.kappa[v]);
        }
        total += t.coeff * p;
    }
    return total;
}

TautClass relabel(const TautClass& x, const std::vector<std::pair<int, int>>& map) {
    Space s = x.space();
    for (auto& f : s.factors) {
        for (auto& l : f.labels)
            for (auto [a, b] : map)
                if (l == a) {
                    l = b;
                    break;
                }
        std::sort(f.labels.begin(), f.labels.end());
    }
    TautClass out(s);
    for (const auto& [k, t] : x.terms()) out.add(relabel_legs(t.graph, map), t.dec, t.coeff);
    return out;
}

namespace {

// orbit of one term under permutations of labels, as canonical key -> term
std::map<std::string, TermData> term_orbit(const TermData& t, const std::vector<int>& labels) {
    std::map<std::string, TermData> orbit;
    std::vector<TermData> queue{t};
    orbit.emplace(canonical_key(t.graph, &t.dec), t);
    while (!queue.empty()) {
        TermData cur = queue.back();
        queue.pop_back();
        for (size_t i = 0; i + 1 < labels.size(); ++i) {
            TermData nx{relabel_legs(cur.graph, {{labels[i], labels[i + 1]}, {labels[i + 1], labels[i]}}), cur.dec,
                        cur.coeff};
            auto c = canonicalize(nx.graph, &nx.dec);
            if (orbit.count(c.key)) continue;
            TermData cn{c.graph, c.dec, t.coeff};
            orbit.emplace(c.key, cn);
            queue.push_back(cn);
        }
    }
    return orbit;
}

}  // namespace

TautClass symmetrize(const TautClass& x, const std::vector<int>& labels) {
    TautClass out(x.space());
    Rational order = factorial(static_cast<int>(labels.size()));
    for (const auto& [k, t] : x.terms()) {
        auto orbit = term_orbit(t, labels);
        Rational w = order / Rational(static_cast<long>(orbit.size()));
        for (const auto& [k2, o] : orbit) out.add(o.graph, o.dec, t.coeff * w);
    }
    return out;
}

TautClass orbit_sum(const TautClass& x, const std::vector<int>& labels) {
    TautClass out(x.space());
    for (const auto& [k, t] : x.terms())
        for (const auto& [k2, o] : term_orbit(t, labels)) out.add(o.graph, o.dec, t.coeff);
    return out;
}

TautClass tensor(const TautClass& x, const TautClass& y) {
    Space s = x.space();
    const int shift = static_cast<int>(s.factors.size());
    for (const auto& f : y.space().factors) s.factors.push_back(f);
    std::vector<int> all;
    for (const auto& f : s.factors) all.insert(all.end(), f.labels.begin(), f.labels.end());
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end())
        throw std::invalid_argument("tensor: factors share a leg label");
    TautClass out(s);
    for (const auto& [k1, a] : x.terms())
        for (const auto& [k2, b] : y.terms()) {
            StableGraph g = a.graph;
            Decoration d = a.dec;
            const int nv = g.num_vertices();
            for (int v = 0; v < b.graph.num_vertices(); ++v) {
                g.add_vertex(b.graph.genus[v], b.graph.tag[v] + shift);
                d.kappa.push_back(b.dec.kappa[v]);
            }
            for (int e = 0; e < b.graph.num_edges(); ++e) {
                g.add_edge(b.graph.hv[2 * e] + nv, b.graph.hv[2 * e + 1] + nv);
                d.hpsi.push_back(b.dec.hpsi[2 * e]);
                d.hpsi.push_back(b.dec.hpsi[2 * e + 1]);
            }
            for (int i = 0; i < b.graph.num_legs(); ++i) {
                g.add_leg(b.graph.legs[i].label, b.graph.legs[i].vertex + nv);
                d.lpsi.push_back(b.dec.lpsi[i]);
            }
            out.add(g, d, a.coeff * b.coeff);
        }
    return out;
}

TautClass lambda1(int g) {
    if (g < 2) throw std::invalid_argument("lambda1: only g >= 2 and n = 0 supported");
    Space s = Space::standard(g, 0);
    TautClass out = kappa_class(s, 1);
    StableGraph irr;
    irr.add_vertex(g - 1);
    irr.add_edge(0, 0);
    out.add(normalized_stratum(irr));
    for (int g1 = 1; 2 * g1 <= g; ++g1) {
        StableGraph sep;
        sep.add_vertex(g1);
        sep.add_vertex(g - g1);
        sep.add_edge(0, 1);
        out.add(normalized_stratum(sep));
    }
    return out.scaled(Rational(1, 12));
}

}  // namespace mgn
