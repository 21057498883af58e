#include "mgn/hurwitz.hpp"

#include "mgn/linalg.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mgn {

int HurwitzCycleRef::codim() const {
    auto gp = spec.gprime();
    if (!gp) throw std::domain_error("empty Hurwitz space: " + str());
    int c = 3 * spec.g - 3 + n() - (3 * *gp - 3 + spec.b());
    for (auto [l, a] : psi) c += a;
    return c;
}

std::vector<std::vector<int>> HurwitzCycleRef::symmetric_groups() const {
    auto layout = marking_layout(spec);
    std::vector<char> free(spec.b(), 1);
    for (int l : kept) free[layout.at(l - 1).branch] = 0;
    for (auto [l, a] : psi) free[layout.at(l - 1).branch] = 0;
    std::map<int, std::vector<int>> by_h;
    for (int i = 0; i < spec.b(); ++i)
        if (free[i]) by_h[spec.xi[i]].push_back(i);
    std::vector<std::vector<int>> out;
    for (auto& [h, v] : by_h) out.push_back(v);
    return out;
}

std::string HurwitzCycleRef::str() const {
    std::ostringstream os;
    os << "H:" << spec.g << ":" << spec.group.token() << ":";
    for (int i = 0; i < spec.b(); ++i) os << (i ? "," : "") << spec.group.name(spec.xi[i]);
    os << ":keep=";
    if (kept.empty()) os << "none";
    for (int i = 0; i < n(); ++i) os << (i ? "," : "") << kept[i];
    os << ":norm=" << norm;
    if (!psi.empty()) {
        os << ":psi=";
        for (size_t i = 0; i < psi.size(); ++i) os << (i ? "," : "") << psi[i].first << "^" << psi[i].second;
    }
    return os.str();
}

Rational default_normalization(const HurwitzCycleRef& c) {
    Rational p(1);
    for (const auto& grp : c.symmetric_groups()) p *= factorial(static_cast<int>(grp.size()));
    return Rational(1) / p;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

int parse_int(const std::string& s) {
    std::size_t pos = 0;
    int v = 0;
    try {
        v = std::stoi(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("expected integer, got '" + s + "'");
    }
    if (pos != s.size()) throw std::invalid_argument("expected integer, got '" + s + "'");
    return v;
}

}  // namespace

HurwitzCycleRef parse_cycle(const std::string& s) {
    auto tok = split(s, ':');
    if (tok.size() < 4) throw std::invalid_argument("cycle spec too short: " + s);
    std::size_t i = 1;
    HurwitzCycleRef c;
    c.spec.g = parse_int(tok[i++]);
    std::string gt = tok[i++];
    if (gt == "cyclic") {
        if (i >= tok.size()) throw std::invalid_argument("cyclic group needs an order");
        c.spec.group = Group::cyclic(parse_int(tok[i++]));
    } else if (gt == "table") {
        if (i >= tok.size()) throw std::invalid_argument("table group needs a file");
        c.spec.group = Group::from_json_file(tok[i++]);
    } else if (gt.size() > 1 && gt[0] == 'Z') {
        c.spec.group = Group::cyclic(parse_int(gt.substr(1)));
    } else {
        throw std::invalid_argument("unknown group token '" + gt + "'");
    }
    if (i >= tok.size()) throw std::invalid_argument("missing monodromy datum");
    std::string xs = tok[i++];
    if (!xs.empty() && xs != "-")
        for (const auto& e : split(xs, ',')) {
            auto p = e.find('^');
            int h = c.spec.group.parse_element(e.substr(0, p));
            int k = p == std::string::npos ? 1 : parse_int(e.substr(p + 1));
            if (k < 0) throw std::invalid_argument("negative repetition in datum");
            for (int j = 0; j < k; ++j) c.spec.xi.push_back(h);
        }
    bool have_norm = false;
    for (; i < tok.size(); ++i) {
        const auto& t = tok[i];
        if (t.rfind("keep=", 0) == 0) {
            std::string v = t.substr(5);
            if (v == "all") {
                for (int l = 1; l <= c.spec.r(); ++l) c.kept.push_back(l);
            } else if (!v.empty() && v != "none") {
                for (const auto& x : split(v, ',')) c.kept.push_back(parse_int(x));
            }
        } else if (t.rfind("norm=", 0) == 0) {
            c.norm = Rational::parse(t.substr(5));
            have_norm = true;
        } else if (t.rfind("psi=", 0) == 0) {
            for (const auto& x : split(t.substr(4), ',')) {
                auto p = x.find('^');
                c.psi.push_back({parse_int(x.substr(0, p)), p == std::string::npos ? 1 : parse_int(x.substr(p + 1))});
            }
        } else {
            throw std::invalid_argument("unknown cycle option '" + t + "'");
        }
    }
    std::set<int> seen;
    for (int l : c.kept)
        if (l < 1 || l > c.spec.r() || !seen.insert(l).second)
            throw std::invalid_argument("kept marking out of range or repeated");
    for (auto [l, a] : c.psi)
        if (l < 1 || l > c.spec.r() || a < 0) throw std::invalid_argument("psi insertion out of range");
    if (!c.spec.gprime()) throw std::domain_error("Riemann-Hurwitz gives no integral target genus for " + s);
    if (!have_norm) c.norm = default_normalization(c);
    if (c.norm.sign() <= 0) throw std::invalid_argument("normalization must be positive");
    return c;
}

namespace {

using DecList = std::vector<std::pair<Decoration, Rational>>;

// all raw B-structures on each lift; emit(Y, lift) receives delta_* contributions on M_{g',b}
void pullpush_core(const HurwitzCycleRef& c, const TautClass& x,
                   const std::function<void(const TautClass&, const Lift&)>& emit) {
    const HurwitzSpec& s = c.spec;
    const int gp = *s.gprime();
    if (x.space().factors.size() != 1 || x.space().factors[0].g != s.g)
        throw std::invalid_argument("pullpush: class does not live on M_{g,n} of the cycle");
    std::vector<int> want(c.n());
    std::iota(want.begin(), want.end(), 1);
    if (x.space().factors[0].labels != want) throw std::invalid_argument("pullpush: class labels must be 1..n");
    if (s.degree().sign() <= 0) return;
    const auto layout = marking_layout(s);
    std::vector<std::pair<int, int>> rl;
    for (int j = 0; j < c.n(); ++j) rl.push_back({j + 1, -(j + 1)});
    TautClass y = relabel(x, rl);
    rl.clear();
    for (int j = 0; j < c.n(); ++j) rl.push_back({-(j + 1), c.kept[j]});
    y = relabel(y, rl);
    std::set<int> keptset(c.kept.begin(), c.kept.end());
    for (const auto& m : layout)
        if (!keptset.count(m.label)) y = pullback_forgetful(y, m.label);
    for (auto [l, a] : c.psi) {
        TautClass z(y.space());
        for (const auto& [k, t] : y.terms()) {
            Decoration d = t.dec;
            d.lpsi[t.graph.leg_index(l)] += a;
            z.add(t.graph, d, t.coeff);
        }
        y = z;
    }
    std::map<std::string, std::vector<const TermData*>> bykey;
    std::set<int> ecount;
    int maxe = 0;
    for (const auto& [k, t] : y.terms()) {
        bykey[canonical_key(t.graph)].push_back(&t);
        ecount.insert(t.graph.num_edges());
        maxe = std::max(maxe, t.graph.num_edges());
    }
    if (bykey.empty()) return;

    std::vector<int> blabels(s.b()), colors(s.b());
    std::iota(blabels.begin(), blabels.end(), 1);
    std::iota(colors.begin(), colors.end(), 0);
    for (const auto& grp : c.symmetric_groups())
        for (int i : grp) colors[i] = s.b() + s.xi[grp.front()];
    const Space qspace = Space::connected(gp, blabels);

    for (const auto& Q : enumerate_graphs(gp, blabels, maxe, 0, &colors)) {
        for (const auto& lf : lift_quotient(s, Q, colors)) {
            const GGraph& gg = lf.gg;
            const StableGraph& G = gg.graph;
            const int ne = G.num_edges();
            auto orb = edge_orbits(gg);
            int norb = num_edge_orbits(gg);
            std::vector<int> vstab(G.num_vertices(), 0);
            for (int t = 0; t < s.group.order(); ++t)
                for (int v = 0; v < G.num_vertices(); ++v) vstab[v] += gg.actV[t][v] == v;
            TautClass Y(qspace);
            std::vector<int> S;
            std::function<void(int, int)> rec = [&](int start, int left) {
                if (left == 0) {
                    std::vector<char> hit(norb, 0);
                    for (int e : S) hit[orb[e]] = 1;
                    if (std::count(hit.begin(), hit.end(), 1) != norb) return;
                    global_budget().tick();
                    std::vector<bool> flags(ne, true);
                    for (int e : S) flags[e] = false;
                    Contraction ct = contract(G, flags);
                    auto it = bykey.find(canonical_key(ct.graph));
                    if (it == bykey.end()) return;
                    DecList excess = excess_class(gg, S);
                    for (const TermData* B : it->second) {
                        for (const auto& m : isomorphisms(ct.graph, nullptr, B->graph, nullptr)) {
                            Decoration base = Decoration::trivial(G);
                            for (int l = 0; l < G.num_legs(); ++l) base.lpsi[l] = B->dec.lpsi[m.l[l]];
                            for (int e : S)
                                for (int k = 0; k < 2; ++k)
                                    base.hpsi[2 * e + k] = B->dec.hpsi[m.h[2 * ct.emap[e] + k]];
                            DecList pulled{{base, Rational(1)}};
                            for (int u = 0; u < ct.graph.num_vertices(); ++u) {
                                std::vector<int> pre;
                                for (int v = 0; v < G.num_vertices(); ++v)
                                    if (ct.vmap[v] == u) pre.push_back(v);
                                for (int a : B->dec.kappa[m.v[u]]) {
                                    DecList next;
                                    for (auto& [d, cf] : pulled)
                                        for (int v : pre) {
                                            Decoration d2 = d;
                                            d2.kappa[v].push_back(a);
                                            next.push_back({d2, cf});
                                        }
                                    pulled.swap(next);
                                }
                            }
                            for (const auto& [dp, cp] : pulled)
                                for (const auto& [de, ce] : excess) {
                                    Decoration d = dp;
                                    for (size_t h = 0; h < d.hpsi.size(); ++h) d.hpsi[h] += de.hpsi[h];
                                    if (d.vanishes(G)) continue;
                                    Decoration q = Decoration::trivial(Q);
                                    Rational coef = cp * ce * B->coeff;
                                    for (int l = 0; l < G.num_legs(); ++l) {
                                        if (!d.lpsi[l]) continue;
                                        q.lpsi[lf.q.piL[l]] += d.lpsi[l];
                                        coef *= pow(Rational(1, s.group.element_order(gg.lstab[l])), d.lpsi[l]);
                                    }
                                    for (int h = 0; h < G.num_halfedges(); ++h) {
                                        if (!d.hpsi[h]) continue;
                                        q.hpsi[lf.q.piH[h]] += d.hpsi[h];
                                        coef *= pow(Rational(1, s.group.element_order(gg.hstab[h])), d.hpsi[h]);
                                    }
                                    for (int v = 0; v < G.num_vertices(); ++v)
                                        for (int a : d.kappa[v]) {
                                            q.kappa[lf.q.piV[v]].push_back(a);
                                            coef *= Rational(vstab[v]);
                                        }
                                    Y.add(Q, q, coef);
                                }
                        }
                    }
                    return;
                }
                for (int e = start; e <= ne - left; ++e) {
                    S.push_back(e);
                    rec(e + 1, left - 1);
                    S.pop_back();
                }
            };
            for (int k : ecount)
                if (k >= norb && k <= ne) rec(0, k);
            if (!Y.is_zero()) emit(Y.scaled(lf.degree / Rational(lf.aut)), lf);
        }
    }
}

}  // namespace

TautClass pullpush_delta(const HurwitzCycleRef& c, const TautClass& x) {
    const int gp = *c.spec.gprime();
    std::vector<int> blabels(c.spec.b());
    std::iota(blabels.begin(), blabels.end(), 1);
    TautClass out(Space::connected(gp, blabels));
    auto groups = c.symmetric_groups();
    pullpush_core(c, x, [&](const TautClass& Y, const Lift&) {
        TautClass z = Y;
        for (const auto& grp : groups) {
            std::vector<int> labels;
            for (int i : grp) labels.push_back(i + 1);
            z = symmetrize(z, labels);
        }
        out.add(z);
    });
    return out;
}

Rational pullpush_evaluate(const HurwitzCycleRef& c, const TautClass& x) {
    if (auto d = x.degree(); d && *d + c.codim() != 3 * c.spec.g - 3 + c.n())
        throw std::invalid_argument("pairing: stratum is not of complementary degree");
    Rational sym(1);
    for (const auto& grp : c.symmetric_groups()) sym *= factorial(static_cast<int>(grp.size()));
    Rational total;
    pullpush_core(c, x, [&](const TautClass& Y, const Lift&) { total += evaluate(Y); });
    return total * sym;
}

Rational pairing(const HurwitzCycleRef& c, const TautClass& x) { return c.norm * pullpush_evaluate(c, x); }

std::vector<Rational> pairing_vector(const HurwitzCycleRef& c, const std::vector<TautClass>& strata) {
    std::vector<Rational> out;
    for (const auto& x : strata) out.push_back(pairing(c, x));
    return out;
}

int injectivity_range(int g, int n) {
    if (g == 0) return n - 4;
    if (n == 0) return 2 * g - 2;
    return 2 * g - 3 + n;
}

namespace {

std::vector<TautClass> strata_classes(int g, const std::vector<int>& labels, int k) {
    std::vector<TautClass> out;
    if (k < 0) return out;
    for (const auto& s : decorated_strata(g, labels, k)) out.push_back(normalized_stratum(s.graph, &s.dec));
    return out;
}

int kappa_count(const TautClass& x) {
    const auto& t = x.terms().begin()->second;
    int c = 0;
    for (const auto& k : t.dec.kappa) c += static_cast<int>(k.size());
    return c;
}
int edge_count(const TautClass& x) { return x.terms().begin()->second.graph.num_edges(); }

RatMatrix pairing_matrix(const std::vector<TautClass>& a, const std::vector<TautClass>& b) {
    RatMatrix m(a.size(), b.size());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) m(i, j) = evaluate(product(a[i], b[j]));
    return m;
}

std::vector<int> labels_upto(int n) {
    std::vector<int> l(n);
    std::iota(l.begin(), l.end(), 1);
    return l;
}

}  // namespace

std::vector<TautClass> default_generators(int g, int n, int k) {
    auto labels = labels_upto(n);
    auto gens = strata_classes(g, labels, k);
    std::stable_sort(gens.begin(), gens.end(), [](const TautClass& a, const TautClass& b) {
        return std::make_pair(kappa_count(a), edge_count(a)) < std::make_pair(kappa_count(b), edge_count(b));
    });
    int D = 3 * g - 3 + n;
    auto comp = strata_classes(g, labels, D - k);
    if (gens.empty() || comp.empty()) return {};
    auto rows = independent_rows(pairing_matrix(gens, comp));
    std::vector<TautClass> out;
    for (int r : rows) out.push_back(gens[r]);
    return out;
}

SolveOutcome solve_by_pairing(const HurwitzCycleRef& c, int k, const std::vector<TautClass>* generators,
                              const std::vector<TautClass>* complementary) {
    const int g = c.spec.g, n = c.n();
    const int D = 3 * g - 3 + n;
    if (k != c.codim()) throw std::invalid_argument("solve: degree does not match the codimension of the cycle");
    SolveOutcome res;
    res.cls = TautClass(Space::standard(g, n));
    res.generators = generators ? *generators : default_generators(g, n, k);
    if (res.generators.empty()) return res;
    std::vector<TautClass> comp;
    if (complementary) {
        comp = *complementary;
    } else {
        comp = strata_classes(g, labels_upto(n), D - k);
        // boundary-heavy strata first: their pullbacks under forgetful maps stay small
        std::stable_sort(comp.begin(), comp.end(), [](const TautClass& a, const TautClass& b) {
            return edge_count(a) > edge_count(b);
        });
    }
    RatMatrix M = pairing_matrix(res.generators, comp);
    // greedily choose columns spanning the column space
    std::vector<int> cols = independent_rows(M.transpose());
    const int r = static_cast<int>(cols.size());
    const int ng = static_cast<int>(res.generators.size());
    RatMatrix A(r, ng);
    RatVector v(r);
    for (int j = 0; j < r; ++j) {
        for (int i = 0; i < ng; ++i) A(j, i) = M(i, cols[j]);
        v(j) = pairing(c, comp[cols[j]]);
    }
    auto sol = solve_linear(A, v);
    if (sol.status == SolveStatus::Inconsistent) throw std::logic_error("solve: inconsistent pairing system");
    res.unique = sol.status == SolveStatus::Unique;
    for (int i = 0; i < ng; ++i) {
        res.coeffs.push_back(sol.solution(i));
        res.cls.add(res.generators[i], sol.solution(i));
    }
    for (const auto& kv : sol.kernel) {
        TautClass kc(Space::standard(g, n));
        for (int i = 0; i < ng; ++i) kc.add(res.generators[i], kv(i));
        res.kernel.push_back(kc);
    }
    return res;
}

DiagonalBasis diagonal_basis(int g, const std::vector<int>& labels) {
    DiagonalBasis b;
    b.space = Space::connected(g, labels);
    const int D = b.space.dimension();
    b.e.resize(D + 1);
    b.f.resize(D + 1);
    b.inv.resize(D + 1);
    for (int d = 0; d <= D; ++d) {
        auto E = strata_classes(g, labels, d);
        auto F = strata_classes(g, labels, D - d);
        if (d == 0) E = {TautClass::fundamental(b.space)};
        if (d == D) F = {TautClass::fundamental(b.space)};
        RatMatrix P = pairing_matrix(E, F);
        auto ri = independent_rows(P);
        auto ci = independent_rows(P.transpose());
        if (ri.size() != ci.size()) throw std::domain_error("diagonal: inconsistent pairing ranks");
        for (int i : ri) b.e[d].push_back(E[i]);
        for (int j : ci) b.f[d].push_back(F[j]);
        RatMatrix Q(ri.size(), ci.size());
        for (size_t i = 0; i < ri.size(); ++i)
            for (size_t j = 0; j < ci.size(); ++j) Q(i, j) = P(ri[i], ci[j]);
        if (rank(Q) != static_cast<int>(ri.size()))
            throw std::domain_error("diagonal: rank-deficient pairing in degree " + std::to_string(d));
        b.inv[d] = inverse(Q);
    }
    return b;
}

namespace {

std::map<std::string, DiagonalBasis>& basis_cache() {
    static std::map<std::string, DiagonalBasis> c;
    return c;
}

const DiagonalBasis& cached_basis(const Space& s) {
    auto key = s.str();
    auto& c = basis_cache();
    auto it = c.find(key);
    if (it == c.end()) it = c.emplace(key, diagonal_basis(s.factors[0].g, s.factors[0].labels)).first;
    return it->second;
}

}  // namespace

TautClass diagonal_pushforward(const TautClass& zeta, int m,
                               const std::vector<std::vector<std::pair<int, int>>>& label_maps) {
    if (!zeta.space().is_connected()) throw std::invalid_argument("diagonal: class must live on a connected space");
    if (m < 1) throw std::invalid_argument("diagonal: need at least one copy");
    auto copy = [&](const TautClass& x, int k) {
        return k < static_cast<int>(label_maps.size()) ? relabel(x, label_maps[k]) : x;
    };
    if (m == 1) return copy(zeta, 0);
    const DiagonalBasis& B = cached_basis(zeta.space());
    const int D = zeta.space().dimension();
    TautClass out;
    bool first = true;
    for (int d = 0; d <= D; ++d)
        for (size_t i = 0; i < B.e[d].size(); ++i) {
            TautClass left = diagonal_pushforward(product(zeta, B.e[d][i]), m - 1, label_maps);
            if (left.is_zero()) continue;
            for (size_t j = 0; j < B.f[d].size(); ++j) {
                Rational w = B.inv[d](j, i);
                if (w.is_zero()) continue;
                TautClass t = tensor(left, copy(B.f[d][j], m - 1)).scaled(w);
                if (first) {
                    out = TautClass(t.space());
                    first = false;
                }
                out.add(t);
            }
        }
    if (first) {
        Space s;
        for (int k = 0; k < m; ++k) s.factors.push_back(copy(TautClass::fundamental(zeta.space()), k).space().factors[0]);
        return TautClass(s);
    }
    return out;
}

TautClass diagonal_class(int g, int n, int m) {
    std::vector<std::vector<std::pair<int, int>>> maps(m);
    for (int k = 0; k < m; ++k)
        for (int i = 1; i <= n; ++i) maps[k].push_back({i, k * n + i});
    return diagonal_pushforward(TautClass::fundamental(Space::standard(g, n)), m, maps);
}

}  // namespace mgn
