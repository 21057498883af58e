#include "mgn/cycledb.hpp"

#include "mgn/json_io.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mgn {

namespace fs = std::filesystem;

std::string CycleDB::default_dir() {
    if (const char* e = std::getenv("MGN_DB_DIR")) return e;
#ifdef MGN_DATA_DIR
    return std::string(MGN_DATA_DIR) + "/cycledb";
#else
    return "data/cycledb";
#endif
}

CycleDB CycleDB::load_dir(const std::string& dir) {
    CycleDB db;
    if (!fs::exists(dir)) return db;
    std::vector<fs::path> files;
    for (const auto& ent : fs::directory_iterator(dir))
        if (ent.path().extension() == ".json") files.push_back(ent.path());
    std::sort(files.begin(), files.end());
    for (const auto& p : files) {
        std::ifstream in(p);
        json j;
        in >> j;
        CycleRecord r;
        r.ref = parse_cycle(j.at("cycle").get<std::string>());
        r.cls = taut_from_json(j.at("class"));
        r.provenance = j.value("provenance", "");
        db.add(std::move(r));
    }
    return db;
}

void CycleDB::save_dir(const std::string& dir) const {
    fs::create_directories(dir);
    for (const auto& r : records_) {
        std::string name = r.key();
        for (char& ch : name)
            if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '-' && ch != '_') ch = '_';
        json j;
        j["cycle"] = r.key();
        j["class"] = to_json(r.cls);
        j["provenance"] = r.provenance;
        std::ofstream(fs::path(dir) / (name + ".json")) << j.dump(1) << "\n";
    }
}

void CycleDB::add(CycleRecord r) {
    for (auto& x : records_)
        if (x.key() == r.key()) {
            x = std::move(r);
            return;
        }
    records_.push_back(std::move(r));
}

namespace {

// cosets of the kept markings of each branch
std::vector<std::set<int>> kept_pattern(const HurwitzCycleRef& c, const std::vector<Marking>& layout) {
    std::vector<std::set<int>> k(c.spec.b());
    for (int l : c.kept) k[layout[l - 1].branch].insert(layout[l - 1].coset);
    return k;
}

}  // namespace

const CycleRecord* CycleDB::find(const HurwitzCycleRef& q, std::vector<std::pair<int, int>>* labels) const {
    if (!q.psi.empty()) {
        for (const auto& r : records_)
            if (r.key() == q.str()) {
                if (labels) {
                    labels->clear();
                    for (int j = 1; j <= q.n(); ++j) labels->push_back({j, j});
                }
                return &r;
            }
        return nullptr;
    }
    const auto lq = marking_layout(q.spec);
    const auto kq = kept_pattern(q, lq);
    for (const auto& r : records_) {
        if (!r.ref.psi.empty() || r.ref.spec.g != q.spec.g || r.ref.spec.b() != q.spec.b() || r.ref.n() != q.n())
            continue;
        if (r.ref.spec.group.table() != q.spec.group.table()) continue;
        const auto lr = marking_layout(r.ref.spec);
        const auto kr = kept_pattern(r.ref, lr);
        const int b = q.spec.b();
        std::vector<int> sigma(b, -1);
        std::vector<char> used(b, 0);
        std::function<bool(int)> rec = [&](int i) {
            if (i == b) return true;
            for (int j = 0; j < b; ++j) {
                if (used[j] || r.ref.spec.xi[j] != q.spec.xi[i] || kr[j] != kq[i]) continue;
                used[j] = 1;
                sigma[i] = j;
                if (rec(i + 1)) return true;
                used[j] = 0;
            }
            return false;
        };
        if (!rec(0)) continue;
        if (labels) {
            labels->clear();
            for (int jq = 0; jq < q.n(); ++jq) {
                const Marking& m = lq[q.kept[jq] - 1];
                int rl = -1;
                for (const auto& x : lr)
                    if (x.branch == sigma[m.branch] && x.coset == m.coset) rl = x.label;
                auto it = std::find(r.ref.kept.begin(), r.ref.kept.end(), rl);
                labels->push_back({static_cast<int>(it - r.ref.kept.begin()) + 1, jq + 1});
            }
        }
        return &r;
    }
    return nullptr;
}

TautClass CycleDB::raw_class(const HurwitzCycleRef& q) {
    std::vector<std::pair<int, int>> map;
    if (const CycleRecord* r = find(q, &map)) return relabel(r->cls, map).scaled(Rational(1) / r->ref.norm);
    if (!auto_solve) throw std::out_of_range("missing db entry: " + q.str());
    HurwitzCycleRef raw = q;
    raw.norm = Rational(1);
    auto s = solve_by_pairing(raw, raw.codim());
    if (!s.unique) throw std::domain_error("cycle not determined by pairings: " + q.str());
    CycleRecord rec;
    rec.ref = q;
    rec.ref.norm = q.psi.empty() ? default_normalization(q) : Rational(1);
    rec.cls = s.cls.scaled(rec.ref.norm);
    rec.provenance = "computed by the pairing solver";
    add(rec);
    return s.cls;
}

TautClass transport(const TautClass& x, const Space& target, const std::vector<int>& fmap,
                    const std::vector<std::pair<int, int>>& relabel_map, const std::vector<std::pair<int, int>>& glue) {
    TautClass out(target);
    for (const auto& [k, t] : x.terms()) {
        StableGraph g = t.graph;
        Decoration d = t.dec;
        for (auto [a, b] : glue) {
            int ia = g.leg_index(a), ib = g.leg_index(b);
            if (ia < 0 || ib < 0) throw std::logic_error("transport: glued label missing");
            g.add_edge(g.legs[ia].vertex, g.legs[ib].vertex);
            d.hpsi.push_back(d.lpsi[ia]);
            d.hpsi.push_back(d.lpsi[ib]);
            for (int i : {std::max(ia, ib), std::min(ia, ib)}) {
                g.legs.erase(g.legs.begin() + i);
                d.lpsi.erase(d.lpsi.begin() + i);
            }
        }
        g = relabel_legs(g, relabel_map);
        for (auto& tg : g.tag) tg = fmap.at(tg);
        out.add(g, d, t.coeff);
    }
    return out;
}

namespace {

bool stable_gn(int g, int n) { return 2 * g - 2 + n > 0; }

struct Setup {
    int gp;
    std::vector<Marking> layout;
    std::vector<int> colors, blabels;
    std::vector<int> keptidx;  // marking label -> kept index, 0 if forgotten
    Rational sym{1};
};

Setup setup(const HurwitzCycleRef& c) {
    Setup s;
    s.gp = *c.spec.gprime();
    s.layout = marking_layout(c.spec);
    s.blabels.resize(c.spec.b());
    std::iota(s.blabels.begin(), s.blabels.end(), 1);
    s.colors.resize(c.spec.b());
    std::iota(s.colors.begin(), s.colors.end(), 0);
    for (const auto& grp : c.symmetric_groups()) {
        for (int i : grp) s.colors[i] = c.spec.b() + c.spec.xi[grp.front()];
        s.sym *= factorial(static_cast<int>(grp.size()));
    }
    s.keptidx.assign(s.layout.size() + 1, 0);
    for (int j = 0; j < c.n(); ++j) s.keptidx[c.kept[j]] = j + 1;
    return s;
}

}  // namespace

std::string HurwitzTerm::describe() const {
    std::ostringstream os;
    const auto& g = lift.gg.graph;
    os << "gamma " << mgn::describe(g) << " h[";
    for (size_t h = 0; h < lift.gg.hstab.size(); ++h) os << (h ? "," : "") << lift.gg.hstab[h];
    os << "] S{";
    for (size_t i = 0; i < S.size(); ++i) os << (i ? "," : "") << S[i];
    os << "} mult " << multiplicity << " excess terms " << excess.size();
    return os.str();
}

std::vector<HurwitzTerm> boundary_pullback(const HurwitzCycleRef& c, const StableGraph& A) {
    std::vector<HurwitzTerm> out;
    if (A.total_genus() != c.spec.g || A.num_legs() != c.n())
        throw std::invalid_argument("boundary_pullback: A is not a graph of M_{g,n} for this cycle");
    if (c.spec.degree().sign() <= 0) return out;
    Setup su = setup(c);
    const int ea = A.num_edges();
    for (const auto& Q : enumerate_graphs(su.gp, su.blabels, ea, 0, &su.colors)) {
        for (const auto& lf : lift_quotient(c.spec, Q, su.colors)) {
            const StableGraph& G = lf.gg.graph;
            const int ne = G.num_edges();
            if (ne < ea) continue;
            auto orb = edge_orbits(lf.gg);
            int norb = num_edge_orbits(lf.gg);
            if (norb > ea) continue;
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
                    StableGraph F = ct.graph;
                    F.legs.clear();
                    for (const auto& l : ct.graph.legs)
                        if (su.keptidx[l.label]) F.add_leg(su.keptidx[l.label], l.vertex);
                    if (!F.is_stable()) return;
                    for (const auto& m : isomorphisms(F, nullptr, A, nullptr)) {
                        HurwitzTerm t;
                        t.lift = lf;
                        t.S = S;
                        t.contraction = ct;
                        t.iso = m;
                        t.excess = excess_class(lf.gg, S);
                        t.multiplicity = c.norm * su.sym / Rational(lf.aut);
                        t.cycle = c;
                        out.push_back(std::move(t));
                    }
                    return;
                }
                for (int e = start; e <= ne - left; ++e) {
                    S.push_back(e);
                    rec(e + 1, left - 1);
                    S.pop_back();
                }
            };
            rec(0, ea);
        }
    }
    return out;
}

namespace {

TautClass resolve_one(const HurwitzTerm& term, const Decoration& ex, const StableGraph& A, CycleDB& db) {
    const GGraph& gg = term.lift.gg;
    const StableGraph& G = gg.graph;
    const Group& Gr = gg.group;
    const Contraction& ct = term.contraction;
    Setup su = setup(term.cycle);
    auto forgotten_leg = [&](int li) { return su.keptidx[G.legs[li].label] == 0; };

    std::vector<int> deferred;
    std::vector<std::pair<int, int>> psi_after;
    std::vector<int> fvert;
    TautClass prod;
    bool have = false;
    for (int v : vertex_orbit_reps(gg)) {
        LocalMonodromy lm = local_monodromy(gg, v);
        HurwitzSpec ls = lm.spec();
        auto ll = marking_layout(ls);
        std::vector<LocalPoint> pt(ll.size() + 1);
        std::vector<int> ptlabel(ll.size() + 1);
        for (const auto& mk : ll) {
            LocalPoint r = lm.reps[mk.branch];
            int t = lm.elems[mk.coset];
            LocalPoint p{r.leg, r.leg ? gg.actL[t][r.index] : gg.actH[t][r.index]};
            pt[mk.label] = p;
            ptlabel[mk.label] = p.leg ? G.legs[p.index].label : kHalfEdgeLeg + p.index;
        }
        std::vector<int> copies;  // group elements t_k with t_k v distinct
        {
            std::set<int> seen;
            for (int t = 0; t < Gr.order(); ++t)
                if (seen.insert(gg.actV[t][v]).second) copies.push_back(t);
        }
        const int nv = static_cast<int>(ll.size());
        HurwitzCycleRef q;
        q.spec = ls;
        q.norm = Rational(1);
        TautClass zeta;
        if (copies.size() == 1) {
            std::vector<int> W;
            for (const auto& mk : ll)
                if (pt[mk.label].leg && forgotten_leg(pt[mk.label].index)) W.push_back(mk.label);
            while (!W.empty() && !stable_gn(lm.g, nv - static_cast<int>(W.size()))) {
                deferred.push_back(ptlabel[W.back()]);
                W.pop_back();
            }
            std::vector<std::pair<int, int>> psi_here;
            for (const auto& mk : ll)
                if (!pt[mk.label].leg && ex.hpsi[pt[mk.label].index] > 0)
                    psi_here.push_back({mk.label, ex.hpsi[pt[mk.label].index]});
            for (const auto& mk : ll)
                if (std::find(W.begin(), W.end(), mk.label) == W.end()) q.kept.push_back(mk.label);
            if (!W.empty()) {
                q.psi = psi_here;
            } else {
                for (auto [l, a] : psi_here) psi_after.push_back({ptlabel[l], a});
            }
            std::vector<std::pair<int, int>> map;
            for (int j = 0; j < q.n(); ++j) map.push_back({j + 1, ptlabel[q.kept[j]]});
            zeta = relabel(db.raw_class(q), map);
            fvert.push_back(v);
        } else {
            for (const auto& mk : ll) q.kept.push_back(mk.label);
            std::vector<std::pair<int, int>> map;
            for (int j = 0; j < q.n(); ++j) map.push_back({j + 1, ptlabel[q.kept[j]]});
            TautClass base = relabel(db.raw_class(q), map);
            std::vector<std::vector<std::pair<int, int>>> maps;
            for (int t : copies) {
                std::vector<std::pair<int, int>> mp;
                for (const auto& mk : ll) {
                    LocalPoint p = pt[mk.label];
                    int lab = p.leg ? G.legs[gg.actL[t][p.index]].label : kHalfEdgeLeg + gg.actH[t][p.index];
                    mp.push_back({ptlabel[mk.label], lab});
                    if (p.leg && forgotten_leg(gg.actL[t][p.index])) deferred.push_back(lab);
                    if (!p.leg && ex.hpsi[gg.actH[t][p.index]] > 0)
                        psi_after.push_back({lab, ex.hpsi[gg.actH[t][p.index]]});
                }
                maps.push_back(mp);
                fvert.push_back(gg.actV[t][v]);
            }
            zeta = diagonal_pushforward(base, static_cast<int>(copies.size()), maps);
        }
        prod = have ? tensor(prod, zeta) : zeta;
        have = true;
    }
    if (!psi_after.empty()) {
        TautClass z(prod.space());
        for (const auto& [k, t] : prod.terms()) {
            Decoration d = t.dec;
            for (auto [l, a] : psi_after) d.lpsi[t.graph.leg_index(l)] += a;
            z.add(t.graph, d, t.coeff);
        }
        prod = z;
    }
    // glue onto gamma_S
    const StableGraph& GS = ct.graph;
    Space sp;
    for (int u = 0; u < GS.num_vertices(); ++u) {
        Factor f{GS.genus[u], {}};
        for (const auto& l : GS.legs)
            if (l.vertex == u &&
                (su.keptidx[l.label] || std::find(deferred.begin(), deferred.end(), l.label) != deferred.end()))
                f.labels.push_back(l.label);
        for (int h : GS.halfedges_at(u)) f.labels.push_back(kHalfEdgeLeg + h);
        std::sort(f.labels.begin(), f.labels.end());
        sp.factors.push_back(f);
    }
    std::vector<std::pair<int, int>> glue, rl;
    for (int e = 0; e < G.num_edges(); ++e) {
        if (ct.emap[e] < 0) {
            glue.push_back({kHalfEdgeLeg + 2 * e, kHalfEdgeLeg + 2 * e + 1});
        } else {
            for (int k = 0; k < 2; ++k) rl.push_back({kHalfEdgeLeg + 2 * e + k, kHalfEdgeLeg + 2 * ct.emap[e] + k});
        }
    }
    std::vector<int> fmap;
    for (int v : fvert) fmap.push_back(ct.vmap[v]);
    TautClass cls = transport(prod, sp, fmap, rl, glue);
    for (int l : deferred) cls = pushforward_forgetful(cls, l);
    // identify with M_A
    std::vector<int> amap(GS.num_vertices());
    for (int u = 0; u < GS.num_vertices(); ++u) amap[u] = term.iso.v[u];
    rl.clear();
    for (const auto& l : GS.legs)
        if (su.keptidx[l.label]) rl.push_back({l.label, su.keptidx[l.label]});
    for (int h = 0; h < GS.num_halfedges(); ++h) rl.push_back({kHalfEdgeLeg + h, kHalfEdgeLeg + term.iso.h[h]});
    Space target = Space::of_graph(A);
    // factor order of of_graph(A) is by vertex, matching amap
    return transport(cls, target, amap, rl);
}

}  // namespace

TautClass resolve_terms(const std::vector<HurwitzTerm>& terms, const StableGraph& A, CycleDB& db) {
    TautClass out(Space::of_graph(A));
    for (const auto& t : terms)
        for (const auto& [d, c] : t.excess) out.add(resolve_one(t, d, A, db), c * t.multiplicity);
    return out;
}

namespace {

// products of per-factor strata with the given total degree
std::vector<TautClass> product_strata(const Space& s, int degree) {
    std::vector<TautClass> out;
    std::function<void(size_t, int, TautClass)> rec = [&](size_t f, int left, TautClass acc) {
        if (f == s.factors.size()) {
            if (left == 0) out.push_back(acc);
            return;
        }
        const Factor& fa = s.factors[f];
        int dim = 3 * fa.g - 3 + static_cast<int>(fa.labels.size());
        for (int d = 0; d <= std::min(dim, left); ++d)
            for (const auto& st : decorated_strata(fa.g, fa.labels, d)) {
                TautClass x = stratum_class(st.graph, &st.dec);
                rec(f + 1, left - d, f == 0 ? x : tensor(acc, x));
            }
    };
    rec(0, degree, TautClass());
    return out;
}

}  // namespace

Constraints boundary_constraints(const HurwitzCycleRef& c, const std::vector<TautClass>& generators,
                                 const std::vector<StableGraph>& As, CycleDB& db) {
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
    const int k = c.codim();
    for (const auto& A : As) {
        TautClass target = resolve_terms(boundary_pullback(c, A), A, db);
        std::vector<TautClass> pulled;
        for (const auto& g : generators) pulled.push_back(pullback_boundary(A, g));
        Space s = Space::of_graph(A);
        for (const auto& w : product_strata(s, s.dimension() - k)) {
            std::vector<Rational> row;
            bool nz = false;
            for (const auto& p : pulled) {
                row.push_back(p.is_zero() ? Rational(0) : evaluate(product(p, w)));
                nz = nz || !row.back().is_zero();
            }
            Rational r = target.is_zero() ? Rational(0) : evaluate(product(target, w));
            if (!nz && r.is_zero()) continue;
            rows.push_back(row);
            rhs.push_back(r);
        }
    }
    Constraints out;
    out.m = RatMatrix(rows.size(), generators.size());
    out.rhs = RatVector(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
        for (size_t j = 0; j < generators.size(); ++j) out.m(i, j) = rows[i][j];
        out.rhs(i) = rhs[i];
    }
    return out;
}

}  // namespace mgn
