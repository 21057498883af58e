#include "mgn/iso.hpp"

#include <algorithm>
#include <stdexcept>

namespace mgn {

namespace {

long long encode_vertex(int genus, int tag, const std::vector<int>& kappa) {
    if (genus >= 256 || tag >= 256 || kappa.size() > 11) throw std::length_error("vertex data out of range");
    long long c = (static_cast<long long>(tag) << 52) | (static_cast<long long>(genus) << 44);
    auto k = kappa;
    std::sort(k.begin(), k.end());
    for (size_t i = 0; i < k.size(); ++i) {
        if (k[i] >= 15) throw std::length_error("kappa index out of range");
        c |= static_cast<long long>(k[i] + 1) << (4 * i);
    }
    return c;
}

struct Search {
    const IsoData& A;
    const IsoData& B;
    const std::function<bool(const IsoMap&)>& cb;
    IsoMap m, inv;
    std::vector<std::pair<int, int>> trail;
    bool act;
    bool stop = false;
    long long count = 0;

    Search(const IsoData& a, const IsoData& b, const std::function<bool(const IsoMap&)>& f)
        : A(a), B(b), cb(f), act(a.actV.size() > 1) {
        m.v.assign(a.g->num_vertices(), -1);
        m.h.assign(a.g->num_halfedges(), -1);
        m.l.assign(a.g->num_legs(), -1);
        inv.v.assign(b.g->num_vertices(), -1);
        inv.h.assign(b.g->num_halfedges(), -1);
        inv.l.assign(b.g->num_legs(), -1);
    }

    bool setV(int x, int y) {
        if (m.v[x] >= 0) return m.v[x] == y;
        if (inv.v[y] >= 0 || A.vcol[x] != B.vcol[y]) return false;
        m.v[x] = y;
        inv.v[y] = x;
        trail.push_back({0, x});
        if (act)
            for (size_t z = 1; z < A.actV.size(); ++z)
                if (!setV(A.actV[z][x], B.actV[z][y])) return false;
        return true;
    }

    bool setH(int x, int y) {
        if (m.h[x] >= 0) return m.h[x] == y;
        if (inv.h[y] >= 0 || A.hcol[x] != B.hcol[y]) return false;
        m.h[x] = y;
        inv.h[y] = x;
        trail.push_back({1, x});
        if (!setV(A.g->hv[x], B.g->hv[y])) return false;
        if (!setH(x ^ 1, y ^ 1)) return false;
        if (act)
            for (size_t z = 1; z < A.actH.size(); ++z)
                if (!setH(A.actH[z][x], B.actH[z][y])) return false;
        return true;
    }

    bool setL(int x, int y) {
        if (m.l[x] >= 0) return m.l[x] == y;
        if (inv.l[y] >= 0 || A.lcol[x] != B.lcol[y]) return false;
        m.l[x] = y;
        inv.l[y] = x;
        trail.push_back({2, x});
        if (!setV(A.g->legs[x].vertex, B.g->legs[y].vertex)) return false;
        if (act)
            for (size_t z = 1; z < A.actL.size(); ++z)
                if (!setL(A.actL[z][x], B.actL[z][y])) return false;
        return true;
    }

    void undo(size_t mark) {
        while (trail.size() > mark) {
            auto [k, x] = trail.back();
            trail.pop_back();
            if (k == 0) {
                inv.v[m.v[x]] = -1;
                m.v[x] = -1;
            } else if (k == 1) {
                inv.h[m.h[x]] = -1;
                m.h[x] = -1;
            } else {
                inv.l[m.l[x]] = -1;
                m.l[x] = -1;
            }
        }
    }

    template <class F>
    void branch(int x, const std::vector<int>& cands, F set) {
        for (int y : cands) {
            size_t mark = trail.size();
            if (set(x, y)) rec();
            undo(mark);
            if (stop) return;
        }
    }

    void rec() {
        if (stop) return;
        const StableGraph& ga = *A.g;
        const StableGraph& gb = *B.g;
        for (int x = 0; x < ga.num_legs(); ++x) {
            if (m.l[x] >= 0) continue;
            std::vector<int> c;
            int tv = m.v[ga.legs[x].vertex];
            for (int y = 0; y < gb.num_legs(); ++y)
                if (inv.l[y] < 0 && A.lcol[x] == B.lcol[y] && (tv < 0 || gb.legs[y].vertex == tv)) c.push_back(y);
            branch(x, c, [&](int a, int b) { return setL(a, b); });
            return;
        }
        int pick = -1;
        for (int x = 0; x < ga.num_halfedges(); ++x) {
            if (m.h[x] >= 0) continue;
            if (pick < 0) pick = x;
            if (m.v[ga.hv[x]] >= 0) {
                pick = x;
                break;
            }
        }
        if (pick >= 0) {
            std::vector<int> c;
            int tv = m.v[ga.hv[pick]];
            for (int y = 0; y < gb.num_halfedges(); ++y)
                if (inv.h[y] < 0 && A.hcol[pick] == B.hcol[y] && (tv < 0 || gb.hv[y] == tv)) c.push_back(y);
            branch(pick, c, [&](int a, int b) { return setH(a, b); });
            return;
        }
        for (int x = 0; x < ga.num_vertices(); ++x) {
            if (m.v[x] >= 0) continue;
            std::vector<int> c;
            for (int y = 0; y < gb.num_vertices(); ++y)
                if (inv.v[y] < 0) c.push_back(y);
            branch(x, c, [&](int a, int b) { return setV(a, b); });
            return;
        }
        ++count;
        if (!cb(m)) stop = true;
    }
};

template <class T>
bool same_multiset(std::vector<T> a, std::vector<T> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

}  // namespace

IsoData IsoData::plain(const StableGraph& g, const Decoration* d, const std::vector<int>* leg_color) {
    IsoData out;
    out.g = &g;
    for (int v = 0; v < g.num_vertices(); ++v)
        out.vcol.push_back(encode_vertex(g.genus[v], g.tag[v], d ? d->kappa[v] : std::vector<int>{}));
    for (int h = 0; h < g.num_halfedges(); ++h) out.hcol.push_back(d ? d->hpsi[h] : 0);
    for (int i = 0; i < g.num_legs(); ++i) {
        long long c = leg_color ? (*leg_color)[i] : g.legs[i].label;
        out.lcol.push_back((c << 16) + (d ? d->lpsi[i] : 0));
    }
    return out;
}

long long for_each_iso(const IsoData& a, const IsoData& b, const std::function<bool(const IsoMap&)>& cb) {
    if (a.g->num_vertices() != b.g->num_vertices() || a.g->num_halfedges() != b.g->num_halfedges() ||
        a.g->num_legs() != b.g->num_legs())
        return 0;
    if (!same_multiset(a.vcol, b.vcol) || !same_multiset(a.hcol, b.hcol) || !same_multiset(a.lcol, b.lcol))
        return 0;
    Search s(a, b, cb);
    s.rec();
    return s.count;
}

bool isomorphic(const IsoData& a, const IsoData& b) {
    return for_each_iso(a, b, [](const IsoMap&) { return false; }) > 0;
}

long long count_automorphisms(const IsoData& a) {
    return for_each_iso(a, a, [](const IsoMap&) { return true; });
}

std::vector<IsoMap> isomorphisms(const StableGraph& a, const Decoration* da, const StableGraph& b,
                                 const Decoration* db) {
    auto ia = IsoData::plain(a, da), ib = IsoData::plain(b, db);
    std::vector<IsoMap> out;
    for_each_iso(ia, ib, [&](const IsoMap& m) {
        out.push_back(m);
        return true;
    });
    return out;
}

}  // namespace mgn
