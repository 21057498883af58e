#include "mgn/group.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <stdexcept>

namespace mgn {

Group Group::cyclic(int m) {
    if (m < 1) throw std::invalid_argument("cyclic group order must be positive");
    Group G;
    G.mul_.assign(m, std::vector<int>(m));
    G.names_.clear();
    for (int a = 0; a < m; ++a) {
        G.names_.push_back(std::to_string(a));
        for (int b = 0; b < m; ++b) G.mul_[a][b] = (a + b) % m;
    }
    G.cyclic_m_ = m;
    G.finish();
    return G;
}

Group Group::symmetric(int n) {
    std::vector<std::vector<int>> perms;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    std::vector<std::string> names;
    for (auto& q : perms) {
        std::string s;
        for (int x : q) s += std::to_string(x + 1);
        names.push_back(s);
    }
    int k = static_cast<int>(perms.size());
    std::vector<std::vector<int>> t(k, std::vector<int>(k));
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            std::vector<int> c(n);
            for (int i = 0; i < n; ++i) c[i] = perms[a][perms[b][i]];
            t[a][b] = static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
        }
    return from_table(names, t);
}

Group Group::from_table(std::vector<std::string> names, const std::vector<std::vector<int>>& table) {
    int n = static_cast<int>(table.size());
    if (n == 0) throw std::invalid_argument("empty group table");
    if (names.empty())
        for (int a = 0; a < n; ++a) names.push_back(std::to_string(a));
    if (static_cast<int>(names.size()) != n) throw std::invalid_argument("group table: names/order mismatch");
    for (auto& row : table) {
        if (static_cast<int>(row.size()) != n) throw std::invalid_argument("group table is not square");
        for (int x : row)
            if (x < 0 || x >= n) throw std::invalid_argument("group table entry out of range");
    }
    int e = -1;
    for (int a = 0; a < n && e < 0; ++a) {
        bool ok = true;
        for (int b = 0; b < n && ok; ++b) ok = table[a][b] == b && table[b][a] == b;
        if (ok) e = a;
    }
    if (e < 0) throw std::invalid_argument("group table has no identity");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (table[table[a][b]][c] != table[a][table[b][c]])
                    throw std::invalid_argument("group table is not associative");
    for (int a = 0; a < n; ++a) {
        std::set<int> row(table[a].begin(), table[a].end());
        if (static_cast<int>(row.size()) != n) throw std::invalid_argument("group table lacks inverses");
    }
    // move identity to 0
    std::vector<int> to(n), from(n);
    std::iota(from.begin(), from.end(), 0);
    std::swap(from[0], from[e]);
    for (int i = 0; i < n; ++i) to[from[i]] = i;
    Group G;
    G.mul_.assign(n, std::vector<int>(n));
    G.names_.assign(n, "");
    for (int i = 0; i < n; ++i) {
        G.names_[i] = names[from[i]];
        for (int j = 0; j < n; ++j) G.mul_[i][j] = to[table[from[i]][from[j]]];
    }
    G.cyclic_m_ = 0;
    G.finish();
    return G;
}

Group Group::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open group table " + path);
    nlohmann::json j;
    in >> j;
    std::vector<std::string> names;
    if (j.contains("names")) names = j.at("names").get<std::vector<std::string>>();
    auto t = j.at("table").get<std::vector<std::vector<int>>>();
    if (j.contains("order") && j.at("order").get<int>() != static_cast<int>(t.size()))
        throw std::invalid_argument("group table: order mismatch");
    Group G = from_table(names, t);
    G.table_file = path;
    return G;
}

void Group::finish() {
    int n = order();
    inv_.assign(n, -1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (mul_[a][b] == 0) inv_[a] = b;
    subgroups_.clear();
}

int Group::element_order(int a) const {
    int k = 1;
    for (int x = a; x != 0; x = mul(x, a)) ++k;
    return k;
}

int Group::power(int a, int k) const {
    int x = 0;
    k %= element_order(a);
    if (k < 0) k += element_order(a);
    for (int i = 0; i < k; ++i) x = mul(x, a);
    return x;
}

int Group::centralizer_order(int h) const {
    int c = 0;
    for (int a = 0; a < order(); ++a) c += mul(a, h) == mul(h, a);
    return c;
}

int Group::center_order() const {
    int c = 0;
    for (int h = 0; h < order(); ++h) c += centralizer_order(h) == order();
    return c;
}

std::vector<int> Group::conjugacy_class(int h) const {
    std::set<int> s;
    for (int a = 0; a < order(); ++a) s.insert(conj(a, h));
    return {s.begin(), s.end()};
}

int Group::parse_element(const std::string& s) const {
    for (int a = 0; a < order(); ++a)
        if (names_[a] == s) return a;
    if (cyclic_m_ > 0) {
        std::size_t pos = 0;
        long v = std::stol(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("bad group element '" + s + "'");
        return static_cast<int>(((v % cyclic_m_) + cyclic_m_) % cyclic_m_);
    }
    throw std::invalid_argument("unknown group element '" + s + "'");
}

std::string Group::token() const {
    if (cyclic_m_ > 0) return "cyclic:" + std::to_string(cyclic_m_);
    if (!table_file.empty()) return "table:" + table_file;
    return "table:<inline order " + std::to_string(order()) + ">";
}

std::vector<int> Group::generated(const std::vector<int>& gens) const {
    std::vector<char> in(order(), 0);
    std::vector<int> out{0};
    in[0] = 1;
    for (std::size_t i = 0; i < out.size(); ++i)
        for (int g : gens) {
            int x = mul(out[i], g);
            if (!in[x]) {
                in[x] = 1;
                out.push_back(x);
            }
        }
    std::sort(out.begin(), out.end());
    return out;
}

bool Group::contains(const std::vector<int>& sub, int a) const {
    return std::binary_search(sub.begin(), sub.end(), a);
}

const std::vector<std::vector<int>>& Group::subgroups() const {
    if (!subgroups_.empty()) return subgroups_;
    std::set<std::vector<int>> seen{{0}};
    std::vector<std::vector<int>> todo{{0}};
    while (!todo.empty()) {
        auto s = todo.back();
        todo.pop_back();
        for (int a = 0; a < order(); ++a) {
            if (contains(s, a)) continue;
            auto gens = s;
            gens.push_back(a);
            auto t = generated(gens);
            if (seen.insert(t).second) todo.push_back(t);
        }
    }
    subgroups_.assign(seen.begin(), seen.end());
    std::stable_sort(subgroups_.begin(), subgroups_.end(),
                     [](const auto& x, const auto& y) { return x.size() < y.size(); });
    return subgroups_;
}

Group Group::induced(const std::vector<int>& sub, std::vector<int>* elems) const {
    int k = static_cast<int>(sub.size());
    std::vector<std::vector<int>> t(k, std::vector<int>(k));
    std::vector<std::string> names;
    for (int i = 0; i < k; ++i) {
        names.push_back(names_[sub[i]]);
        for (int j = 0; j < k; ++j)
            t[i][j] = static_cast<int>(std::lower_bound(sub.begin(), sub.end(), mul(sub[i], sub[j])) - sub.begin());
    }
    if (elems) *elems = sub;
    Group H = from_table(names, t);
    if (cyclic_m_ > 0) {
        H.cyclic_m_ = k;
        // element i is i * (m/k)
        int step = cyclic_m_ / k;
        std::vector<std::vector<int>> t2(k, std::vector<int>(k));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) t2[i][j] = (i + j) % k;
        H.mul_ = t2;
        H.names_.assign(k, "");
        for (int i = 0; i < k; ++i) H.names_[i] = std::to_string(i);
        H.finish();
        if (elems) {
            elems->assign(k, 0);
            for (int i = 0; i < k; ++i) (*elems)[i] = i * step;
        }
    }
    return H;
}

}  // namespace mgn
