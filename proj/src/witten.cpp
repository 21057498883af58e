#include "mgn/witten.hpp"

#include "json.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>

namespace mgn {

namespace {

using Key = std::pair<int, std::vector<int>>;
using KKey = std::tuple<int, std::vector<int>, std::vector<int>>;

std::shared_mutex mtx;
std::map<Key, Rational> psi_memo;
std::map<KKey, Rational> kappa_memo;

bool lookup(const Key& k, Rational& out) {
    std::shared_lock lock(mtx);
    auto it = psi_memo.find(k);
    if (it == psi_memo.end()) return false;
    out = it->second;
    return true;
}

void store(const Key& k, const Rational& v) {
    std::unique_lock lock(mtx);
    psi_memo.emplace(k, v);
}

Rational psi_rec(int g, std::vector<int> a) {
    const int n = static_cast<int>(a.size());
    if (g < 0) return Rational(0);
    int deg = 0;
    for (int x : a) {
        if (x < 0) return Rational(0);
        deg += x;
    }
    if (3 * g - 3 + n < 0 || deg != 3 * g - 3 + n) return Rational(0);
    std::sort(a.begin(), a.end());
    if (g == 0 && n == 3) return Rational(1);
    if (g == 1 && n == 1) return Rational(1, 24);
    Key key{g, a};
    Rational val;
    if (lookup(key, val)) return val;
    if (a[0] == 0) {
        std::vector<int> rest(a.begin() + 1, a.end());
        for (size_t j = 0; j < rest.size(); ++j) {
            if (rest[j] == 0) continue;
            auto b = rest;
            --b[j];
            val += psi_rec(g, b);
        }
    } else if (a[0] == 1) {
        std::vector<int> rest(a.begin() + 1, a.end());
        val = Rational(2 * g - 2 + n - 1) * psi_rec(g, rest);
    } else {
        int k = a.back() - 1;
        std::vector<int> d(a.begin(), a.end() - 1);
        const int m = static_cast<int>(d.size());
        Rational s;
        for (int j = 0; j < m; ++j) {
            auto b = d;
            b[j] += k;
            s += double_factorial(2 * k + 2 * d[j] + 1) / double_factorial(2 * d[j] - 1) * psi_rec(g, b);
        }
        Rational half(1, 2);
        for (int r = 0; r <= k - 1; ++r) {
            int t = k - 1 - r;
            Rational c = half * double_factorial(2 * r + 1) * double_factorial(2 * t + 1);
            auto b = d;
            b.push_back(r);
            b.push_back(t);
            Rational inner = psi_rec(g - 1, b);
            for (int mask = 0; mask < (1 << m); ++mask) {
                std::vector<int> I{r}, J{t};
                for (int j = 0; j < m; ++j) (mask >> j & 1 ? I : J).push_back(d[j]);
                for (int g1 = 0; g1 <= g; ++g1) {
                    Rational x = psi_rec(g1, I);
                    if (x.is_zero()) continue;
                    inner += x * psi_rec(g - g1, J);
                }
            }
            s += c * inner;
        }
        val = s / double_factorial(2 * k + 3);
    }
    store(key, val);
    return val;
}

Rational kappa_rec(int g, std::vector<int> psi, std::vector<int> kappa) {
    if (kappa.empty()) return psi_rec(g, psi);
    const int n = static_cast<int>(psi.size());
    int deg = 0;
    for (int x : psi) deg += x;
    for (int x : kappa) deg += x;
    if (3 * g - 3 + n < 0 || deg != 3 * g - 3 + n) return Rational(0);
    std::sort(psi.begin(), psi.end());
    std::sort(kappa.begin(), kappa.end());
    KKey key{g, psi, kappa};
    {
        std::shared_lock lock(mtx);
        auto it = kappa_memo.find(key);
        if (it != kappa_memo.end()) return it->second;
    }
    int last = kappa.back();
    std::vector<int> rest(kappa.begin(), kappa.end() - 1);
    const int m = static_cast<int>(rest.size());
    Rational val;
    for (int mask = 0; mask < (1 << m); ++mask) {
        int e = last + 1, sign = 1;
        std::vector<int> kk;
        for (int j = 0; j < m; ++j) {
            if (mask >> j & 1) {
                e += rest[j];
                sign = -sign;
            } else {
                kk.push_back(rest[j]);
            }
        }
        auto p = psi;
        p.push_back(e);
        val += Rational(sign) * kappa_rec(g, p, kk);
    }
    std::unique_lock lock(mtx);
    kappa_memo.emplace(key, val);
    return val;
}

std::string key_string(int g, const std::vector<int>& a, const std::vector<int>& b) {
    std::ostringstream os;
    os << g << "|";
    for (size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
    os << "|";
    for (size_t i = 0; i < b.size(); ++i) os << (i ? "," : "") << b[i];
    return os.str();
}

std::vector<int> parse_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string t;
    while (std::getline(ss, t, ','))
        if (!t.empty()) out.push_back(std::stoi(t));
    return out;
}

}  // namespace

Rational psi_integral(int g, std::vector<int> a) { return psi_rec(g, std::move(a)); }

Rational kappa_psi_integral(int g, std::vector<int> psi, std::vector<int> kappa) {
    for (int b : kappa)
        if (b < 1) throw std::invalid_argument("kappa index must be positive");
    return kappa_rec(g, std::move(psi), std::move(kappa));
}

Rational vertex_integral(int g, int n, const std::vector<int>& psi, const std::vector<int>& kappa) {
    if (2 * g - 2 + n <= 0) throw std::invalid_argument("unstable (g,n)");
    if (static_cast<int>(psi.size()) != n) throw std::invalid_argument("psi exponent count differs from n");
    int deg = 0;
    for (int x : psi) deg += x;
    for (int x : kappa) deg += x;
    if (deg != 3 * g - 3 + n) throw std::invalid_argument("monomial is not of top degree");
    return kappa_psi_integral(g, psi, kappa);
}

std::vector<WittenKey> cached_keys() {
    std::shared_lock lock(mtx);
    std::vector<WittenKey> out;
    for (const auto& [k, v] : psi_memo) out.push_back({k.first, k.second, {}});
    for (const auto& [k, v] : kappa_memo) out.push_back({std::get<0>(k), std::get<1>(k), std::get<2>(k)});
    return out;
}

void clear_witten_cache() {
    std::unique_lock lock(mtx);
    psi_memo.clear();
    kappa_memo.clear();
}

void save_witten_cache(const std::string& dir) {
    nlohmann::json j = nlohmann::json::object();
    {
        std::shared_lock lock(mtx);
        for (const auto& [k, v] : psi_memo) j[key_string(k.first, k.second, {})] = v.str();
        for (const auto& [k, v] : kappa_memo) j[key_string(std::get<0>(k), std::get<1>(k), std::get<2>(k))] = v.str();
    }
    std::filesystem::create_directories(dir);
    std::ofstream f(std::filesystem::path(dir) / "witten_cache.json");
    f << j.dump(1) << "\n";
}

void load_witten_cache(const std::string& dir) {
    auto p = std::filesystem::path(dir) / "witten_cache.json";
    if (!std::filesystem::exists(p)) return;
    std::ifstream f(p);
    auto j = nlohmann::json::parse(f);
    std::unique_lock lock(mtx);
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& k = it.key();
        auto p1 = k.find('|'), p2 = k.find('|', p1 + 1);
        if (p1 == std::string::npos || p2 == std::string::npos) throw std::runtime_error("bad cache key " + k);
        int g = std::stoi(k.substr(0, p1));
        auto a = parse_list(k.substr(p1 + 1, p2 - p1 - 1));
        auto b = parse_list(k.substr(p2 + 1));
        Rational v = Rational::parse(it.value().get<std::string>());
        if (b.empty()) psi_memo.emplace(Key{g, a}, v);
        else kappa_memo.emplace(KKey{g, a, b}, v);
    }
}

}  // namespace mgn
