#pragma once

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "liekit/scalars.hpp"

namespace liekit {

enum class Family : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

struct SimpleLieType {
    Family family;
    int rank;

    static SimpleLieType parse(const std::string& s) {
        if (s.size() < 2) throw std::invalid_argument("bad Lie type: " + s);
        char f = char(std::toupper(s[0]));
        if (std::string("ABCDEFG").find(f) == std::string::npos)
            throw std::invalid_argument("bad Lie family: " + s);
        int r = std::stoi(s.substr(1));
        SimpleLieType t{Family(f), r};
        t.validate();
        return t;
    }

    void validate() const {
        bool ok = false;
        switch (family) {
            case Family::A: ok = rank >= 1; break;
            case Family::B: ok = rank >= 2; break;
            case Family::C: ok = rank >= 2; break;
            case Family::D: ok = rank >= 4; break;
            case Family::E: ok = rank == 6 || rank == 7 || rank == 8; break;
            case Family::F: ok = rank == 4; break;
            case Family::G: ok = rank == 2; break;
        }
        if (!ok)
            throw std::invalid_argument("invalid family/rank combination: " + str());
    }

    std::string str() const { return std::string(1, char(family)) + std::to_string(rank); }

    friend bool operator==(const SimpleLieType& a, const SimpleLieType& b) {
        return a.family == b.family && a.rank == b.rank;
    }
};

/// Number of roots of the classical/exceptional systems; used as an
/// independent check on the reflection-closure enumeration.
inline int classical_root_count(const SimpleLieType& t) {
    int n = t.rank;
    switch (t.family) {
        case Family::A: return n * n + n;
        case Family::B:
        case Family::C: return 2 * n * n;
        case Family::D: return 2 * n * n - 2 * n;
        case Family::G: return 12;
        case Family::F: return 48;
        case Family::E: return n == 6 ? 72 : (n == 7 ? 126 : 240);
    }
    return 0;
}

using RootCoeffs = std::vector<int>;  // coordinates over the simple roots

/// Cartan matrix in the convention a[i][j] = 2(a_i, a_j)/(a_j, a_j),
/// Bourbaki node numbering throughout. len2 holds (a_i, a_i) normalized so
/// that long roots have squared length 2.
struct CartanMatrix {
    std::vector<std::vector<int>> a;
    std::vector<Rat> len2;

    static CartanMatrix build(const SimpleLieType& t) {
        t.validate();
        int n = t.rank;
        CartanMatrix cm;
        cm.a.assign(n, std::vector<int>(n, 0));
        cm.len2.assign(n, Rat(2));
        for (int i = 0; i < n; ++i) cm.a[i][i] = 2;
        auto edge = [&](int i, int j) { cm.a[i][j] = cm.a[j][i] = -1; };
        switch (t.family) {
            case Family::A:
                for (int i = 0; i + 1 < n; ++i) edge(i, i + 1);
                break;
            case Family::B:
                for (int i = 0; i + 1 < n; ++i) edge(i, i + 1);
                cm.a[n - 2][n - 1] = -2;
                cm.len2[n - 1] = Rat(1);
                break;
            case Family::C:
                for (int i = 0; i + 1 < n; ++i) edge(i, i + 1);
                cm.a[n - 1][n - 2] = -2;
                for (int i = 0; i + 1 < n; ++i) cm.len2[i] = Rat(1);
                break;
            case Family::D:
                for (int i = 0; i + 2 < n; ++i) edge(i, i + 1);
                edge(n - 3, n - 1);
                break;
            case Family::E: {
                // chain 1-3-4-5-6(-7-8), node 2 attached to node 4
                std::vector<int> chain = {0, 2, 3, 4, 5, 6, 7};
                chain.resize(n - 1);
                for (size_t i = 0; i + 1 < chain.size(); ++i) edge(chain[i], chain[i + 1]);
                edge(1, 3);
                break;
            }
            case Family::F:
                edge(0, 1); edge(1, 2); edge(2, 3);
                cm.a[1][2] = -2;
                cm.len2[2] = cm.len2[3] = Rat(1);
                break;
            case Family::G:
                cm.a[0][1] = -1; cm.a[1][0] = -3;
                cm.len2[0] = Rat(2, 3);
                break;
        }
        return cm;
    }
};

/// Immutable root system: the full root set closed under simple reflections,
/// ordered by height (positives ascending, then negatives), plus the
/// symmetrized pairing (long roots normalized to squared length 2).
class RootSystem {
public:
    explicit RootSystem(SimpleLieType t) : type_(t), cartan_(CartanMatrix::build(t)) {
        enumerate();
    }

    const SimpleLieType& type() const { return type_; }
    int rank() const { return type_.rank; }
    const CartanMatrix& cartan() const { return cartan_; }
    const std::vector<RootCoeffs>& roots() const { return roots_; }
    int size() const { return int(roots_.size()); }

    const RootCoeffs& root(int i) const { return roots_[size_t(i)]; }

    int index_of(const RootCoeffs& v) const {
        if (int(v.size()) != rank())
            throw std::invalid_argument("coefficient vector length mismatch");
        auto it = index_.find(v);
        return it == index_.end() ? -1 : it->second;
    }
    bool is_root(const RootCoeffs& v) const { return index_of(v) >= 0; }

    int negative_of(int i) const { return neg_[size_t(i)]; }

    /// ordinal of root(i)+root(j), or -1 when the sum is not a root
    int sum_index(int i, int j) const { return sum_[size_t(i) * roots_.size() + size_t(j)]; }

    static int height(const RootCoeffs& r) {
        return std::accumulate(r.begin(), r.end(), 0);
    }

    int highest_root() const { return highest_; }

    /// symmetrized pairing (u, v) on coefficient vectors
    Rat pairing(const RootCoeffs& u, const RootCoeffs& v) const {
        Rat s(0);
        for (int i = 0; i < rank(); ++i) {
            if (u[size_t(i)] == 0) continue;
            for (int j = 0; j < rank(); ++j)
                if (v[size_t(j)] != 0) s += Rat(u[size_t(i)]) * v[size_t(j)] * bil_[size_t(i)][size_t(j)];
        }
        return s;
    }
    Rat pairing(int i, int j) const { return pairing(roots_[size_t(i)], roots_[size_t(j)]); }
    const Rat& simple_pairing(int i, int j) const { return bil_[size_t(i)][size_t(j)]; }

    /// root string of beta through alpha: p = max{k: beta-k*alpha is a root},
    /// q = max{k: beta+k*alpha is a root}
    std::pair<int, int> root_string(int alpha, int beta) const {
        if (alpha == beta || alpha == neg_[size_t(beta)])
            throw std::invalid_argument("root_string: alpha = +/-beta");
        const auto& a = roots_[size_t(alpha)];
        const auto& b = roots_[size_t(beta)];
        auto probe = [&](int dir) {
            int k = 0;
            RootCoeffs v(b);
            for (;;) {
                for (int i = 0; i < rank(); ++i) v[size_t(i)] += dir * a[size_t(i)];
                if (!is_root(v)) break;
                ++k;
            }
            return k;
        };
        return {probe(-1), probe(+1)};
    }

    void save_cache(std::ostream& os) const {
        os << "liekit-rootcache v1\n" << type_.str() << "\n" << roots_.size() << "\n";
        for (const auto& r : roots_) {
            for (int i = 0; i < rank(); ++i) os << (i ? " " : "") << r[size_t(i)];
            os << "\n";
        }
    }
    void save_cache_file(const std::string& path) const {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write cache: " + path);
        save_cache(f);
    }

    /// Parses a cache produced by save_cache and checks it against a fresh
    /// enumeration: the cache is an optimization only, so any mismatch is an error.
    static RootSystem load_cache(std::istream& is) {
        std::string header, version, tstr;
        is >> header >> version >> tstr;
        if (header != "liekit-rootcache" || version != "v1")
            throw std::runtime_error("unrecognized root cache header");
        size_t count = 0;
        is >> count;
        RootSystem rs(SimpleLieType::parse(tstr));
        if (count != rs.roots_.size()) throw std::runtime_error("root cache count mismatch");
        for (size_t k = 0; k < count; ++k) {
            RootCoeffs v(size_t(rs.rank()));
            for (int i = 0; i < rs.rank(); ++i) is >> v[size_t(i)];
            if (v != rs.roots_[k]) throw std::runtime_error("root cache content mismatch");
        }
        return rs;
    }

private:
    void enumerate() {
        int n = rank();
        bil_.assign(size_t(n), std::vector<Rat>(size_t(n)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                bil_[size_t(i)][size_t(j)] = Rat(cartan_.a[size_t(i)][size_t(j)]) * cartan_.len2[size_t(j)] / 2;

        std::set<RootCoeffs> seen;
        std::vector<RootCoeffs> frontier;
        for (int i = 0; i < n; ++i) {
            RootCoeffs v(size_t(n), 0);
            v[size_t(i)] = 1;
            seen.insert(v);
            frontier.push_back(v);
        }
        while (!frontier.empty()) {
            std::vector<RootCoeffs> next;
            for (const auto& b : frontier) {
                for (int i = 0; i < n; ++i) {
                    int c = 0;
                    for (int k = 0; k < n; ++k) c += b[size_t(k)] * cartan_.a[size_t(k)][size_t(i)];
                    RootCoeffs r(b);
                    r[size_t(i)] -= c;
                    if (seen.insert(r).second) next.push_back(r);
                }
            }
            frontier = std::move(next);
        }
        for (const auto& r : seen) {
            RootCoeffs m(r);
            for (auto& x : m) x = -x;
            if (!seen.count(m)) throw std::logic_error("root set not negation closed");
        }

        std::vector<RootCoeffs> pos, neg;
        for (const auto& r : seen)
            (height(r) > 0 ? pos : neg).push_back(r);
        auto by_height_lex = [](const RootCoeffs& x, const RootCoeffs& y) {
            int hx = height(x), hy = height(y);
            if (hx != hy) return hx < hy;
            return x < y;
        };
        std::sort(pos.begin(), pos.end(), by_height_lex);
        roots_ = pos;
        for (const auto& r : pos) {
            RootCoeffs m(r);
            for (auto& x : m) x = -x;
            roots_.push_back(m);
        }
        for (size_t i = 0; i < roots_.size(); ++i) index_[roots_[i]] = int(i);

        neg_.resize(roots_.size());
        for (size_t i = 0; i < roots_.size(); ++i) {
            RootCoeffs m(roots_[i]);
            for (auto& x : m) x = -x;
            neg_[i] = index_.at(m);
        }
        size_t nr = roots_.size();
        sum_.assign(nr * nr, -1);
        for (size_t i = 0; i < nr; ++i)
            for (size_t j = 0; j < nr; ++j) {
                RootCoeffs s(roots_[i]);
                for (int k = 0; k < n; ++k) s[size_t(k)] += roots_[j][size_t(k)];
                auto it = index_.find(s);
                if (it != index_.end()) sum_[i * nr + j] = it->second;
            }
        highest_ = int(pos.size()) - 1;  // positives sorted by height
    }

    SimpleLieType type_;
    CartanMatrix cartan_;
    std::vector<std::vector<Rat>> bil_;
    std::vector<RootCoeffs> roots_;
    std::map<RootCoeffs, int> index_;
    std::vector<int> neg_;
    std::vector<int> sum_;
    int highest_ = -1;
};

}  // namespace liekit
