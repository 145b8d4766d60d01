#pragma once

#include <boost/container/small_vector.hpp>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "liekit/chevalley.hpp"
#include "liekit/root_system.hpp"
#include "liekit/scalars.hpp"

namespace liekit {

/// Strictly increasing basis ordinals; the length is the exterior degree.
using Monomial = boost::container::small_vector<uint16_t, 6>;

/// Sorts a factor sequence into canonical order. Returns the permutation sign,
/// or nullopt when a factor repeats (the wedge vanishes).
inline std::optional<std::pair<Monomial, int>> canonical_monomial(Monomial m) {
    int sign = 1;
    for (size_t i = 1; i < m.size(); ++i) {
        size_t j = i;
        while (j > 0 && m[j - 1] > m[j]) {
            std::swap(m[j - 1], m[j]);
            sign = -sign;
            --j;
        }
    }
    for (size_t i = 1; i < m.size(); ++i)
        if (m[i] == m[i - 1]) return std::nullopt;
    return std::make_pair(std::move(m), sign);
}

template <class S>
S scalar_from_quad(const QuadExt& q);
template <>
inline QuadExt scalar_from_quad<QuadExt>(const QuadExt& q) { return q; }
template <>
inline Cplx scalar_from_quad<Cplx>(const QuadExt& q) { return scalar_to_complex(q); }

/// Sparse exterior-algebra element over scalar backend S (QuadExt for exact
/// work, Cplx for solved coefficient families). Value semantics; all
/// operations are pure.
template <class S>
class Multivector {
public:
    using Terms = std::map<Monomial, S>;

    Multivector() = default;

    static Multivector basis(BasisIndex i, S c = S(1)) {
        Multivector v;
        v.add_term(Monomial{uint16_t(i)}, c);
        return v;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    int degree() const { return terms_.empty() ? -1 : int(terms_.begin()->first.size()); }

    void add_term(const Monomial& m, const S& c) {
        if (scalar_is_zero(c)) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (scalar_is_zero(it->second)) terms_.erase(it);
        }
    }

    /// adds a factor sequence, canonicalizing on the way in
    void add_word(const Monomial& word, const S& c) {
        if (scalar_is_zero(c)) return;
        auto srt = canonical_monomial(word);
        if (!srt) return;
        add_term(srt->first, srt->second < 0 ? S(-1) * c : c);
    }

    S coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? S(0) : it->second;
    }
    /// coefficient of an arbitrary (unsorted) factor word
    S word_coeff(Monomial word) const {
        auto srt = canonical_monomial(std::move(word));
        if (!srt) return S(0);
        S c = coeff(srt->first);
        return srt->second < 0 ? S(-1) * c : c;
    }

    Multivector& operator+=(const Multivector& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Multivector& axpy(const S& a, const Multivector& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, a * c);
        return *this;
    }
    friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
    friend Multivector operator-(Multivector a, const Multivector& b) {
        return a.axpy(S(-1), b);
    }
    friend Multivector operator*(const S& c, const Multivector& v) {
        Multivector out;
        out.axpy(c, v);
        return out;
    }

    bool operator==(const Multivector& o) const { return terms_ == o.terms_; }

private:
    Terms terms_;
};

template <class S>
Multivector<S> wedge(const Multivector<S>& u, const Multivector<S>& v) {
    Multivector<S> out;
    for (const auto& [mu, cu] : u.terms())
        for (const auto& [mv, cv] : v.terms()) {
            Monomial w(mu);
            w.insert(w.end(), mv.begin(), mv.end());
            out.add_word(w, cu * cv);
        }
    return out;
}

/// Schouten bracket on the exterior algebra of g:
///   [[x_1^...^x_p, y_1^...^y_q]] =
///     sum_{i,j} (-1)^{i+j} [x_i, y_j] ^ x_1^..^x_i-hat^..^y_j-hat^..^y_q
/// (1-based i, j). For p = q = 1 this is the Lie bracket; the sign convention
/// is pinned by the sl2 identity [[e^f, e^f]] = 2 t^e^f.
template <class S>
Multivector<S> schouten(const StructureConstants& sc, const Multivector<S>& u,
                        const Multivector<S>& v) {
    Multivector<S> out;
    for (const auto& [mu, cu] : u.terms()) {
        int p = int(mu.size());
        for (const auto& [mv, cv] : v.terms()) {
            int q = int(mv.size());
            S cuv = cu * cv;
            for (int i = 0; i < p; ++i)
                for (int j = 0; j < q; ++j) {
                    auto br = sc.bracket(mu[size_t(i)], mv[size_t(j)]);
                    if (br.empty()) continue;
                    bool neg = ((i + j) & 1) != 0;  // (-1)^{(i+1)+(j+1)}
                    Monomial rest;
                    rest.reserve(size_t(p + q - 1));
                    rest.push_back(0);  // bracket slot
                    for (int k = 0; k < p; ++k)
                        if (k != i) rest.push_back(mu[size_t(k)]);
                    for (int k = 0; k < q; ++k)
                        if (k != j) rest.push_back(mv[size_t(k)]);
                    for (const auto& t : br) {
                        rest[0] = uint16_t(t.index);
                        S c = cuv * scalar_from_quad<S>(t.coeff);
                        out.add_word(rest, neg ? S(-1) * c : c);
                    }
                }
        }
    }
    return out;
}

/// Adjoint action of a basis element extended as a derivation of the exterior
/// algebra. Coincides with schouten(basis(x), v).
template <class S>
Multivector<S> adjoint_action(const StructureConstants& sc, BasisIndex x,
                              const Multivector<S>& v) {
    Multivector<S> out;
    for (const auto& [m, c] : v.terms()) {
        for (size_t i = 0; i < m.size(); ++i) {
            auto br = sc.bracket(x, m[i]);
            if (br.empty()) continue;
            Monomial w(m);
            for (const auto& t : br) {
                w[i] = uint16_t(t.index);
                out.add_word(w, c * scalar_from_quad<S>(t.coeff));
            }
        }
    }
    return out;
}

/// Chevalley involution theta: X_a -> -X_{-a}, t -> -t, extended multiplicatively.
template <class S>
Multivector<S> cartan_involution(const RootSystem& rs, const Multivector<S>& v) {
    Multivector<S> out;
    int R = rs.size();
    for (const auto& [m, c] : v.terms()) {
        Monomial w(m);
        for (auto& x : w)
            if (x < R) x = uint16_t(rs.negative_of(x));
        S s = (m.size() & 1) ? S(-1) * c : c;  // (-1)^degree from the factor signs
        out.add_word(w, s);
    }
    return out;
}

/// Drops every monomial containing a basis element outside m (Cartan elements
/// always; root vectors where keep_root[ordinal] is false).
template <class S>
Multivector<S> project_to_m(const RootSystem& rs, const std::vector<char>& keep_root,
                            const Multivector<S>& v) {
    Multivector<S> out;
    int R = rs.size();
    for (const auto& [m, c] : v.terms()) {
        bool keep = true;
        for (auto x : m)
            if (x >= R || !keep_root[x]) { keep = false; break; }
        if (keep) out.add_term(m, c);
    }
    return out;
}

/// Weight of a monomial: coordinate sum of its root-vector factors.
inline RootCoeffs monomial_weight(const RootSystem& rs, const Monomial& m) {
    RootCoeffs w(size_t(rs.rank()), 0);
    for (auto x : m) {
        if (x >= rs.size()) continue;
        const auto& r = rs.root(x);
        for (int i = 0; i < rs.rank(); ++i) w[size_t(i)] += r[size_t(i)];
    }
    return w;
}

template <class S>
Multivector<Cplx> to_complex(const Multivector<S>& v) {
    Multivector<Cplx> out;
    for (const auto& [m, c] : v.terms()) out.add_term(m, scalar_to_complex(c));
    return out;
}

inline double inf_norm(const Multivector<Cplx>& v) {
    double m = 0.0;
    for (const auto& [mono, c] : v.terms()) m = std::max(m, std::abs(c));
    return m;
}

inline double inf_distance(const Multivector<Cplx>& a, const Multivector<Cplx>& b) {
    Multivector<Cplx> d(a);
    d.axpy(Cplx(-1.0), b);
    return inf_norm(d);
}

/// Canonical serialization: one line per term, "ord ord ... : re im".
inline std::string serialize(const Multivector<Cplx>& v) {
    std::ostringstream os;
    os.precision(17);
    for (const auto& [m, c] : v.terms()) {
        for (auto x : m) os << x << " ";
        os << ": " << c.real() << " " << c.imag() << "\n";
    }
    return os.str();
}

}  // namespace liekit
