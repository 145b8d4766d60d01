#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "liekit/root_system.hpp"
#include "liekit/scalars.hpp"

namespace liekit {

/// Basis element of g: ordinals 0..R-1 are root vectors X_beta in root order,
/// ordinals R..R+rank-1 are the Cartan elements t_i dual to the simple roots
/// under the normalized invariant pairing.
using BasisIndex = int;

/// One term of a bracket expansion.
template <class S>
struct BasisTerm {
    BasisIndex index;
    S coeff;
};

/// Structure constants for the basis normalized by (X_a, X_-a) = 1.
///
/// Construction is two-stage: a classical integer Chevalley table is built by
/// orienting every extraspecial pair positively and propagating all remaining
/// signs through Jacobi and the length-weighted cyclic identity; that table is
/// then rescaled by lambda_a = sqrt((a,a)/2), which lands in Q(sqrt(disc))
/// with disc = 1 (A/D/E), 2 (B/C/F) or 3 (G). In the rescaled basis the cyclic
/// identity N_{ab} = N_{bc} = N_{ca} (a+b+c = 0) holds without length weights,
/// [X_a, X_-a] = t_a, and beta(t_a) = (a, beta).
class StructureConstants {
public:
    explicit StructureConstants(const RootSystem& rs) : rs_(&rs) {
        disc_ = discriminant(rs.type().family);
        build_classical();
        build_normalized();
    }

    const RootSystem& roots() const { return *rs_; }
    int disc() const { return disc_; }
    int dim() const { return rs_->size() + rs_->rank(); }
    int cartan_begin() const { return rs_->size(); }

    /// classical integer constant (Chevalley basis, |N| = p+1); 0 iff a+b is not a root
    int classical_n(int a, int b) const { return n_int_[key(a, b)]; }

    /// normalized constant in Q(sqrt(disc)); zero iff a+b is not a root
    const QuadExt& n(int a, int b) const { return n_ext_[key(a, b)]; }

    /// beta(t_i) = (alpha_i, beta) for the Cartan basis element t_i
    Rat cartan_eval(int i, int beta_index) const {
        RootCoeffs e(size_t(rs_->rank()), 0);
        e[size_t(i)] = 1;
        return rs_->pairing(e, rs_->root(beta_index));
    }

    /// Full bracket of two basis elements in the normalized basis.
    std::vector<BasisTerm<QuadExt>> bracket(BasisIndex x, BasisIndex y) const {
        std::vector<BasisTerm<QuadExt>> out;
        int R = rs_->size();
        if (x < R && y < R) {
            if (rs_->negative_of(x) == y) {
                // [X_a, X_-a] = t_a = sum_i a_i t_i
                const auto& a = rs_->root(x);
                for (int i = 0; i < rs_->rank(); ++i)
                    if (a[size_t(i)] != 0) out.push_back({R + i, QuadExt(Rat(a[size_t(i)]))});
                return out;
            }
            int s = rs_->sum_index(x, y);
            if (s >= 0) out.push_back({s, n_ext_[key(x, y)]});
            return out;
        }
        if (x >= R && y >= R) return out;
        if (x >= R) {
            Rat c = cartan_eval(x - R, y);
            if (!c.is_zero()) out.push_back({y, QuadExt(c)});
            return out;
        }
        out = bracket(y, x);
        for (auto& t : out) t.coeff = -t.coeff;
        return out;
    }

    static int discriminant(Family f) {
        switch (f) {
            case Family::B:
            case Family::C:
            case Family::F: return 2;
            case Family::G: return 3;
            default: return 1;
        }
    }

    /// Test hook: flips the sign of one classical and normalized entry (and
    /// nothing else), deliberately breaking the table's internal consistency.
    void corrupt_one_sign() {
        size_t nr = size_t(rs_->size());
        for (size_t i = 0; i < nr; ++i)
            for (size_t j = 0; j < nr; ++j)
                if (n_int_[i * nr + j] != 0) {
                    n_int_[i * nr + j] = -n_int_[i * nr + j];
                    n_ext_[i * nr + j] = -n_ext_[i * nr + j];
                    return;
                }
    }

private:
    size_t key(int a, int b) const { return size_t(a) * size_t(rs_->size()) + size_t(b); }

    void set_quad(std::vector<int>& t, int a, int b, int v) {
        int na = rs_->negative_of(a), nb = rs_->negative_of(b);
        t[key(a, b)] = v;
        t[key(b, a)] = -v;
        t[key(na, nb)] = -v;
        t[key(nb, na)] = v;
    }

    // Classical constant for mixed-sign pairs from the positive-positive table,
    // via the length-weighted cyclic identity N_ab/(c,c) = N_bc/(a,a), a+b+c=0.
    Rat mixed_n(int x, int y) const {
        int v = n_int_[key(x, y)];
        if (v != 0) return Rat(v);
        const auto& rx = rs_->root(x);
        const auto& ry = rs_->root(y);
        int z = rs_->sum_index(x, y);
        if (z < 0) throw std::logic_error("mixed_n: not a root sum");
        bool xp = RootSystem::height(rx) > 0, yp = RootSystem::height(ry) > 0;
        bool zp = RootSystem::height(rs_->root(z)) > 0;
        if (!xp && !yp) return -mixed_n(rs_->negative_of(x), rs_->negative_of(y));
        if (xp && yp) throw std::logic_error("mixed_n: positive pair missing");
        if (!zp) return -mixed_n(rs_->negative_of(x), rs_->negative_of(y));
        if (!xp) return -mixed_n(y, x);
        // x>0, y=-e<0, z=x-e>0: N_{x,-e} = (z,z)/(x,x) * N_{z,e}
        int e = rs_->negative_of(y);
        Rat nze = mixed_n(z, e);
        return rs_->pairing(z, z) / rs_->pairing(x, x) * nze;
    }

    void build_classical() {
        const RootSystem& rs = *rs_;
        size_t nr = size_t(rs.size());
        n_int_.assign(nr * nr, 0);
        int npos = rs.size() / 2;

        // positive roots grouped by height (they are already height-sorted)
        int maxh = RootSystem::height(rs.root(rs.highest_root()));
        std::vector<std::vector<int>> by_height(size_t(maxh) + 1);
        for (int i = 0; i < npos; ++i)
            by_height[size_t(RootSystem::height(rs.root(i)))].push_back(i);

        for (int h = 2; h <= maxh; ++h) {
            for (int g : by_height[size_t(h)]) {
                // decompositions g = a + b into positive roots, a minimal
                std::vector<std::pair<int, int>> pairs;
                for (int a = 0; a < npos && RootSystem::height(rs.root(a)) < h; ++a) {
                    RootCoeffs bc(rs.root(g));
                    for (int k = 0; k < rs.rank(); ++k) bc[size_t(k)] -= rs.root(a)[size_t(k)];
                    int b = rs.index_of(bc);
                    if (b >= 0 && b < npos) pairs.emplace_back(a, b);
                }
                if (pairs.empty()) continue;
                auto [ea, eb] = pairs.front();  // extraspecial pair: minimal first member
                auto [p, q] = rs.root_string(ea, eb);
                (void)q;
                set_quad(n_int_, ea, eb, p + 1);
                Rat ngea = mixed_n(g, rs.negative_of(ea));
                for (auto [x, y] : pairs) {
                    if (x == ea || n_int_[key(x, y)] != 0) continue;
                    // Jacobi on (x, y, -ea):
                    //   N_{xy} N_{g,-ea} = -N_{y,-ea} N_{y-ea,x} - N_{-ea,x} N_{x-ea,y}
                    Rat rhs(0);
                    int yea = rs.sum_index(y, rs.negative_of(ea));
                    if (yea >= 0) rhs -= mixed_n(y, rs.negative_of(ea)) * mixed_n(yea, x);
                    int xea = rs.sum_index(x, rs.negative_of(ea));
                    if (xea >= 0) rhs -= mixed_n(rs.negative_of(ea), x) * mixed_n(xea, y);
                    Rat val = rhs / ngea;
                    if (denominator(val) != 1)
                        throw std::logic_error("non-integer structure constant");
                    set_quad(n_int_, x, y, int(numerator(val)));
                }
            }
        }
        // complete the table over every root pair
        for (size_t i = 0; i < nr; ++i)
            for (size_t j = 0; j < nr; ++j) {
                if (n_int_[i * nr + j] != 0) continue;
                if (rs.sum_index(int(i), int(j)) < 0) continue;
                Rat v = mixed_n(int(i), int(j));
                if (denominator(v) != 1)
                    throw std::logic_error("non-integer mixed constant");
                n_int_[i * nr + j] = int(numerator(v));
            }
    }

    void build_normalized() {
        const RootSystem& rs = *rs_;
        size_t nr = size_t(rs.size());
        std::vector<QuadExt> lambda(nr);
        for (size_t i = 0; i < nr; ++i)
            lambda[i] = exact_sqrt(rs.pairing(int(i), int(i)) / 2, disc_);
        n_ext_.assign(nr * nr, QuadExt());
        for (size_t i = 0; i < nr; ++i)
            for (size_t j = 0; j < nr; ++j) {
                int v = n_int_[i * nr + j];
                if (v == 0) continue;
                int s = rs.sum_index(int(i), int(j));
                n_ext_[i * nr + j] = lambda[i] * lambda[j] / lambda[size_t(s)] * QuadExt(Rat(v));
            }
    }

    const RootSystem* rs_;
    int disc_;
    std::vector<int> n_int_;
    std::vector<QuadExt> n_ext_;
};

}  // namespace liekit
