#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "liekit/chevalley.hpp"
#include "liekit/linalg.hpp"
#include "liekit/multivector.hpp"
#include "liekit/root_system.hpp"

namespace liekit {

/// The homogeneous model attached to a simple root alpha and a level l:
/// Omega_P collects the roots whose alpha-coefficient is divisible by l (the
/// stabilizer k is h plus those root spaces), and the remaining roots fall
/// into quasi-root classes 1..l-1 by alpha-coefficient mod l.
class MlaModel {
public:
    MlaModel(const RootSystem& rs, const StructureConstants& sc, int alpha_index, int l)
        : rs_(&rs), sc_(&sc), alpha_(alpha_index), l_(l) {
        if (alpha_index < 0 || alpha_index >= rs.rank())
            throw std::invalid_argument("alpha index out of range");
        int max_l = rs.root(rs.highest_root())[size_t(alpha_index)];
        if (l < 2 || l > max_l)
            throw std::invalid_argument(
                "level " + std::to_string(l) + " outside [2," + std::to_string(max_l) +
                "] for node " + std::to_string(alpha_index + 1) + " of " + rs.type().str());
        classes_.assign(size_t(l), {});
        keep_.assign(size_t(rs.size()), 0);
        for (int i = 0; i < rs.size(); ++i) {
            int c = rs.root(i)[size_t(alpha_index)] % l;
            if (c < 0) c += l;
            if (c == 0) {
                omega_p_.push_back(i);
            } else {
                classes_[size_t(c)].push_back(i);
                m_basis_.push_back(i);
                keep_[size_t(i)] = 1;
            }
        }
    }

    const RootSystem& roots() const { return *rs_; }
    const StructureConstants& constants() const { return *sc_; }
    int alpha_index() const { return alpha_; }
    int level() const { return l_; }
    const std::vector<int>& omega_p() const { return omega_p_; }
    const std::vector<int>& class_members(int i) const { return classes_[size_t(i)]; }
    const std::vector<int>& m_basis() const { return m_basis_; }
    const std::vector<char>& m_mask() const { return keep_; }
    bool in_m(int root_index) const { return keep_[size_t(root_index)] != 0; }

    int class_of(int root_index) const {
        int c = rs_->root(root_index)[size_t(alpha_)] % l_;
        return c < 0 ? c + l_ : c;
    }

    template <class S>
    Multivector<S> project(const Multivector<S>& v) const {
        return project_to_m(*rs_, keep_, v);
    }

private:
    const RootSystem* rs_;
    const StructureConstants* sc_;
    int alpha_, l_;
    std::vector<int> omega_p_;
    std::vector<std::vector<int>> classes_;
    std::vector<int> m_basis_;
    std::vector<char> keep_;
};

/// True iff the class-i graph with edges beta -> beta+gamma (gamma in the given
/// subsystem, beta+gamma a root) is connected. The subsystem parameter exists
/// for the negative control; production callers pass model.omega_p().
inline bool connectivity_check_subsystem(const MlaModel& model, int i,
                                         const std::vector<int>& subsystem) {
    const auto& cls = model.class_members(i);
    if (cls.size() <= 1) return true;
    const RootSystem& rs = model.roots();
    std::set<int> in_class(cls.begin(), cls.end());
    std::vector<int> stack = {cls.front()};
    std::set<int> seen = {cls.front()};
    while (!stack.empty()) {
        int b = stack.back();
        stack.pop_back();
        for (int g : subsystem) {
            int s = rs.sum_index(b, g);
            if (s >= 0 && in_class.count(s) && !seen.count(s)) {
                seen.insert(s);
                stack.push_back(s);
            }
        }
    }
    return seen.size() == cls.size();
}

inline bool connectivity_check(const MlaModel& model, int i) {
    if (i < 1 || i >= model.level()) throw std::invalid_argument("class index out of range");
    return connectivity_check_subsystem(model, i, model.omega_p());
}

/// True iff span{[x,y] : x in m_i, y in m_j} equals m_{i+j} (exact rank over
/// the bracket coefficients).
inline bool bracket_image_check(const MlaModel& model, int i, int j) {
    int l = model.level();
    if ((i + j) % l == 0) throw std::invalid_argument("i+j = 0 mod l excluded");
    const RootSystem& rs = model.roots();
    const StructureConstants& sc = model.constants();
    int target = (i + j) % l;
    std::vector<SparseVec<QuadExt>> rows;
    for (int a : model.class_members(i))
        for (int b : model.class_members(j)) {
            int s = rs.sum_index(a, b);
            if (s < 0) continue;
            SparseVec<QuadExt> r;
            r[s] = sc.n(a, b);
            rows.push_back(std::move(r));
        }
    int rank = exact_rank(rows);
    return rank == int(model.class_members(target).size());
}

/// Basis of the theta-eigenspace of the k-invariants in Lambda^p m, computed
/// as the exact simultaneous kernel of all X_gamma (gamma in Omega_P) over the
/// weight-zero monomials. Cartan invariance is the weight-zero prefilter;
/// negative gamma are implied on a theta-eigenspace, so only positive ones are
/// solved against (all are verified downstream by tests).
inline std::vector<Multivector<QuadExt>> invariant_subspace(const MlaModel& model, int p,
                                                            int theta_sign) {
    if (p < 2 || p > 4) throw std::invalid_argument("invariant_subspace: degree out of range");
    if (theta_sign != 1 && theta_sign != -1)
        throw std::invalid_argument("invariant_subspace: theta sign must be +/-1");
    const RootSystem& rs = model.roots();
    const StructureConstants& sc = model.constants();
    int disc = sc.disc();
    const auto& m = model.m_basis();
    int n = rs.rank();

    // weight-zero p-subsets of m
    std::vector<Monomial> monos;
    std::vector<int> pick(size_t(p), 0);
    RootCoeffs partial(size_t(n), 0);
    auto rec = [&](auto&& self, int start, int depth) -> void {
        if (depth == p - 1) {
            RootCoeffs need(partial);
            for (auto& x : need) x = -x;
            int idx = rs.index_of(need);
            if (idx >= 0 && model.in_m(idx) && idx > pick[size_t(depth - 1)]) {
                Monomial mono;
                for (int k = 0; k < depth; ++k) mono.push_back(uint16_t(pick[size_t(k)]));
                mono.push_back(uint16_t(idx));
                monos.push_back(std::move(mono));
            }
            return;
        }
        for (size_t k = size_t(start); k < m.size(); ++k) {
            int i = m[k];
            if (depth > 0 && i <= pick[size_t(depth - 1)]) continue;
            pick[size_t(depth)] = i;
            const auto& r = rs.root(i);
            for (int t = 0; t < n; ++t) partial[size_t(t)] += r[size_t(t)];
            self(self, int(k) + 1, depth + 1);
            for (int t = 0; t < n; ++t) partial[size_t(t)] -= r[size_t(t)];
        }
    };
    rec(rec, 0, 0);
    std::sort(monos.begin(), monos.end());
    if (monos.empty()) return {};

    // theta-eigenspace generators: M + sign * theta(M), one per theta-orbit
    std::vector<Multivector<QuadExt>> gens;
    std::set<Monomial> used;
    for (const auto& mono : monos) {
        if (used.count(mono)) continue;
        Multivector<QuadExt> g = Multivector<QuadExt>();
        g.add_term(mono, QuadExt(Rat(1), Rat(0), disc));
        Multivector<QuadExt> tg = cartan_involution(rs, g);
        const auto& [tm, tc] = *tg.terms().begin();
        used.insert(mono);
        if (tm == mono) {
            // theta-eigenvector already; keep only if the sign matches
            if (tc == QuadExt(Rat(theta_sign))) gens.push_back(std::move(g));
        } else {
            used.insert(tm);
            g.add_term(tm, theta_sign == 1 ? tc : -tc);
            gens.push_back(std::move(g));
        }
    }
    if (gens.empty()) return {};

    // simultaneous kernel of the positive Omega_P generators
    ExactEchelon<QuadExt> ech;
    std::map<std::pair<int, Monomial>, SparseVec<QuadExt>> rows;
    for (int g : model.omega_p()) {
        if (RootSystem::height(rs.root(g)) < 0) continue;
        for (size_t gi = 0; gi < gens.size(); ++gi) {
            auto out = adjoint_action(sc, g, gens[gi]);
            for (const auto& [mono, c] : out.terms())
                rows[{g, mono}][int(gi)] = c;
        }
    }
    for (auto& [k, row] : rows) { (void)k; ech.add_row(std::move(row)); }
    auto ker = ech.kernel(int(gens.size()));

    std::vector<Multivector<QuadExt>> basis;
    for (const auto& kv : ker) {
        Multivector<QuadExt> v;
        for (const auto& [gi, c] : kv) v.axpy(c, gens[size_t(gi)]);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace liekit
