#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "liekit/linalg.hpp"
#include "liekit/scalars.hpp"

namespace liekit {

/// Finite-dimensional associative algebra given by its structure cube
/// mult[i][j][k]: e_i * e_j = sum_k mult[i][j][k] e_k, with a distinguished unit.
class FiniteAlgebra {
public:
    FiniteAlgebra(int dim, std::vector<Rat> cube, std::vector<Rat> unit)
        : dim_(dim), cube_(std::move(cube)), unit_(std::move(unit)) {
        if (int(cube_.size()) != dim * dim * dim || int(unit_.size()) != dim)
            throw std::invalid_argument("structure cube shape mismatch");
        if (!is_associative() || !is_unital())
            throw std::invalid_argument("algebra is not associative/unital");
    }

    int dim() const { return dim_; }
    const std::vector<Rat>& unit() const { return unit_; }
    Rat cube(int i, int j, int k) const {
        return cube_[size_t((i * dim_ + j) * dim_ + k)];
    }

    std::vector<Rat> multiply(const std::vector<Rat>& a, const std::vector<Rat>& b) const {
        std::vector<Rat> out(size_t(dim_), Rat(0));
        for (int i = 0; i < dim_; ++i) {
            if (a[size_t(i)].is_zero()) continue;
            for (int j = 0; j < dim_; ++j) {
                if (b[size_t(j)].is_zero()) continue;
                Rat f = a[size_t(i)] * b[size_t(j)];
                for (int k = 0; k < dim_; ++k) {
                    Rat c = cube(i, j, k);
                    if (!c.is_zero()) out[size_t(k)] += f * c;
                }
            }
        }
        return out;
    }

    bool is_commutative() const {
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < i; ++j)
                for (int k = 0; k < dim_; ++k)
                    if (cube(i, j, k) != cube(j, i, k)) return false;
        return true;
    }
    bool is_associative() const {
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j)
                for (int k = 0; k < dim_; ++k) {
                    auto ab = basis_product(i, j);
                    auto bc = basis_product(j, k);
                    if (multiply(ab, basis_vec(k)) != multiply(basis_vec(i), bc)) return false;
                }
        return true;
    }
    bool is_unital() const {
        for (int i = 0; i < dim_; ++i) {
            if (multiply(unit_, basis_vec(i)) != basis_vec(i)) return false;
            if (multiply(basis_vec(i), unit_) != basis_vec(i)) return false;
        }
        return true;
    }

    std::vector<Rat> basis_vec(int i) const {
        std::vector<Rat> v(size_t(dim_), Rat(0));
        v[size_t(i)] = Rat(1);
        return v;
    }
    std::vector<Rat> basis_product(int i, int j) const {
        std::vector<Rat> v(size_t(dim_), Rat(0));
        for (int k = 0; k < dim_; ++k) v[size_t(k)] = cube(i, j, k);
        return v;
    }

private:
    int dim_;
    std::vector<Rat> cube_;
    std::vector<Rat> unit_;
};

/// Q[x]/(x^n), basis 1, x, ..., x^{n-1}
inline FiniteAlgebra truncated_polynomial_algebra(int n) {
    std::vector<Rat> cube(size_t(n) * size_t(n) * size_t(n), Rat(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i + j < n) cube[size_t((i * n + j) * n + i + j)] = Rat(1);
    std::vector<Rat> unit(size_t(n), Rat(0));
    unit[0] = Rat(1);
    return FiniteAlgebra(n, std::move(cube), std::move(unit));
}

/// Q[x,y]/(x^2, xy, y^2), basis 1, x, y
inline FiniteAlgebra square_zero_two_generators() {
    int n = 3;
    std::vector<Rat> cube(27, Rat(0));
    auto set = [&](int i, int j, int k) { cube[size_t((i * n + j) * n + k)] = Rat(1); };
    set(0, 0, 0);
    set(0, 1, 1); set(1, 0, 1);
    set(0, 2, 2); set(2, 0, 2);
    std::vector<Rat> unit = {Rat(1), Rat(0), Rat(0)};
    return FiniteAlgebra(n, std::move(cube), std::move(unit));
}

/// Upper triangular 2x2 matrices, basis E11, E12, E22: the noncommutative
/// control for identities that hold only over commutative algebras.
inline FiniteAlgebra upper_triangular_2x2() {
    int n = 3;
    std::vector<Rat> cube(27, Rat(0));
    auto set = [&](int i, int j, int k) { cube[size_t((i * n + j) * n + k)] = Rat(1); };
    set(0, 0, 0);  // E11 E11 = E11
    set(0, 1, 1);  // E11 E12 = E12
    set(1, 2, 1);  // E12 E22 = E12
    set(2, 2, 2);  // E22 E22 = E22
    std::vector<Rat> unit = {Rat(1), Rat(0), Rat(1)};
    return FiniteAlgebra(n, std::move(cube), std::move(unit));
}

/// p-cochain: multilinear map A^p -> A stored densely; coeffs index
/// (i_1,...,i_p; out) with out fastest.
class Cochain {
public:
    Cochain(int dim, int arity)
        : dim_(dim), arity_(arity), coeffs_(pow_dim(dim, arity + 1), Rat(0)) {}

    int dim() const { return dim_; }
    int arity() const { return arity_; }
    const std::vector<Rat>& coeffs() const { return coeffs_; }
    std::vector<Rat>& coeffs() { return coeffs_; }

    static size_t pow_dim(int d, int e) {
        size_t r = 1;
        for (int i = 0; i < e; ++i) r *= size_t(d);
        return r;
    }

    size_t slot(const std::vector<int>& args) const {
        size_t s = 0;
        for (int a : args) s = s * size_t(dim_) + size_t(a);
        return s * size_t(dim_);
    }

    /// value on a basis tuple, as a coordinate vector
    std::vector<Rat> value(const std::vector<int>& args) const {
        size_t base = slot(args);
        return std::vector<Rat>(coeffs_.begin() + long(base),
                                coeffs_.begin() + long(base) + dim_);
    }
    void set_value(const std::vector<int>& args, const std::vector<Rat>& v) {
        size_t base = slot(args);
        for (int k = 0; k < dim_; ++k) coeffs_[base + size_t(k)] = v[size_t(k)];
    }

    /// value extended multilinearly to coordinate-vector arguments; iterates
    /// only the nonzero support of each argument
    std::vector<Rat> eval(const FiniteAlgebra& alg,
                          const std::vector<std::vector<Rat>>& args) const {
        (void)alg;
        std::vector<Rat> out(size_t(dim_), Rat(0));
        std::vector<std::vector<int>> support(size_t(arity_), std::vector<int>{});
        for (int t = 0; t < arity_; ++t) {
            for (int i = 0; i < dim_; ++i)
                if (!args[size_t(t)][size_t(i)].is_zero()) support[size_t(t)].push_back(i);
            if (support[size_t(t)].empty()) return out;
        }
        std::vector<size_t> cursor(size_t(arity_), 0);
        for (;;) {
            Rat f(1);
            size_t base = 0;
            for (int t = 0; t < arity_; ++t) {
                int i = support[size_t(t)][cursor[size_t(t)]];
                f *= args[size_t(t)][size_t(i)];
                base = base * size_t(dim_) + size_t(i);
            }
            base *= size_t(dim_);
            for (int k = 0; k < dim_; ++k)
                if (!coeffs_[base + size_t(k)].is_zero())
                    out[size_t(k)] += f * coeffs_[base + size_t(k)];
            int t = arity_ - 1;
            while (t >= 0 && ++cursor[size_t(t)] == support[size_t(t)].size())
                cursor[size_t(t--)] = 0;
            if (t < 0) break;
        }
        return out;
    }

    bool is_zero() const {
        return std::all_of(coeffs_.begin(), coeffs_.end(),
                           [](const Rat& r) { return r.is_zero(); });
    }

    friend Cochain operator+(const Cochain& a, const Cochain& b) {
        Cochain r(a);
        for (size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] += b.coeffs_[i];
        return r;
    }
    friend Cochain operator-(const Cochain& a, const Cochain& b) {
        Cochain r(a);
        for (size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] -= b.coeffs_[i];
        return r;
    }
    Cochain scaled(const Rat& f) const {
        Cochain r(*this);
        for (auto& c : r.coeffs_) c *= f;
        return r;
    }

private:
    int dim_, arity_;
    std::vector<Rat> coeffs_;
};

/// multiplication as a 2-cochain
inline Cochain multiplication_cochain(const FiniteAlgebra& alg) {
    Cochain mu(alg.dim(), 2);
    for (int i = 0; i < alg.dim(); ++i)
        for (int j = 0; j < alg.dim(); ++j) mu.set_value({i, j}, alg.basis_product(i, j));
    return mu;
}

/// Hochschild coboundary:
/// (d xi)(a_0..a_p) = a_0 xi(a_1..a_p)
///                  + sum_{k=1}^{p} (-1)^k xi(a_0,..,a_{k-1} a_k,..,a_p)
///                  + (-1)^{p+1} xi(a_0..a_{p-1}) a_p
inline Cochain coboundary(const FiniteAlgebra& alg, const Cochain& xi) {
    int p = xi.arity(), dim = alg.dim();
    Cochain out(dim, p + 1);
    const auto& xc = xi.coeffs();
    auto& oc = out.coeffs();
    // flat layout of an arity-p cochain: sum_q digit_q * dim^{p-q} + out_coord,
    // so input digit q has stride dim^{p-q}
    std::vector<size_t> istride(size_t(p) + 1, 1);
    for (int q = p - 1; q >= 0; --q) istride[size_t(q)] = istride[size_t(q) + 1] * size_t(dim);
    std::vector<int> idx(size_t(p) + 1, 0);
    size_t obase = 0;
    bool last_neg = (p % 2 == 0);  // sign of (-1)^{p+1}
    for (;;) {
        // first term: e_{i0} * xi(i1..ip)
        {
            size_t base = 0;
            for (int q = 1; q <= p; ++q)
                base += size_t(idx[size_t(q)]) * istride[size_t(q) - 1];
            for (int j = 0; j < dim; ++j) {
                const Rat& c = xc[base + size_t(j)];
                if (c.is_zero()) continue;
                for (int k = 0; k < dim; ++k) {
                    Rat m = alg.cube(idx[0], j, k);
                    if (!m.is_zero()) oc[obase + size_t(k)] += m * c;
                }
            }
        }
        // middle terms: (-1)^k xi(..., i_{k-1} i_k, ...); the merged product
        // occupies input digit k-1
        for (int k = 1; k <= p; ++k) {
            size_t base = 0;
            for (int q = 0; q < k - 1; ++q) base += size_t(idx[size_t(q)]) * istride[size_t(q)];
            for (int q = k + 1; q <= p; ++q)
                base += size_t(idx[size_t(q)]) * istride[size_t(q) - 1];
            bool neg = (k % 2 != 0);
            size_t mstride = istride[size_t(k) - 1];
            for (int m = 0; m < dim; ++m) {
                Rat f = alg.cube(idx[size_t(k) - 1], idx[size_t(k)], m);
                if (f.is_zero()) continue;
                size_t b = base + size_t(m) * mstride;
                for (int t = 0; t < dim; ++t) {
                    const Rat& c = xc[b + size_t(t)];
                    if (c.is_zero()) continue;
                    if (neg) oc[obase + size_t(t)] -= f * c;
                    else oc[obase + size_t(t)] += f * c;
                }
            }
        }
        // last term: (-1)^{p+1} xi(i0..i_{p-1}) * e_{ip}
        {
            size_t base = 0;
            for (int q = 0; q < p; ++q) base += size_t(idx[size_t(q)]) * istride[size_t(q)];
            for (int j = 0; j < dim; ++j) {
                const Rat& c = xc[base + size_t(j)];
                if (c.is_zero()) continue;
                for (int k = 0; k < dim; ++k) {
                    Rat m = alg.cube(j, idx[size_t(p)], k);
                    if (m.is_zero()) continue;
                    if (last_neg) oc[obase + size_t(k)] -= m * c;
                    else oc[obase + size_t(k)] += m * c;
                }
            }
        }
        obase += size_t(dim);
        int t = p;
        while (t >= 0 && ++idx[size_t(t)] == dim) idx[size_t(t--)] = 0;
        if (t < 0) break;
    }
    return out;
}

/// (tau xi)(a_1..a_p) = (-1)^{p(p+1)/2} xi(a_p..a_1)
inline Cochain tau(const Cochain& xi) {
    int p = xi.arity(), dim = xi.dim();
    bool neg = ((p * (p + 1) / 2) % 2) != 0;
    if (p == 0) return neg ? xi.scaled(Rat(-1)) : xi;
    Cochain out(dim, p);
    const auto& xc = xi.coeffs();
    auto& oc = out.coeffs();
    std::vector<size_t> istride(size_t(p), 0);
    istride[size_t(p) - 1] = size_t(dim);
    for (int q = p - 2; q >= 0; --q) istride[size_t(q)] = istride[size_t(q) + 1] * size_t(dim);
    std::vector<int> idx(size_t(p), 0);
    size_t obase = 0;
    for (;;) {
        size_t rbase = 0;
        for (int q = 0; q < p; ++q)
            rbase += size_t(idx[size_t(q)]) * istride[size_t(p) - 1 - size_t(q)];
        for (int k = 0; k < dim; ++k) {
            const Rat& c = xc[rbase + size_t(k)];
            if (c.is_zero()) continue;
            oc[obase + size_t(k)] = neg ? -c : c;
        }
        obase += size_t(dim);
        int t = p - 1;
        while (t >= 0 && ++idx[size_t(t)] == dim) idx[size_t(t--)] = 0;
        if (t < 0) break;
    }
    return out;
}

/// Alt xi = (1/p!) sum_sigma sgn(sigma) xi(a_{sigma(1)},...,a_{sigma(p)})
inline Cochain alt(const Cochain& xi) {
    int p = xi.arity(), dim = xi.dim();
    if (p <= 1) return xi;
    Cochain out(dim, p);
    const auto& xc = xi.coeffs();
    auto& oc = out.coeffs();
    // enumerate the permutations of 0..p-1 with their signs once
    std::vector<std::pair<std::vector<int>, int>> perms;
    {
        std::vector<int> pm(size_t(p), 0);
        std::iota(pm.begin(), pm.end(), 0);
        do {
            int inv = 0;
            for (size_t i = 0; i < pm.size(); ++i)
                for (size_t j = i + 1; j < pm.size(); ++j)
                    if (pm[i] > pm[j]) ++inv;
            perms.emplace_back(pm, inv % 2 == 0 ? 1 : -1);
        } while (std::next_permutation(pm.begin(), pm.end()));
    }
    Rat inv_fact(1);
    for (int i = 2; i <= p; ++i) inv_fact *= i;
    inv_fact = Rat(1) / inv_fact;
    std::vector<size_t> istride(size_t(p), 0);
    istride[size_t(p) - 1] = size_t(dim);
    for (int q = p - 2; q >= 0; --q) istride[size_t(q)] = istride[size_t(q) + 1] * size_t(dim);
    std::vector<int> idx(size_t(p), 0);
    size_t obase = 0;
    for (;;) {
        for (const auto& [pm, sg] : perms) {
            size_t base = 0;
            for (int t = 0; t < p; ++t)
                base += size_t(idx[size_t(pm[size_t(t)])]) * istride[size_t(t)];
            for (int k = 0; k < dim; ++k) {
                const Rat& c = xc[base + size_t(k)];
                if (c.is_zero()) continue;
                if (sg > 0) oc[obase + size_t(k)] += c;
                else oc[obase + size_t(k)] -= c;
            }
        }
        for (int k = 0; k < dim; ++k) {
            Rat& v = oc[obase + size_t(k)];
            if (!v.is_zero()) v *= inv_fact;
        }
        obase += size_t(dim);
        int t = p - 1;
        while (t >= 0 && ++idx[size_t(t)] == dim) idx[size_t(t--)] = 0;
        if (t < 0) break;
    }
    return out;
}

inline Cochain random_cochain(const FiniteAlgebra& alg, int arity, std::mt19937_64& rng) {
    Cochain c(alg.dim(), arity);
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 4);
    for (auto& v : c.coeffs()) v = Rat(num(rng), den(rng));
    return c;
}

/// exact per-slot Leibniz test: for each slot i and all basis pairs,
/// w(..., e_a e_b, ...) = e_a w(..., e_b, ...) + e_b w(..., e_a, ...)
inline bool is_polyderivation(const FiniteAlgebra& alg, const Cochain& w) {
    int p = w.arity(), dim = alg.dim();
    if (p == 0) return true;
    std::vector<int> idx(size_t(p) + 1, 0);  // p-1 fixed slots + pair (a, b)
    for (int slot = 0; slot < p; ++slot) {
        std::fill(idx.begin(), idx.end(), 0);
        for (;;) {
            int a = idx[size_t(p) - 1], b = idx[size_t(p)];
            std::vector<std::vector<Rat>> args;
            int t2 = 0;
            for (int t = 0; t < p; ++t) {
                if (t == slot) args.push_back(alg.basis_product(a, b));
                else args.push_back(alg.basis_vec(idx[size_t(t2++)]));
            }
            auto lhs = w.eval(alg, args);
            args[size_t(slot)] = alg.basis_vec(b);
            auto wb = w.eval(alg, args);
            args[size_t(slot)] = alg.basis_vec(a);
            auto wa = w.eval(alg, args);
            auto rhs = alg.multiply(alg.basis_vec(a), wb);
            auto rhs2 = alg.multiply(alg.basis_vec(b), wa);
            for (int k = 0; k < dim; ++k)
                if (lhs[size_t(k)] != rhs[size_t(k)] + rhs2[size_t(k)]) return false;
            int t = p;
            while (t >= 0 && ++idx[size_t(t)] == dim) idx[size_t(t--)] = 0;
            if (t < 0) break;
        }
    }
    return true;
}

/// true iff xi(...,a_i,a_{i+1},...) = -xi(...,a_{i+1},a_i,...) for all slots
inline bool is_skew(const Cochain& xi) {
    Cochain a = alt(xi);
    return (xi - a).is_zero();
}

/// Exact basis of the skew Hochschild p-cocycles: kernel of d restricted to
/// the antisymmetric subspace, via the exact echelon solver.
inline std::vector<Cochain> skew_cocycle_basis(const FiniteAlgebra& alg, int p) {
    int dim = alg.dim();
    // generators of the skew subspace: Alt of each elementary cochain; collect
    // an independent spanning set first
    std::vector<Cochain> gens;
    {
        ExactEchelon<Rat> span;
        size_t total = Cochain::pow_dim(dim, p + 1);
        for (size_t e = 0; e < total; ++e) {
            Cochain c(dim, p);
            c.coeffs()[e] = Rat(1);
            Cochain a = alt(c);
            if (a.is_zero()) continue;
            SparseVec<Rat> row;
            for (size_t i = 0; i < a.coeffs().size(); ++i)
                if (!a.coeffs()[i].is_zero()) row[int(i)] = a.coeffs()[i];
            if (span.add_row(std::move(row))) gens.push_back(std::move(a));
        }
    }
    // kernel of d over the skew generators
    std::vector<SparseVec<Rat>> rows;
    std::vector<Cochain> images;
    for (auto& g : gens) images.push_back(coboundary(alg, g));
    size_t out_len = images.empty() ? 0 : images[0].coeffs().size();
    for (size_t coord = 0; coord < out_len; ++coord) {
        SparseVec<Rat> row;
        for (size_t gi = 0; gi < images.size(); ++gi)
            if (!images[gi].coeffs()[coord].is_zero())
                row[int(gi)] = images[gi].coeffs()[coord];
        if (!row.empty()) rows.push_back(std::move(row));
    }
    auto ker = exact_kernel(rows, int(gens.size()));
    std::vector<Cochain> basis;
    for (const auto& kv : ker) {
        Cochain c(dim, p);
        for (const auto& [gi, f] : kv) {
            for (size_t i = 0; i < c.coeffs().size(); ++i)
                c.coeffs()[i] += f * gens[size_t(gi)].coeffs()[i];
        }
        basis.push_back(std::move(c));
    }
    return basis;
}

}  // namespace liekit
