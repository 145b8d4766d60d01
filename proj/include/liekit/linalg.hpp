#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "liekit/scalars.hpp"

namespace liekit {

/// Sparse row/vector over an exact field: column index -> nonzero value.
template <class S>
using SparseVec = std::map<int, S>;

template <class S>
void axpy(SparseVec<S>& x, const SparseVec<S>& y, const S& c) {
    for (const auto& [k, v] : y) {
        auto it = x.find(k);
        if (it == x.end()) {
            S w = c * v;
            if (!scalar_is_zero(w)) x.emplace(k, std::move(w));
        } else {
            it->second += c * v;
            if (scalar_is_zero(it->second)) x.erase(it);
        }
    }
}

/// Row-echelon accumulator over an exact field. Rows are fed one at a time;
/// pivots are kept normalized to 1 to make downstream kernel extraction cheap.
template <class S>
class ExactEchelon {
public:
    // Reduces `row` against current pivots; if a nonzero remainder exists it
    // becomes a new pivot row and true is returned.
    bool add_row(SparseVec<S> row) {
        while (!row.empty()) {
            int c = row.begin()->first;
            auto it = pivots_.find(c);
            if (it == pivots_.end()) {
                S inv = S(1) / row.begin()->second;
                for (auto& [k, v] : row) v *= inv;
                pivots_.emplace(c, std::move(row));
                return true;
            }
            S coef = -row.begin()->second;
            axpy(row, it->second, coef);
        }
        return false;
    }

    int rank() const { return int(pivots_.size()); }
    const std::map<int, SparseVec<S>>& pivot_rows() const { return pivots_; }

    /// Kernel basis of the matrix whose rows were fed, viewed as a map from
    /// coordinates 0..ncols-1. One basis vector per free column.
    std::vector<SparseVec<S>> kernel(int ncols) {
        reduce_fully();
        std::vector<SparseVec<S>> basis;
        for (int c = 0; c < ncols; ++c) {
            if (pivots_.count(c)) continue;
            SparseVec<S> v;
            v[c] = S(1);
            for (const auto& [pc, row] : pivots_) {
                auto it = row.find(c);
                if (it != row.end()) v[pc] = -it->second;
            }
            basis.push_back(std::move(v));
        }
        return basis;
    }

private:
    void reduce_fully() {
        if (reduced_) return;
        for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
            for (auto jt = pivots_.begin(); jt->first != it->first; ++jt) {
                auto ft = jt->second.find(it->first);
                if (ft == jt->second.end()) continue;
                S coef = -ft->second;
                axpy(jt->second, it->second, coef);
            }
        }
        reduced_ = true;
    }

    std::map<int, SparseVec<S>> pivots_;
    bool reduced_ = false;
};

template <class S>
int exact_rank(const std::vector<SparseVec<S>>& rows) {
    ExactEchelon<S> ech;
    for (const auto& r : rows) ech.add_row(r);
    return ech.rank();
}

template <class S>
std::vector<SparseVec<S>> exact_kernel(const std::vector<SparseVec<S>>& rows, int ncols) {
    ExactEchelon<S> ech;
    for (const auto& r : rows) ech.add_row(r);
    return ech.kernel(ncols);
}

/// Exact linear solve: express `target` in the span of `cols` (each a sparse
/// coordinate vector). Returns coefficients, or nullopt if outside the span.
template <class S>
std::optional<std::vector<S>> exact_in_span(const std::vector<SparseVec<S>>& cols,
                                            const SparseVec<S>& target) {
    // Eliminate coordinate-major rows of the augmented system [cols | target].
    ExactEchelon<S> ech;
    int n = int(cols.size());
    std::map<int, SparseVec<S>> coord_rows;
    for (int j = 0; j < n; ++j)
        for (const auto& [k, v] : cols[j]) coord_rows[k][j] = v;
    for (const auto& [k, v] : target) coord_rows[k][n] = v;
    for (auto& [coord, row] : coord_rows) { (void)coord; ech.add_row(row); }
    auto ker = ech.kernel(n + 1);
    // A kernel vector with nonzero last coordinate encodes the expansion.
    for (auto& v : ker) {
        auto it = v.find(n);
        if (it == v.end()) continue;
        S inv = S(-1) / it->second;
        std::vector<S> out(n, S(0));
        for (const auto& [k, c] : v)
            if (k < n) out[k] = c * inv;
        return out;
    }
    return std::nullopt;
}

struct RankResult {
    int rank = 0;
    bool indeterminate = false;
};

/// Rank of a dense complex matrix via pivoted elimination. Pivots are compared
/// against the largest pivot: ratios above `accept` count toward the rank,
/// ratios inside [dead_lo, dead_hi] flag the result as indeterminate instead of
/// being silently rounded either way.
inline RankResult complex_rank(std::vector<std::vector<Cplx>> a, double accept = 1e-8,
                               double dead_lo = 1e-10, double dead_hi = 1e-6) {
    RankResult res;
    if (a.empty() || a[0].empty()) return res;
    size_t nr = a.size(), nc = a[0].size();
    double largest = 0.0;
    std::vector<double> piv_abs;
    size_t r = 0;
    for (size_t c = 0; c < nc && r < nr; ++c) {
        size_t best = r;
        double bv = 0.0;
        for (size_t i = r; i < nr; ++i) {
            double m = std::abs(a[i][c]);
            if (m > bv) { bv = m; best = i; }
        }
        if (bv == 0.0) continue;
        std::swap(a[r], a[best]);
        piv_abs.push_back(bv);
        largest = std::max(largest, bv);
        for (size_t i = r + 1; i < nr; ++i) {
            Cplx f = a[i][c] / a[r][c];
            for (size_t j = c; j < nc; ++j) a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    if (largest == 0.0) return res;
    for (double p : piv_abs) {
        double ratio = p / largest;
        if (ratio >= dead_lo && ratio <= dead_hi) res.indeterminate = true;
        if (ratio > accept) ++res.rank;
    }
    return res;
}

}  // namespace liekit
