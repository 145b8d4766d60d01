#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "liekit/linalg.hpp"
#include "liekit/multivector.hpp"
#include "liekit/poisson.hpp"
#include "liekit/quasiroot.hpp"

namespace liekit {

/// The degree-2..4 slice of the theta-graded invariant complex with the
/// coboundary d_s = [[s~, . ]] followed by projection to m.
///
/// basis2/basis3 are genuine exact kernels. basis4 spans the image of d_s on
/// basis3 (each vector exact-verified k-invariant and theta-graded); a full
/// degree-4 kernel solve is feasible for the small models and available via
/// invariant_subspace, but on E8-sized models the weight-zero degree-4
/// monomial count (~3*10^4) makes it the one computation not worth doing
/// exactly when the image span already carries every check we need.
struct ComplexSlice {
    const MlaModel* model = nullptr;
    PhiPoissonSolution solution;
    std::vector<Multivector<QuadExt>> basis2, basis3;
    std::vector<Multivector<Cplx>> basis4;           // image-span basis for d3's codomain
    std::vector<Multivector<Cplx>> d2_images;        // d_s(basis2[j]), monomial coords
    std::vector<Multivector<Cplx>> d3_images;        // d_s(basis3[k])
    std::vector<std::vector<Cplx>> d2;               // d2 expanded in basis3
    std::vector<std::vector<Cplx>> d3;               // d3 expanded in basis4
    double d2_expansion_residual = 0.0;
    double ds_square_residual = 0.0;
    double ds_factor = 0.0;  // measured [[s,s]] = ds_factor * kappa^2 * phi~
};

namespace detail {

inline std::vector<std::vector<Cplx>> dense_columns(const std::vector<Multivector<Cplx>>& cols) {
    std::map<Monomial, size_t> rows;
    for (const auto& c : cols)
        for (const auto& [m, v] : c.terms()) rows.emplace(m, 0);
    size_t idx = 0;
    for (auto& [m, r] : rows) r = idx++;
    std::vector<std::vector<Cplx>> a(rows.size(), std::vector<Cplx>(cols.size(), Cplx(0.0)));
    for (size_t j = 0; j < cols.size(); ++j)
        for (const auto& [m, v] : cols[j].terms()) a[rows.at(m)][j] = v;
    return a;
}

/// Least-squares expansion of target in the given columns via normal equations
/// (the systems here are at most 3x3 and far from degenerate).
inline std::pair<std::vector<Cplx>, double> expand_in(
    const std::vector<Multivector<Cplx>>& basis, const Multivector<Cplx>& target) {
    size_t n = basis.size();
    if (n == 0) return {{}, inf_norm(target)};
    std::vector<std::vector<Cplx>> g(n, std::vector<Cplx>(n + 1, Cplx(0.0)));
    auto dot = [](const Multivector<Cplx>& a, const Multivector<Cplx>& b) {
        Cplx s(0.0);
        for (const auto& [m, v] : a.terms()) s += std::conj(v) * b.coeff(m);
        return s;
    };
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) g[i][j] = dot(basis[i], basis[j]);
        g[i][n] = dot(basis[i], target);
    }
    // Gaussian elimination with partial pivoting on the (n)x(n+1) system
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        for (size_t r = c + 1; r < n; ++r)
            if (std::abs(g[r][c]) > std::abs(g[piv][c])) piv = r;
        std::swap(g[c], g[piv]);
        if (std::abs(g[c][c]) < 1e-300) throw std::logic_error("degenerate basis Gram matrix");
        for (size_t r = 0; r < n; ++r) {
            if (r == c) continue;
            Cplx f = g[r][c] / g[c][c];
            for (size_t k = c; k <= n; ++k) g[r][k] -= f * g[c][k];
        }
    }
    std::vector<Cplx> coef(n);
    for (size_t i = 0; i < n; ++i) coef[i] = g[i][n] / g[i][i];
    Multivector<Cplx> recon;
    for (size_t i = 0; i < n; ++i) recon.axpy(coef[i], basis[i]);
    return {coef, inf_distance(recon, target)};
}

}  // namespace detail

/// Assembles the slice for one verified solution. Throws if a coboundary image
/// escapes the invariant span it must lie in (that would mean a bracket or
/// projection bug, not a property of the model).
inline ComplexSlice build_slice(const MlaModel& model, const PhiPoissonSolution& solution,
                                double expansion_tol = 1e-10) {
    ComplexSlice s;
    s.model = &model;
    s.solution = solution;
    s.basis2 = invariant_subspace(model, 2, -1);
    s.basis3 = invariant_subspace(model, 3, +1);
    const StructureConstants& sc = model.constants();

    auto sv = invariant_bivector(model, solution.family);
    for (const auto& b : s.basis2)
        s.d2_images.push_back(model.project(schouten(sc, sv, to_complex(b))));
    for (const auto& b : s.basis3)
        s.d3_images.push_back(model.project(schouten(sc, sv, to_complex(b))));

    // d2 in basis3 coordinates; every image must lie in the invariant span
    std::vector<Multivector<Cplx>> b3c;
    for (const auto& b : s.basis3) b3c.push_back(to_complex(b));
    for (const auto& img : s.d2_images) {
        auto [coef, resid] = detail::expand_in(b3c, img);
        if (resid > expansion_tol && inf_norm(img) > expansion_tol)
            throw std::logic_error("d2 image escapes the invariant degree-3 span");
        s.d2_expansion_residual = std::max(s.d2_expansion_residual, resid);
        s.d2.push_back(coef);
    }

    // basis4 = independent d3 images (exact invariance is verified by tests;
    // construction keeps the first maximal independent subset, deterministic)
    for (const auto& img : s.d3_images) {
        if (img.is_zero()) continue;
        auto [coef, resid] = detail::expand_in(s.basis4, img);
        (void)coef;
        if (s.basis4.empty() || resid > expansion_tol) s.basis4.push_back(img);
    }
    for (const auto& img : s.d3_images) {
        auto [coef, resid] = detail::expand_in(s.basis4, img);
        if (resid > expansion_tol && inf_norm(img) > expansion_tol)
            throw std::logic_error("d3 image escapes its own span");
        s.d3.push_back(coef);
    }

    // d_s(d_s(.)) on basis2, straight from monomial coordinates
    for (const auto& img : s.d2_images) {
        auto dd = model.project(schouten(sc, sv, img));
        s.ds_square_residual = std::max(s.ds_square_residual, inf_norm(dd));
    }

    // measured factor in [[s~,s~]] = factor * kappa^2 * phi~
    {
        auto br = model.project(schouten(sc, sv, sv));
        auto phi = to_complex(phi_tilde(model));
        double k2 = solution.family.kappa * solution.family.kappa;
        Cplx num(0.0), den(0.0);
        for (const auto& [m, c] : phi.terms()) {
            num += std::conj(c) * br.coeff(m);
            den += std::conj(c) * c;
        }
        s.ds_factor = std::abs(den) > 0 ? (num / den).real() / k2 : 0.0;
    }
    return s;
}

struct CohomologyDims {
    int h2 = 0;
    int h3 = 0;
    int rank_d2 = 0;
    int rank_d3 = 0;
    int dim2 = 0;
    int dim3 = 0;
};

/// h2 = dim ker d2, h3 = dim ker d3 - rank d2, ranks from pivoted elimination
/// on the raw monomial coordinates of the images. A pivot falling in the dead
/// zone raises instead of rounding.
inline CohomologyDims cohomology_dims(const ComplexSlice& s, double accept = 1e-8,
                                      double dead_lo = 1e-10, double dead_hi = 1e-6) {
    CohomologyDims d;
    d.dim2 = int(s.basis2.size());
    d.dim3 = int(s.basis3.size());
    auto rank_of = [&](const std::vector<Multivector<Cplx>>& cols) {
        if (cols.empty()) return 0;
        auto a = detail::dense_columns(cols);
        if (a.empty()) return 0;
        auto r = complex_rank(std::move(a), accept, dead_lo, dead_hi);
        if (r.indeterminate)
            throw std::runtime_error("rank indeterminate: pivot inside the dead zone");
        return r.rank;
    };
    d.rank_d2 = rank_of(s.d2_images);
    d.rank_d3 = rank_of(s.d3_images);
    d.h2 = d.dim2 - d.rank_d2;
    d.h3 = (d.dim3 - d.rank_d3) - d.rank_d2;
    return d;
}

struct WitnessReport {
    bool roots_exist = false;       // beta, gamma, eps, zeta are all roots
    bool zero_sum = false;          // beta+gamma+eps+zeta = 0
    bool sums_are_roots = false;    // beta+gamma, beta+zeta, gamma+eps
    bool non_sums_hold = false;     // gamma+zeta, beta+eps are not roots
    bool upsilon_in_basis3 = false;
    double upsilon_membership_residual = 0.0;
    Cplx witness_coefficient{0.0, 0.0};
    bool coefficient_nonzero = false;

    bool all_pass() const {
        return roots_exist && zero_sum && sums_are_roots && non_sums_hold &&
               upsilon_in_basis3 && coefficient_nonzero;
    }
};

/// The degree-4 witness on the level-6 E8 model: d_s applied to the
/// theta-symmetrized class-(1,1) generator must contain the explicit monomial
/// X_beta ^ X_gamma ^ X_eps ^ X_zeta with a nonzero coefficient.
inline WitnessReport e8_witness_check(const ComplexSlice& slice) {
    const MlaModel& model = *slice.model;
    const RootSystem& rs = model.roots();
    if (!(rs.type() == SimpleLieType{Family::E, 8}) || model.level() != 6 ||
        model.alpha_index() != 3)
        throw std::invalid_argument("witness check requires the (E8, node 4, l=6) model");
    WitnessReport rep;

    // fixed root data, Bourbaki coordinates (a1..a8)
    RootCoeffs beta{0, 1, 1, 2, 1, 1, 0, 0};
    RootCoeffs gamma{1, 1, 2, 2, 2, 2, 2, 1};
    RootCoeffs eps{-1, -2, -2, -3, -3, -3, -2, -1};
    RootCoeffs zeta{0, 0, -1, -1, 0, 0, 0, 0};
    auto plus = [&](const RootCoeffs& a, const RootCoeffs& b) {
        RootCoeffs r(a);
        for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
        return r;
    };
    int ib = rs.index_of(beta), ig = rs.index_of(gamma), ie = rs.index_of(eps),
        iz = rs.index_of(zeta);
    rep.roots_exist = ib >= 0 && ig >= 0 && ie >= 0 && iz >= 0;
    if (!rep.roots_exist) return rep;
    rep.zero_sum = RootCoeffs(plus(plus(beta, gamma), plus(eps, zeta))) ==
                   RootCoeffs(size_t(rs.rank()), 0);
    rep.sums_are_roots = rs.is_root(plus(beta, gamma)) && rs.is_root(plus(beta, zeta)) &&
                         rs.is_root(plus(gamma, eps));
    rep.non_sums_hold = !rs.is_root(plus(gamma, zeta)) && !rs.is_root(plus(beta, eps));

    // upsilon = class-(1,1) sum plus its theta image
    const StructureConstants& sc = model.constants();
    Multivector<QuadExt> ups;
    for (int a : model.class_members(1))
        for (int b : model.class_members(1)) {
            if (a == b) continue;
            int s = rs.sum_index(a, b);
            if (s < 0) continue;
            Monomial w{uint16_t(a), uint16_t(b), uint16_t(rs.negative_of(s))};
            ups.add_word(w, sc.n(a, b));
        }
    ups += cartan_involution(rs, ups);

    auto upsC = to_complex(ups);
    std::vector<Multivector<Cplx>> b3c;
    for (const auto& b : slice.basis3) b3c.push_back(to_complex(b));
    auto [coef, resid] = detail::expand_in(b3c, upsC);
    (void)coef;
    rep.upsilon_membership_residual = resid / std::max(1.0, inf_norm(upsC));
    rep.upsilon_in_basis3 = rep.upsilon_membership_residual < 1e-10;

    auto sv = invariant_bivector(model, slice.solution.family);
    auto ds = model.project(schouten(sc, sv, upsC));
    Monomial w{uint16_t(ib), uint16_t(ig), uint16_t(ie), uint16_t(iz)};
    rep.witness_coefficient = ds.word_coeff(w);
    rep.coefficient_nonzero = std::abs(rep.witness_coefficient) > 1e-6;
    return rep;
}

}  // namespace liekit
