#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "liekit/linalg.hpp"
#include "liekit/multivector.hpp"
#include "liekit/polynomial.hpp"
#include "liekit/quasiroot.hpp"

namespace liekit {

/// Coefficient family {c_i} of an invariant bivector, indexed by quasi-root
/// class 1..l-1, with c_{l-i} = -c_i and c_{l/2} = 0 for even l.
struct CoefficientFamily {
    int level = 0;
    double kappa = 1.0;
    std::vector<Cplx> c;  // size level+1, entries 1..level-1 used

    static CoefficientFamily from_half(int l, double kappa, const std::vector<Cplx>& half) {
        CoefficientFamily f;
        f.level = l;
        f.kappa = kappa;
        f.c.assign(size_t(l) + 1, Cplx(0.0));
        for (size_t i = 0; i < half.size(); ++i) {
            int cls = int(i) + 1;
            f.c[size_t(cls)] = half[i];
            f.c[size_t(l - cls)] = -half[i];
        }
        if (l % 2 == 0) f.c[size_t(l / 2)] = Cplx(0.0);
        for (auto& c : f.c) c = Cplx(c.real() + 0.0, c.imag() + 0.0);  // drop -0.0
        return f;
    }

    Cplx at(int cls) const {
        int r = cls % level;
        if (r < 0) r += level;
        if (r == 0) throw std::invalid_argument("class 0 has no coefficient");
        return c[size_t(r)];
    }
};

struct PhiPoissonSolution {
    CoefficientFamily family;
    double recurrence_residual = 0.0;
    double mcybe_residual = 0.0;
    std::string branch_label;
};

/// The invariant 3-vector phi~ of the model: (4/3) * sum over ordered pairs
/// (a, b) of m-roots with a+b again an m-root of N_{ab} X_a ^ X_b ^ X_{-(a+b)}.
/// The 4/3 pins the normalization so that an invariant bivector s~ built from
/// a family obeying the coefficient recurrence satisfies [[s~,s~]] = kappa^2 phi~
/// with no stray convention factor.
inline Multivector<QuadExt> phi_tilde(const MlaModel& model) {
    const RootSystem& rs = model.roots();
    const StructureConstants& sc = model.constants();
    Multivector<QuadExt> out;
    QuadExt scale(Rat(4, 3));
    for (int a : model.m_basis())
        for (int b : model.m_basis()) {
            if (a == b) continue;
            int s = rs.sum_index(a, b);
            if (s < 0 || !model.in_m(s)) continue;
            Monomial w{uint16_t(a), uint16_t(b), uint16_t(rs.negative_of(s))};
            out.add_word(w, scale * sc.n(a, b));
        }
    return out;
}

/// sum_i c_i sum_{beta in class i} X_beta ^ X_{-beta}
inline Multivector<Cplx> invariant_bivector(const MlaModel& model,
                                            const CoefficientFamily& family) {
    if (family.level != model.level())
        throw std::invalid_argument("family level does not match model");
    Multivector<Cplx> out;
    for (int i = 1; i < model.level(); ++i) {
        Cplx c = family.c[size_t(i)];
        if (scalar_is_zero(c)) continue;
        for (int b : model.class_members(i)) {
            Monomial w{uint16_t(b), uint16_t(model.roots().negative_of(b))};
            out.add_word(w, c);
        }
    }
    return out;
}

/// max over admissible class pairs of |c_{i+j}(c_i+c_j) - (c_i c_j + kappa^2)|
inline double recurrence_residual(const MlaModel& model, const CoefficientFamily& family) {
    int l = model.level();
    double worst = 0.0;
    double k2 = family.kappa * family.kappa;
    for (int i = 1; i < l; ++i)
        for (int j = i; j < l; ++j) {
            if ((i + j) % l == 0) continue;
            Cplx ci = family.c[size_t(i)], cj = family.c[size_t(j)];
            Cplx cij = family.c[size_t((i + j) % l)];
            worst = std::max(worst, std::abs(cij * (ci + cj) - (ci * cj + k2)));
        }
    return worst;
}

/// ||proj_m [[v,v]] - kappa^2 phi~||_inf, the modified-Yang-Baxter defect of a
/// degree-2 element supported on m.
inline double verify_mcybe(const MlaModel& model, const Multivector<Cplx>& v, double kappa) {
    if (!v.is_zero() && v.degree() != 2)
        throw std::invalid_argument("verify_mcybe expects a bivector");
    auto br = model.project(schouten(model.constants(), v, v));
    auto target = to_complex(phi_tilde(model));
    Multivector<Cplx> diff(br);
    diff.axpy(Cplx(-kappa * kappa, 0.0), target);
    return inf_norm(diff);
}

/// Propagates the coefficient recurrence symbolically in c_1 (at kappa = 1)
/// and collects the wrap-around constraints as one univariate polynomial.
inline Poly solution_polynomial(int l) {
    std::vector<RatFunc> c(size_t(l) + 1);
    c[1] = RatFunc::x();
    RatFunc one = RatFunc::constant(Rat(1));
    for (int s = 2; s < l; ++s)
        c[size_t(s)] = (c[1] * c[size_t(s - 1)] + one) / (c[1] + c[size_t(s - 1)]);
    std::vector<Poly> constraints;
    for (int i = 1; i * 2 <= l; ++i) {
        if (i * 2 == l) {
            constraints.push_back(c[size_t(i)].num);
        } else {
            RatFunc sum = c[size_t(i)] + c[size_t(l - i)];
            constraints.push_back(sum.num);
        }
    }
    Poly g;
    bool first = true;
    for (auto& p : constraints) {
        if (p.is_zero()) continue;
        g = first ? p.monic() : Poly::gcd(g, p);
        first = false;
    }
    return g;
}

/// All coefficient families solving the recurrence for this model, verified
/// against both the recurrence and the engine-level bracket, in deterministic
/// branch order. l = 2 admits only the zero bracket.
inline std::vector<PhiPoissonSolution> solve_phi_poisson(const MlaModel& model,
                                                         double kappa = 1.0,
                                                         double accept_tol = 1e-9) {
    int l = model.level();
    std::vector<PhiPoissonSolution> out;
    if (l == 2) {
        PhiPoissonSolution s;
        s.family = CoefficientFamily::from_half(l, kappa, {Cplx(0.0)});
        s.branch_label = "zero";
        s.recurrence_residual = recurrence_residual(model, s.family);
        s.mcybe_residual = verify_mcybe(model, invariant_bivector(model, s.family), kappa);
        out.push_back(std::move(s));
        return out;
    }
    Poly g = solution_polynomial(l);
    if (g.degree() <= 0) throw std::logic_error("empty solution polynomial");
    auto roots = poly_roots(g);
    // snap components drowned in root-finder noise, normalize -0.0, and keep
    // the deterministic (re, im) branch order on the snapped values
    for (auto& r : roots) {
        double re = std::abs(r.real()) < 1e-12 * (std::abs(r) + 1.0) ? 0.0 : r.real();
        double im = std::abs(r.imag()) < 1e-12 * (std::abs(r) + 1.0) ? 0.0 : r.imag();
        r = Cplx(re + 0.0, im + 0.0);
    }
    std::sort(roots.begin(), roots.end(), [](const Cplx& a, const Cplx& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    for (Cplx c1 : roots) {
        // rebuild the full family numerically at kappa=1, then scale by kappa
        std::vector<Cplx> vals(size_t(l) + 1, Cplx(0.0));
        vals[1] = c1;
        bool ok = true;
        for (int s = 2; s < l; ++s) {
            Cplx den = vals[1] + vals[size_t(s - 1)];
            if (std::abs(den) < 1e-12) { ok = false; break; }
            vals[size_t(s)] = (vals[1] * vals[size_t(s - 1)] + Cplx(1.0)) / den;
        }
        if (!ok) continue;
        std::vector<Cplx> half;
        for (int i = 1; i * 2 < l; ++i) half.push_back(vals[size_t(i)] * kappa);
        PhiPoissonSolution s;
        s.family = CoefficientFamily::from_half(l, kappa, half);
        s.recurrence_residual = recurrence_residual(model, s.family);
        if (s.recurrence_residual > accept_tol) continue;
        s.mcybe_residual = verify_mcybe(model, invariant_bivector(model, s.family), kappa);
        if (s.mcybe_residual > accept_tol) continue;
        {
            std::ostringstream os;
            os.precision(6);
            os << "c1=" << vals[1].real() << (vals[1].imag() < 0 ? "" : "+") << vals[1].imag()
               << "i";
            s.branch_label = os.str();
        }
        out.push_back(std::move(s));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Drinfeld-Jimbo r-matrix and its Yang-Baxter verification on the full algebra
// ---------------------------------------------------------------------------

/// r = sum_{alpha > 0} X_alpha ^ X_{-alpha}
inline Multivector<QuadExt> drinfeld_jimbo_r(const RootSystem& rs,
                                             const StructureConstants& sc) {
    Multivector<QuadExt> out;
    QuadExt one(Rat(1), Rat(0), sc.disc());
    for (int i = 0; i < rs.size(); ++i) {
        if (RootSystem::height(rs.root(i)) <= 0) continue;
        Monomial w{uint16_t(i), uint16_t(rs.negative_of(i))};
        out.add_word(w, one);
    }
    return out;
}

/// Root-triple part of the invariant 3-vector over the whole algebra:
/// sum over ordered root pairs of N_{ab} X_a ^ X_b ^ X_{-(a+b)}.
inline Multivector<QuadExt> phi_root_triples(const RootSystem& rs,
                                             const StructureConstants& sc) {
    Multivector<QuadExt> out;
    for (int a = 0; a < rs.size(); ++a)
        for (int b = 0; b < rs.size(); ++b) {
            if (a == b) continue;
            int s = rs.sum_index(a, b);
            if (s < 0) continue;
            Monomial w{uint16_t(a), uint16_t(b), uint16_t(rs.negative_of(s))};
            out.add_word(w, sc.n(a, b));
        }
    return out;
}

/// Independent oracle for the invariant 3-vector: the Killing-type 3-form
/// omega(x,y,z) = ([x,y],z) raised through the dual basis,
///   phi_full = sum_{a<b<c} omega(a*, b*, c*) e_a ^ e_b ^ e_c.
/// Duals: X_alpha* = X_{-alpha} (normalization (X_a, X_-a) = 1); on the Cartan
/// the Gram matrix of the t_i is the simple-root pairing, so duals come from
/// its exact inverse.
inline Multivector<QuadExt> phi_killing_dual(const RootSystem& rs,
                                             const StructureConstants& sc) {
    int R = rs.size(), n = rs.rank(), dim = R + n;
    int disc = sc.disc();
    // invert the Cartan Gram matrix exactly
    std::vector<std::vector<Rat>> ginv(size_t(n), std::vector<Rat>(size_t(n), Rat(0)));
    {
        std::vector<std::vector<Rat>> a(size_t(n), std::vector<Rat>(2 * size_t(n), Rat(0)));
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) a[size_t(i)][size_t(j)] = rs.simple_pairing(i, j);
            a[size_t(i)][size_t(n + i)] = Rat(1);
        }
        for (int col = 0; col < n; ++col) {
            int piv = -1;
            for (int r = col; r < n; ++r)
                if (!a[size_t(r)][size_t(col)].is_zero()) { piv = r; break; }
            if (piv < 0) throw std::logic_error("singular Cartan Gram matrix");
            std::swap(a[size_t(col)], a[size_t(piv)]);
            Rat d = a[size_t(col)][size_t(col)];
            for (auto& v : a[size_t(col)]) v /= d;
            for (int r = 0; r < n; ++r) {
                if (r == col || a[size_t(r)][size_t(col)].is_zero()) continue;
                Rat f = a[size_t(r)][size_t(col)];
                for (int cjj = 0; cjj < 2 * n; ++cjj)
                    a[size_t(r)][size_t(cjj)] -= f * a[size_t(col)][size_t(cjj)];
            }
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) ginv[size_t(i)][size_t(j)] = a[size_t(i)][size_t(n + j)];
    }
    auto dual = [&](int e) {
        std::vector<BasisTerm<QuadExt>> out;
        if (e < R) {
            out.push_back({rs.negative_of(e), QuadExt(Rat(1), Rat(0), disc)});
        } else {
            int i = e - R;
            for (int j = 0; j < n; ++j)
                if (!ginv[size_t(i)][size_t(j)].is_zero())
                    out.push_back({R + j, QuadExt(ginv[size_t(i)][size_t(j)], Rat(0), disc)});
        }
        return out;
    };
    auto form = [&](int x, int y) -> Rat {
        if (x < R && y < R) return rs.negative_of(x) == y ? Rat(1) : Rat(0);
        if (x >= R && y >= R) return rs.simple_pairing(x - R, y - R);
        return Rat(0);
    };
    auto omega = [&](int x, int y, int z) {
        QuadExt v(Rat(0), Rat(0), disc);
        for (const auto& t : sc.bracket(x, y)) v += t.coeff * QuadExt(form(t.index, z));
        return v;
    };
    Multivector<QuadExt> out;
    for (int a = 0; a < dim; ++a)
        for (int b = a + 1; b < dim; ++b)
            for (int c = b + 1; c < dim; ++c) {
                QuadExt v(Rat(0), Rat(0), disc);
                for (const auto& ta : dual(a))
                    for (const auto& tb : dual(b))
                        for (const auto& tc : dual(c)) {
                            QuadExt w = omega(ta.index, tb.index, tc.index);
                            if (!w.is_zero()) v += ta.coeff * tb.coeff * tc.coeff * w;
                        }
                if (!v.is_zero()) out.add_term(Monomial{uint16_t(a), uint16_t(b), uint16_t(c)}, v);
            }
    return out;
}

struct DrinfeldJimboReport {
    bool invariant = false;        // adjoint annihilation of [[r,r]], exact
    QuadExt lambda_full;           // [[r,r]] = lambda_full * phi_full, exact fit
    double full_residual = 0.0;    // residual of that proportionality
    QuadExt lambda_root;           // root-triple sector vs phi_root_triples
    double root_residual = 0.0;
    double cartan_part_norm = 0.0; // [[r,r]] restricted to Cartan-containing monomials
};

/// Checks [[r,r]] against the Killing-dual invariant (full proportionality)
/// and against the root-triple form on the non-Cartan sector. The Cartan
/// sector of [[r,r]] is genuinely nonzero (already for sl2, where
/// [[e^f,e^f]] = 2 t^e^f), which the report exposes rather than hides.
inline DrinfeldJimboReport verify_dj(const RootSystem& rs, const StructureConstants& sc) {
    DrinfeldJimboReport rep;
    auto r = drinfeld_jimbo_r(rs, sc);
    auto w = schouten(sc, r, r);

    rep.invariant = true;
    for (int x = 0; x < rs.size() + rs.rank() && rep.invariant; ++x)
        if (!adjoint_action(sc, x, w).is_zero()) rep.invariant = false;

    auto fit = [&](const Multivector<QuadExt>& target,
                   const Multivector<QuadExt>& probe) -> std::pair<QuadExt, double> {
        // exact ratio on the first shared monomial, residual in floats
        QuadExt lam(Rat(0), Rat(0), sc.disc());
        for (const auto& [m, c] : target.terms()) {
            QuadExt pc = probe.coeff(m);
            if (!pc.is_zero()) { lam = pc / c; break; }
        }
        Multivector<Cplx> diff = to_complex(probe);
        Multivector<Cplx> t = to_complex(target);
        diff.axpy(Cplx(-lam.to_double(), 0.0), t);
        return {lam, inf_norm(diff)};
    };

    auto phi_full = phi_killing_dual(rs, sc);
    std::tie(rep.lambda_full, rep.full_residual) = fit(phi_full, w);

    // split w into Cartan-containing and root-only sectors
    Multivector<QuadExt> w_root, w_cartan;
    for (const auto& [m, c] : w.terms()) {
        bool cart = false;
        for (auto x : m)
            if (int(x) >= rs.size()) { cart = true; break; }
        (cart ? w_cartan : w_root).add_term(m, c);
    }
    rep.cartan_part_norm = inf_norm(to_complex(w_cartan));
    auto phi_g = phi_root_triples(rs, sc);
    if (!phi_g.is_zero())
        std::tie(rep.lambda_root, rep.root_residual) = fit(phi_g, w_root);
    else
        rep.root_residual = inf_norm(to_complex(w_root));
    return rep;
}

}  // namespace liekit
