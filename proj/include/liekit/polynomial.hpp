#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "liekit/scalars.hpp"

namespace liekit {

/// Dense univariate polynomial over Q, coefficient of x^k at index k.
struct Poly {
    std::vector<Rat> c;

    Poly() = default;
    explicit Poly(std::vector<Rat> coeffs) : c(std::move(coeffs)) { trim(); }
    static Poly constant(Rat v) { return Poly({std::move(v)}); }
    static Poly x() { return Poly({Rat(0), Rat(1)}); }

    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return int(c.size()) - 1; }
    const Rat& operator[](size_t i) const { return c[i]; }

    friend Poly operator+(const Poly& a, const Poly& b) {
        Poly r;
        r.c.resize(std::max(a.c.size(), b.c.size()), Rat(0));
        for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
        for (size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
        r.trim();
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        Poly r;
        r.c.resize(std::max(a.c.size(), b.c.size()), Rat(0));
        for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
        for (size_t i = 0; i < b.c.size(); ++i) r.c[i] -= b.c[i];
        r.trim();
        return r;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        Poly r;
        r.c.resize(a.c.size() + b.c.size() - 1, Rat(0));
        for (size_t i = 0; i < a.c.size(); ++i)
            for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
        r.trim();
        return r;
    }

    Poly monic() const {
        if (is_zero()) return *this;
        Poly r(*this);
        Rat lead = r.c.back();
        for (auto& v : r.c) v /= lead;
        return r;
    }

    /// polynomial remainder a mod b
    static Poly rem(Poly a, const Poly& b) {
        if (b.is_zero()) throw std::domain_error("poly rem by zero");
        while (!a.is_zero() && a.degree() >= b.degree()) {
            Rat f = a.c.back() / b.c.back();
            size_t shift = size_t(a.degree() - b.degree());
            for (size_t i = 0; i < b.c.size(); ++i) a.c[i + shift] -= f * b.c[i];
            a.trim();
        }
        return a;
    }

    static Poly gcd(Poly a, Poly b) {
        while (!b.is_zero()) {
            Poly r = rem(std::move(a), b);
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    Cplx eval(Cplx x) const {
        Cplx v(0.0);
        for (size_t i = c.size(); i-- > 0;) v = v * x + Cplx(to_double(c[i]), 0.0);
        return v;
    }

    bool proportional_to(const Poly& other) const {
        return monic().c == other.monic().c;
    }
};

/// Rational function num/den over Q, normalized by the gcd.
struct RatFunc {
    Poly num, den;

    RatFunc() : num(), den(Poly::constant(Rat(1))) {}
    RatFunc(Poly n, Poly d) : num(std::move(n)), den(std::move(d)) { normalize(); }
    static RatFunc constant(Rat v) { return RatFunc(Poly::constant(std::move(v)), Poly::constant(Rat(1))); }
    static RatFunc x() { return RatFunc(Poly::x(), Poly::constant(Rat(1))); }

    void normalize() {
        if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
        if (num.is_zero()) { den = Poly::constant(Rat(1)); return; }
        Poly g = Poly::gcd(num, den);
        if (g.degree() > 0) {
            num = divide_exact(num, g);
            den = divide_exact(den, g);
        }
        Rat lead = den.c.back();
        for (auto& v : num.c) v /= lead;
        for (auto& v : den.c) v /= lead;
    }

    static Poly divide_exact(const Poly& a, const Poly& b) {
        Poly q, r(a);
        q.c.assign(a.c.size(), Rat(0));
        while (!r.is_zero() && r.degree() >= b.degree()) {
            Rat f = r.c.back() / b.c.back();
            size_t shift = size_t(r.degree() - b.degree());
            q.c[shift] = f;
            for (size_t i = 0; i < b.c.size(); ++i) r.c[i + shift] -= f * b.c[i];
            r.trim();
        }
        if (!r.is_zero()) throw std::logic_error("inexact polynomial division");
        q.trim();
        return q;
    }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num * b.num, a.den * b.den);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.num.is_zero()) throw std::domain_error("rational function division by zero");
        return RatFunc(a.num * b.den, a.den * b.num);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num * b.den - b.num * a.den, a.den * b.den);
    }
};

/// All complex roots of p via Durand-Kerner iteration with Newton polish.
/// Degrees here are tiny (<= 8) and the polynomials well separated.
inline std::vector<Cplx> poly_roots(const Poly& p) {
    int deg = p.degree();
    if (deg <= 0) return {};
    std::vector<Cplx> lead_scaled(size_t(deg) + 1);
    double lead = to_double(p.c.back());
    for (size_t i = 0; i < lead_scaled.size(); ++i)
        lead_scaled[i] = Cplx(to_double(p.c[i]) / lead, 0.0);

    std::vector<Cplx> z(size_t(deg), Cplx(0.0));
    Cplx seed(0.4, 0.9);  // standard non-real, non-unit seed
    Cplx acc(1.0, 0.0);
    for (int i = 0; i < deg; ++i) {
        acc *= seed;
        z[size_t(i)] = acc;
    }
    auto eval = [&](Cplx x) {
        Cplx v(0.0);
        for (size_t i = lead_scaled.size(); i-- > 0;) v = v * x + lead_scaled[i];
        return v;
    };
    for (int iter = 0; iter < 500; ++iter) {
        double moved = 0.0;
        for (int i = 0; i < deg; ++i) {
            Cplx denom(1.0, 0.0);
            for (int j = 0; j < deg; ++j)
                if (j != i) denom *= (z[size_t(i)] - z[size_t(j)]);
            Cplx delta = eval(z[size_t(i)]) / denom;
            z[size_t(i)] -= delta;
            moved = std::max(moved, std::abs(delta));
        }
        if (moved < 1e-14) break;
    }
    // Newton polish
    for (auto& r : z) {
        for (int it = 0; it < 8; ++it) {
            Cplx f = eval(r);
            Cplx df(0.0);
            for (size_t i = lead_scaled.size(); i-- > 1;)
                df = df * r + Cplx(double(i), 0.0) * lead_scaled[i];
            if (std::abs(df) < 1e-300) break;
            r -= f / df;
        }
    }
    std::sort(z.begin(), z.end(), [](const Cplx& a, const Cplx& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return z;
}

}  // namespace liekit
