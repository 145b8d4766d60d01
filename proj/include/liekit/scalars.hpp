#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <complex>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>

namespace liekit {

using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

/// Element of the quadratic extension Q(sqrt(disc)): value = rat + srt*sqrt(disc).
/// disc==1 means plain rationals (srt folded into rat); disc==-1 gives the
/// exact Gaussian extension Q(i) for purely imaginary coefficient work. The
/// structure-constant extensions are fixed per root system (1 for A/D/E, 2
/// for B/C/F, 3 for G) and values from different extensions must not be mixed
/// except through rationals.
class QuadExt {
public:
    QuadExt() : rat_(0), srt_(0), disc_(1) {}
    QuadExt(long v) : rat_(v), srt_(0), disc_(1) {}  // NOLINT: implicit by design
    QuadExt(Rat v) : rat_(std::move(v)), srt_(0), disc_(1) {}
    QuadExt(Rat a, Rat b, int d) : rat_(std::move(a)), srt_(std::move(b)), disc_(d) {
        if (disc_ == 1) { rat_ += srt_; srt_ = 0; }
    }

    const Rat& rational_part() const { return rat_; }
    const Rat& sqrt_part() const { return srt_; }
    int disc() const { return disc_; }

    bool is_zero() const { return rat_.is_zero() && srt_.is_zero(); }
    bool is_rational() const { return srt_.is_zero(); }

    friend QuadExt operator+(const QuadExt& x, const QuadExt& y) {
        int d = join(x, y);
        return QuadExt(x.rat_ + y.rat_, x.srt_ + y.srt_, d);
    }
    friend QuadExt operator-(const QuadExt& x, const QuadExt& y) {
        int d = join(x, y);
        return QuadExt(x.rat_ - y.rat_, x.srt_ - y.srt_, d);
    }
    QuadExt operator-() const { return QuadExt(-rat_, -srt_, disc_); }
    friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
        int d = join(x, y);
        return QuadExt(x.rat_ * y.rat_ + Rat(d) * x.srt_ * y.srt_,
                       x.rat_ * y.srt_ + x.srt_ * y.rat_, d);
    }
    QuadExt inverse() const {
        Rat nrm = rat_ * rat_ - Rat(disc_) * srt_ * srt_;
        if (nrm.is_zero()) throw std::domain_error("QuadExt: division by zero");
        return QuadExt(rat_ / nrm, -srt_ / nrm, disc_);
    }
    friend QuadExt operator/(const QuadExt& x, const QuadExt& y) { return x * y.inverse(); }

    QuadExt& operator+=(const QuadExt& y) { *this = *this + y; return *this; }
    QuadExt& operator-=(const QuadExt& y) { *this = *this - y; return *this; }
    QuadExt& operator*=(const QuadExt& y) { *this = *this * y; return *this; }
    QuadExt& operator/=(const QuadExt& y) { *this = *this / y; return *this; }

    friend bool operator==(const QuadExt& x, const QuadExt& y) {
        return x.rat_ == y.rat_ && x.srt_ == y.srt_ &&
               (x.disc_ == y.disc_ || x.srt_.is_zero());
    }
    friend bool operator!=(const QuadExt& x, const QuadExt& y) { return !(x == y); }

    double to_double() const {
        if (disc_ < 0 && !srt_.is_zero())
            throw std::domain_error("to_double on a value with imaginary part");
        return liekit::to_double(rat_) + liekit::to_double(srt_) * std::sqrt(double(disc_));
    }

    std::complex<double> to_complex() const {
        if (disc_ < 0)
            return {liekit::to_double(rat_),
                    liekit::to_double(srt_) * std::sqrt(double(-disc_))};
        return {to_double(), 0.0};
    }

    std::string str() const {
        std::ostringstream os;
        if (srt_.is_zero()) { os << rat_; return os.str(); }
        os << "(" << rat_ << "+" << srt_ << "*sqrt(" << disc_ << "))";
        return os.str();
    }

private:
    static int join(const QuadExt& x, const QuadExt& y) {
        if (x.disc_ == y.disc_) return x.disc_;
        if (x.srt_.is_zero()) return y.disc_;
        if (y.srt_.is_zero()) return x.disc_;
        throw std::invalid_argument("QuadExt: mixed discriminants");
    }

    Rat rat_, srt_;
    int disc_;
};

/// Exact square root of a nonnegative rational inside Q(sqrt(disc)).
/// The toolkit only ever needs sqrt of values of the form r^2 or r^2*disc.
inline QuadExt exact_sqrt(const Rat& x, int disc) {
    if (x.is_zero()) return QuadExt(Rat(0), Rat(0), disc);
    if (x < 0) throw std::domain_error("exact_sqrt: negative argument");
    auto perfect = [](const BigInt& n, BigInt& r) {
        r = sqrt(n);
        return r * r == n;
    };
    BigInt rn, rd;
    if (perfect(numerator(x), rn) && perfect(denominator(x), rd))
        return QuadExt(Rat(rn, rd), Rat(0), disc);
    Rat y = x / disc;
    if (perfect(numerator(y), rn) && perfect(denominator(y), rd))
        return QuadExt(Rat(0), Rat(rn, rd), disc);
    throw std::domain_error("exact_sqrt: " + x.str() + " not in Q(sqrt(" +
                            std::to_string(disc) + "))");
}

using Cplx = std::complex<double>;

// Scalar shims so Multivector<S> and the exact solvers work across backends.
inline bool scalar_is_zero(const Rat& v) { return v.is_zero(); }
inline bool scalar_is_zero(const QuadExt& v) { return v.is_zero(); }
inline bool scalar_is_zero(const Cplx& v) { return std::abs(v) < 1e-14; }
inline Cplx scalar_to_complex(const QuadExt& v) { return v.to_complex(); }
inline Cplx scalar_to_complex(const Cplx& v) { return v; }

}  // namespace liekit
