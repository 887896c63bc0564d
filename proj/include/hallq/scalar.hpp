#pragma once

#include <cmath>
#include <string>

#include "hallq/rational.hpp"

namespace hallq {

// Element a + b*v of Q(sqrt(q)), v^2 = q, at a fixed prime power q.
// When q is a perfect square, v is rational and b collapses into a,
// so division stays total. q is carried per value; mixing two different
// q contexts is a programming error and throws.
class Scalar {
    Rational a_, b_;
    long long q_;

    static long long isqrt_exact(long long q) {
        long long r = (long long)std::llround(std::sqrt((double)q));
        while (r * r > q) --r;
        while ((r + 1) * (r + 1) <= q) ++r;
        return r * r == q ? r : 0;
    }

    void collapse() {
        if (b_.is_zero()) return;
        long long r = isqrt_exact(q_);
        if (r != 0) {
            a_ += b_ * Rational(r);
            b_ = Rational(0);
        }
    }

    static void check_same_q(const Scalar& x, const Scalar& y) {
        if (x.q_ != y.q_) throw error("Scalar: mixed q contexts");
    }

public:
    Scalar() : a_(0), b_(0), q_(0) {}
    explicit Scalar(long long q) : a_(0), b_(0), q_(q) {}
    Scalar(Rational a, long long q) : a_(std::move(a)), b_(0), q_(q) {}
    Scalar(Rational a, Rational b, long long q) : a_(std::move(a)), b_(std::move(b)), q_(q) {
        collapse();
    }

    static Scalar integer(long long n, long long q) { return Scalar(Rational(n), q); }
    static Scalar of(const Rational& r, long long q) { return Scalar(r, q); }

    // v^k for k in Z: even powers are rational, odd carry one factor of v.
    static Scalar v_pow(long long k, long long q) {
        long long h = (k >= 0 ? k : k - 1) / 2; // floor(k/2)
        Rational qs = pow(Rational(q), h);
        if (k % 2 == 0) return Scalar(qs, q);
        return Scalar(Rational(0), qs, q);
    }

    static Scalar q_pow(long long k, long long q) { return Scalar(pow(Rational(q), k), q); }

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    long long q() const { return q_; }

    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    bool is_rational() const { return b_.is_zero(); }

    Scalar operator-() const { return Scalar(-a_, -b_, q_); }

    friend Scalar operator+(const Scalar& x, const Scalar& y) {
        check_same_q(x, y);
        return Scalar(x.a_ + y.a_, x.b_ + y.b_, x.q_);
    }
    friend Scalar operator-(const Scalar& x, const Scalar& y) {
        check_same_q(x, y);
        return Scalar(x.a_ - y.a_, x.b_ - y.b_, x.q_);
    }
    friend Scalar operator*(const Scalar& x, const Scalar& y) {
        check_same_q(x, y);
        Rational q(x.q_);
        return Scalar(x.a_ * y.a_ + q * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_, x.q_);
    }
    friend Scalar operator/(const Scalar& x, const Scalar& y) { return x * y.inv(); }

    Scalar& operator+=(const Scalar& r) { return *this = *this + r; }
    Scalar& operator-=(const Scalar& r) { return *this = *this - r; }
    Scalar& operator*=(const Scalar& r) { return *this = *this * r; }
    Scalar& operator/=(const Scalar& r) { return *this = *this / r; }

    Scalar inv() const {
        // 1/(a+bv) = (a-bv)/(a^2 - q b^2); the norm vanishes only for 0
        // because q is never a square when b != 0 (collapse rule).
        Rational norm = a_ * a_ - Rational(q_) * b_ * b_;
        if (norm.is_zero()) throw division_error("Scalar: division by zero");
        return Scalar(a_ / norm, -b_ / norm, q_);
    }

    friend bool operator==(const Scalar& x, const Scalar& y) {
        return x.q_ == y.q_ && x.a_ == y.a_ && x.b_ == y.b_;
    }
    friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }
    friend bool operator<(const Scalar& x, const Scalar& y) {
        if (x.a_ != y.a_) return x.a_ < y.a_;
        return x.b_ < y.b_;
    }

    std::string str() const {
        if (b_.is_zero()) return a_.str();
        std::string s;
        if (!a_.is_zero()) s = a_.str() + (b_.sign() > 0 ? "+" : "");
        if (b_ == Rational(1)) s += "v";
        else if (b_ == Rational(-1)) s += "-v";
        else s += b_.str() + "v";
        return s;
    }
};

inline Scalar pow(const Scalar& base, long long e) {
    if (e < 0) return pow(base.inv(), -e);
    Scalar r = Scalar::integer(1, base.q()), b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

} // namespace hallq
