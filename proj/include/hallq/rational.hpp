#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "hallq/errors.hpp"

namespace hallq {

using bigint = boost::multiprecision::cpp_int;

// Exact rational number. Always reduced, denominator always positive,
// zero stored as 0/1.
class Rational {
    bigint num_;
    bigint den_;

    void reduce() {
        if (den_ == 0) throw division_error("Rational: zero denominator");
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        bigint g = boost::multiprecision::gcd(num_ < 0 ? bigint(-num_) : num_, den_);
        num_ /= g;
        den_ /= g;
    }

public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(bigint n) : num_(std::move(n)), den_(1) {}
    Rational(bigint n, bigint d) : num_(std::move(n)), den_(std::move(d)) { reduce(); }

    const bigint& num() const { return num_; }
    const bigint& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ == 0 ? 0 : (num_ < 0 ? -1 : 1); }

    Rational operator-() const { return Rational(-num_, den_); }

    friend Rational operator+(const Rational& x, const Rational& y) {
        return Rational(x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_);
    }
    friend Rational operator-(const Rational& x, const Rational& y) {
        return Rational(x.num_ * y.den_ - y.num_ * x.den_, x.den_ * y.den_);
    }
    friend Rational operator*(const Rational& x, const Rational& y) {
        return Rational(x.num_ * y.num_, x.den_ * y.den_);
    }
    friend Rational operator/(const Rational& x, const Rational& y) {
        if (y.num_ == 0) throw division_error("Rational: division by zero");
        return Rational(x.num_ * y.den_, x.den_ * y.num_);
    }

    Rational& operator+=(const Rational& r) { return *this = *this + r; }
    Rational& operator-=(const Rational& r) { return *this = *this - r; }
    Rational& operator*=(const Rational& r) { return *this = *this * r; }
    Rational& operator/=(const Rational& r) { return *this = *this / r; }

    friend bool operator==(const Rational& x, const Rational& y) {
        return x.num_ == y.num_ && x.den_ == y.den_;
    }
    friend bool operator!=(const Rational& x, const Rational& y) { return !(x == y); }
    friend bool operator<(const Rational& x, const Rational& y) {
        return x.num_ * y.den_ < y.num_ * x.den_;
    }
    friend bool operator>(const Rational& x, const Rational& y) { return y < x; }

    Rational inv() const {
        if (num_ == 0) throw division_error("Rational: inverse of zero");
        return Rational(den_, num_);
    }

    // "p/q" with the "/q" omitted for integers; used by the JSON layer.
    std::string str() const {
        std::string s = num_.str();
        if (den_ != 1) s += "/" + den_.str();
        return s;
    }

    static Rational parse(const std::string& s) {
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return Rational(bigint(s));
            return Rational(bigint(s.substr(0, slash)), bigint(s.substr(slash + 1)));
        } catch (const std::exception&) {
            throw parse_error("Rational: cannot parse '" + s + "'");
        }
    }
};

inline Rational pow(const Rational& base, long long e) {
    if (e < 0) return pow(base.inv(), -e);
    Rational r(1), b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

} // namespace hallq
