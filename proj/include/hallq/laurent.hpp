#pragma once

#include <map>
#include <string>

#include "hallq/scalar.hpp"

namespace hallq {

// Laurent polynomial in one formal variable over Q(sqrt(q)).
// No zero coefficients are stored.
class LaurentPoly {
    std::map<long long, Scalar> coeffs_;
    std::string var_;
    long long q_ = 0;

public:
    LaurentPoly() = default;
    LaurentPoly(long long q, std::string var = "t") : var_(std::move(var)), q_(q) {}

    static LaurentPoly constant(const Scalar& c, std::string var = "t") {
        LaurentPoly p(c.q(), std::move(var));
        p.set(0, c);
        return p;
    }
    static LaurentPoly monomial(const Scalar& c, long long e, std::string var = "t") {
        LaurentPoly p(c.q(), std::move(var));
        p.set(e, c);
        return p;
    }

    long long q() const { return q_; }
    const std::string& var() const { return var_; }
    const std::map<long long, Scalar>& coeffs() const { return coeffs_; }

    bool is_zero() const { return coeffs_.empty(); }

    Scalar coeff(long long e) const {
        auto it = coeffs_.find(e);
        return it == coeffs_.end() ? Scalar(q_) : it->second;
    }

    void set(long long e, const Scalar& c) {
        if (c.is_zero()) coeffs_.erase(e);
        else coeffs_[e] = c;
    }
    void add(long long e, const Scalar& c) { set(e, coeff(e) + c); }

    long long min_exp() const { return coeffs_.begin()->first; }   // pre: nonzero
    long long max_exp() const { return coeffs_.rbegin()->first; }  // pre: nonzero

    friend LaurentPoly operator+(const LaurentPoly& x, const LaurentPoly& y) {
        LaurentPoly r = x;
        for (auto& [e, c] : y.coeffs_) r.add(e, c);
        if (r.q_ == 0) r.q_ = y.q_;
        return r;
    }
    friend LaurentPoly operator-(const LaurentPoly& x, const LaurentPoly& y) {
        LaurentPoly r = x;
        for (auto& [e, c] : y.coeffs_) r.add(e, -c);
        if (r.q_ == 0) r.q_ = y.q_;
        return r;
    }
    friend LaurentPoly operator*(const LaurentPoly& x, const LaurentPoly& y) {
        LaurentPoly r(x.q_ ? x.q_ : y.q_, x.var_.empty() ? y.var_ : x.var_);
        for (auto& [e1, c1] : x.coeffs_)
            for (auto& [e2, c2] : y.coeffs_) r.add(e1 + e2, c1 * c2);
        return r;
    }
    LaurentPoly operator-() const {
        LaurentPoly r(q_, var_);
        for (auto& [e, c] : coeffs_) r.set(e, -c);
        return r;
    }
    friend LaurentPoly operator*(const Scalar& s, const LaurentPoly& x) {
        LaurentPoly r(x.q_, x.var_);
        for (auto& [e, c] : x.coeffs_) r.set(e, s * c);
        return r;
    }

    friend bool operator==(const LaurentPoly& x, const LaurentPoly& y) {
        return x.coeffs_ == y.coeffs_;
    }
    friend bool operator!=(const LaurentPoly& x, const LaurentPoly& y) { return !(x == y); }

    // Substitute t -> c*t^k (k != 0).
    LaurentPoly substitute_scaled_power(const Scalar& c, long long k) const {
        LaurentPoly r(q_, var_);
        for (auto& [e, co] : coeffs_) r.add(e * k, co * pow(c, e));
        return r;
    }

    std::string str() const {
        if (coeffs_.empty()) return "0";
        std::string s;
        bool first = true;
        for (auto& [e, c] : coeffs_) {
            if (!first) s += " + ";
            first = false;
            s += "(" + c.str() + ")";
            if (e != 0) s += "*" + var_ + "^" + std::to_string(e);
        }
        return s;
    }
};

// Quotient/remainder for ordinary polynomials (all exponents >= 0),
// dividing by the leading (highest) term.
inline void poly_divmod(const LaurentPoly& a, const LaurentPoly& b, LaurentPoly& quo,
                        LaurentPoly& rem) {
    if (b.is_zero()) throw division_error("poly_divmod: division by zero polynomial");
    quo = LaurentPoly(a.q() ? a.q() : b.q(), a.var());
    rem = a;
    long long db = b.max_exp();
    Scalar lb = b.coeff(db);
    while (!rem.is_zero() && rem.max_exp() >= db) {
        long long e = rem.max_exp() - db;
        Scalar c = rem.coeff(rem.max_exp()) / lb;
        quo.add(e, c);
        rem = rem - LaurentPoly::monomial(c, e, b.var()) * b;
    }
}

inline LaurentPoly poly_gcd(LaurentPoly a, LaurentPoly b) {
    while (!b.is_zero()) {
        LaurentPoly q, r;
        poly_divmod(a, b, q, r);
        a = b;
        b = r;
    }
    return a;
}

} // namespace hallq
