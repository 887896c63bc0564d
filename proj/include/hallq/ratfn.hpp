#pragma once

#include <algorithm>
#include <vector>

#include "hallq/laurent.hpp"

namespace hallq {

// Exact rational function num/den in one variable. Stored reduced, with
// the denominator normalized to an ordinary polynomial whose lowest
// coefficient is 1; num may keep negative exponents (monomial factors).
class RationalFn {
    LaurentPoly num_, den_;

    void normalize() {
        if (den_.is_zero()) throw division_error("RationalFn: zero denominator");
        long long qq = q();
        if (num_.is_zero()) {
            num_ = LaurentPoly(qq, den_.var());
            den_ = LaurentPoly::constant(Scalar::integer(1, qq), den_.var());
            return;
        }
        long long nmin = num_.min_exp(), dmin = den_.min_exp();
        LaurentPoly n0(qq, num_.var()), d0(qq, den_.var());
        for (auto& [e, c] : num_.coeffs()) n0.set(e - nmin, c);
        for (auto& [e, c] : den_.coeffs()) d0.set(e - dmin, c);
        LaurentPoly g = poly_gcd(n0, d0);
        if (!g.is_zero() && g.max_exp() > 0) {
            LaurentPoly q1, r1, q2, r2;
            poly_divmod(n0, g, q1, r1);
            poly_divmod(d0, g, q2, r2);
            n0 = q1;
            d0 = q2;
        }
        Scalar inv = d0.coeff(d0.min_exp()).inv();
        n0 = inv * n0;
        d0 = inv * d0;
        // shift the denominator to exponent base 0, keep the rest on num
        long long extra = d0.min_exp();
        LaurentPoly den_final(qq, d0.var());
        for (auto& [e, c] : d0.coeffs()) den_final.set(e - extra, c);
        LaurentPoly num_final(qq, n0.var());
        for (auto& [e, c] : n0.coeffs()) num_final.set(e + nmin - dmin - extra, c);
        num_ = num_final;
        den_ = den_final;
    }

public:
    RationalFn() = default;
    explicit RationalFn(const LaurentPoly& num)
        : num_(num), den_(LaurentPoly::constant(Scalar::integer(1, num.q()), num.var())) {
        normalize();
    }
    RationalFn(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
        normalize();
    }
    static RationalFn constant(const Scalar& c, std::string var = "t") {
        return RationalFn(LaurentPoly::constant(c, std::move(var)));
    }

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }
    long long q() const { return num_.q() ? num_.q() : den_.q(); }
    bool is_zero() const { return num_.is_zero(); }

    friend RationalFn operator+(const RationalFn& x, const RationalFn& y) {
        return RationalFn(x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_);
    }
    friend RationalFn operator-(const RationalFn& x, const RationalFn& y) {
        return RationalFn(x.num_ * y.den_ - y.num_ * x.den_, x.den_ * y.den_);
    }
    friend RationalFn operator*(const RationalFn& x, const RationalFn& y) {
        return RationalFn(x.num_ * y.num_, x.den_ * y.den_);
    }
    friend RationalFn operator/(const RationalFn& x, const RationalFn& y) {
        if (y.is_zero()) throw division_error("RationalFn: division by zero");
        return RationalFn(x.num_ * y.den_, x.den_ * y.num_);
    }
    friend bool operator==(const RationalFn& x, const RationalFn& y) {
        return x.num_ == y.num_ && x.den_ == y.den_;
    }
    friend bool operator!=(const RationalFn& x, const RationalFn& y) { return !(x == y); }

    // Substitute t -> c * t^k, k != 0 (k may be negative).
    RationalFn substitute_scaled_power(const Scalar& c, long long k) const {
        return RationalFn(num_.substitute_scaled_power(c, k),
                          den_.substitute_scaled_power(c, k));
    }

    // Laurent expansion around t = 0 (den has unit constant term by
    // construction). Returns coefficients of t^0 .. t^{nterms-1}.
    std::vector<Scalar> series(int nterms) const {
        long long qq = q();
        std::vector<Scalar> out(nterms, Scalar(qq));
        if (num_.is_zero()) return out;
        long long m = std::min(num_.min_exp(), 0LL);
        std::vector<Scalar> acc; // X_{m}, X_{m+1}, ...
        for (long long k = m; k < (long long)nterms; ++k) {
            Scalar c = num_.coeff(k);
            for (long long j = 1; j <= den_.max_exp() && j <= k - m; ++j)
                c -= den_.coeff(j) * acc[k - j - m];
            acc.push_back(c);
            if (k >= 0) out[(size_t)k] = c;
        }
        return out;
    }

    std::string str() const { return "(" + num_.str() + ") / (" + den_.str() + ")"; }
};

} // namespace hallq
