#pragma once

#include <map>

#include "hallq/objlabel.hpp"
#include "hallq/scalar.hpp"

namespace hallq {

// Basis symbol K_kappa [A] of the extended algebra B(A). kappa is a
// Cartan word in the Grothendieck lattice (for P^1: (n,d) <-> K^n c^d).
struct BasisKey {
    KClass kappa;
    ObjLabel obj;
    auto operator<=>(const BasisKey&) const = default;
    std::string str() const {
        std::string s;
        bool have_k = !kappa.is_zero();
        if (have_k) s += "K" + kappa.str();
        if (!obj.is_zero()) s += (have_k ? "[" : "[") + obj.str() + "]";
        if (s.empty()) s = "1";
        return s;
    }
};

// Finite linear combination of basis symbols over Q(sqrt q).
class AlgElem {
    std::map<BasisKey, Scalar> terms_;
    long long q_ = 0;

public:
    AlgElem() = default;
    explicit AlgElem(long long q) : q_(q) {}

    long long q() const { return q_; }
    const std::map<BasisKey, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    Scalar coeff(const BasisKey& k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? Scalar(q_) : it->second;
    }

    void add(const BasisKey& k, const Scalar& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_[k] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    static AlgElem basis(long long q, const BasisKey& k, const Scalar& c) {
        AlgElem e(q);
        e.add(k, c);
        return e;
    }

    friend AlgElem operator+(const AlgElem& x, const AlgElem& y) {
        AlgElem r = x;
        if (r.q_ == 0) r.q_ = y.q_;
        for (auto& [k, c] : y.terms_) r.add(k, c);
        return r;
    }
    friend AlgElem operator-(const AlgElem& x, const AlgElem& y) {
        AlgElem r = x;
        if (r.q_ == 0) r.q_ = y.q_;
        for (auto& [k, c] : y.terms_) r.add(k, -c);
        return r;
    }
    friend AlgElem operator*(const Scalar& s, const AlgElem& x) {
        AlgElem r(x.q_);
        if (s.is_zero()) return r;
        for (auto& [k, c] : x.terms_) r.add(k, s * c);
        return r;
    }
    AlgElem operator-() const { return Scalar::integer(-1, q_) * *this; }

    friend bool operator==(const AlgElem& x, const AlgElem& y) { return x.terms_ == y.terms_; }
    friend bool operator!=(const AlgElem& x, const AlgElem& y) { return !(x == y); }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (auto& [k, c] : terms_) {
            if (!s.empty()) s += " + ";
            s += "(" + c.str() + ")" + k.str();
        }
        return s;
    }
};

struct TensorKey {
    BasisKey l, r;
    auto operator<=>(const TensorKey&) const = default;
    std::string str() const { return l.str() + " (x) " + r.str(); }
};

class TensorElem {
    std::map<TensorKey, Scalar> terms_;
    long long q_ = 0;

public:
    TensorElem() = default;
    explicit TensorElem(long long q) : q_(q) {}

    long long q() const { return q_; }
    const std::map<TensorKey, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Scalar coeff(const TensorKey& k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? Scalar(q_) : it->second;
    }
    void add(const TensorKey& k, const Scalar& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_[k] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend TensorElem operator+(const TensorElem& x, const TensorElem& y) {
        TensorElem r = x;
        if (r.q_ == 0) r.q_ = y.q_;
        for (auto& [k, c] : y.terms_) r.add(k, c);
        return r;
    }
    friend TensorElem operator-(const TensorElem& x, const TensorElem& y) {
        TensorElem r = x;
        if (r.q_ == 0) r.q_ = y.q_;
        for (auto& [k, c] : y.terms_) r.add(k, -c);
        return r;
    }
    friend TensorElem operator*(const Scalar& s, const TensorElem& x) {
        TensorElem r(x.q_);
        if (s.is_zero()) return r;
        for (auto& [k, c] : x.terms_) r.add(k, s * c);
        return r;
    }
    friend bool operator==(const TensorElem& x, const TensorElem& y) {
        return x.terms_ == y.terms_;
    }
    friend bool operator!=(const TensorElem& x, const TensorElem& y) { return !(x == y); }

    static TensorElem tensor(const AlgElem& x, const AlgElem& y) {
        TensorElem r(x.q() ? x.q() : y.q());
        for (auto& [k1, c1] : x.terms())
            for (auto& [k2, c2] : y.terms()) r.add({k1, k2}, c1 * c2);
        return r;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (auto& [k, c] : terms_) {
            if (!s.empty()) s += " + ";
            s += "(" + c.str() + ")" + k.str();
        }
        return s;
    }
};

} // namespace hallq
