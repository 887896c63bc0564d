#pragma once

#include "hallq/autop1.hpp"
#include "hallq/hall_ops.hpp"

namespace hallq {

// ---- structure-constant export and generic doubles -------------------------

// Structure constants of a finite graded piece of a Hopf algebra with
// distinguished basis (here: the torsion Hall algebra inside a window).
// Complete within the window: products and coproducts of basis elements
// of total degree <= the cap stay inside.
struct HopfData {
    long long q = 0;
    std::vector<ObjLabel> basis;
    std::map<std::pair<int, int>, std::vector<std::pair<int, Scalar>>> m; // e_i e_j
    std::map<int, std::vector<std::tuple<int, int, Scalar>>> mu;          // Delta e_k
    std::vector<Scalar> eps;
    std::map<int, std::vector<std::pair<int, Scalar>>> S, Sinv;

    int index_of(const ObjLabel& o) const {
        for (size_t i = 0; i < basis.size(); ++i)
            if (basis[i] == o) return (int)i;
        return -1;
    }
};

// torsion subcategory of P^1 up to total torsion degree maxLen
HopfData export_hopf_data(int q, int maxLen);

// elements of HD(Xi) in the normal form sum c Z^i Z_j, and of the
// checked double in the form sum c Zc_i Zc^j
using HDElem = std::map<std::pair<int, int>, Scalar>;

HDElem hd_mul_generic(const HopfData& d, const HDElem& x, const HDElem& y, bool checked);

// verification of the Drinfeld-double cross relation through the
// embedding W_k -> sum mu_k^{ij} Z_i (x) Zc_j, W^k -> sum m_{ji}^k Z^i (x) Zc^j
Report kashaev_check(const HopfData& d, bool corrupt_mu = false);

// the double cross relation brought to normal form through the inverse
// antipode, checked against the embedding images (consistency probe)
Report dd_normal_form_check(const HopfData& d);

// ---- the Heisenberg doubles of B(Coh P^1) -----------------------------------

// normal-form key of the restricted Heisenberg double: for the plain
// variant left/right are the Z^-/Z^+ labels, for the checked variant
// Zc^+/Zc^-. Cartan word K^kn c^{kc2/2} d(lambda)^{dexp}; the formal
// lambda-power of the coefficient rides in lexp.
struct DKey {
    ObjLabel left, right;
    long long kn = 0;
    long long kc2 = 0; // half-integer c-exponents, doubled
    long long dexp = 0;
    long long lexp = 0;
    auto operator<=>(const DKey&) const = default;
    std::string str() const;
};

class DoubleElem {
    std::map<DKey, Scalar> terms_;
    long long q_ = 0;

public:
    DoubleElem() = default;
    explicit DoubleElem(long long q) : q_(q) {}
    long long q() const { return q_; }
    const std::map<DKey, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Scalar coeff(const DKey& k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? Scalar(q_) : it->second;
    }
    void add(const DKey& k, const Scalar& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(k);
        if (it == terms_.end()) terms_[k] = c;
        else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    friend DoubleElem operator+(const DoubleElem& a, const DoubleElem& b) {
        DoubleElem r = a;
        if (r.q_ == 0) r.q_ = b.q_;
        for (auto& [k, c] : b.terms_) r.add(k, c);
        return r;
    }
    friend DoubleElem operator-(const DoubleElem& a, const DoubleElem& b) {
        DoubleElem r = a;
        if (r.q_ == 0) r.q_ = b.q_;
        for (auto& [k, c] : b.terms_) r.add(k, -c);
        return r;
    }
    friend DoubleElem operator*(const Scalar& s, const DoubleElem& a) {
        DoubleElem r(a.q_);
        for (auto& [k, c] : a.terms_) r.add(k, s * c);
        return r;
    }
    friend bool operator==(const DoubleElem& a, const DoubleElem& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const DoubleElem& a, const DoubleElem& b) { return !(a == b); }
    std::string str() const;
};

enum class HeisVariant { Heis, HeisCheck };

// The restricted Heisenberg double Heis(Coh P^1) (and its checked twin):
// Z^- K Z^+ words with the long-exact-sequence cross rule.
class HeisP1 {
    AutoP1& auto_;
    HeisVariant variant_;
    Window w_;

public:
    HeisP1(AutoP1& a, HeisVariant v, Window w) : auto_(a), variant_(v), w_(std::move(w)) {}
    long long q() const { return auto_.q(); }
    const Window& window() const { return w_; }
    HeisVariant variant() const { return variant_; }

    DoubleElem one() const {
        DoubleElem e(q());
        DKey k;
        k.left = k.right = ObjLabel::zero(BackendTag::CohP1);
        e.add(k, Scalar::integer(1, q()));
        return e;
    }
    DoubleElem plus(const ObjLabel& a) const { // Z^+_A (resp. Zc^+_A)
        DoubleElem e(q());
        DKey k;
        k.left = ObjLabel::zero(BackendTag::CohP1);
        k.right = ObjLabel::zero(BackendTag::CohP1);
        (variant_ == HeisVariant::Heis ? k.right : k.left) = a;
        e.add(k, Scalar::integer(1, q()));
        return e;
    }
    DoubleElem minus(const ObjLabel& a) const { // Z^-_A (resp. Zc^-_A)
        DoubleElem e(q());
        DKey k;
        k.left = ObjLabel::zero(BackendTag::CohP1);
        k.right = ObjLabel::zero(BackendTag::CohP1);
        (variant_ == HeisVariant::Heis ? k.left : k.right) = a;
        e.add(k, Scalar::integer(1, q()));
        return e;
    }
    DoubleElem cartan(long long kn, long long kc2, long long dexp = 0) const {
        DoubleElem e(q());
        DKey k;
        k.left = k.right = ObjLabel::zero(BackendTag::CohP1);
        k.kn = kn;
        k.kc2 = kc2;
        k.dexp = dexp;
        e.add(k, Scalar::integer(1, q()));
        return e;
    }

    DoubleElem mul(const DoubleElem& x, const DoubleElem& y) const;

    // generating-function coefficients
    DoubleElem Eplus(int i) const { return plus(ObjLabel::coh_line(i)); }
    DoubleElem Eminus(int j) const { return minus(ObjLabel::coh_line(-j)); }
    DoubleElem PsiPlus(int d) const;
    DoubleElem PsiMinus(int d) const;
    // log coefficients of the local psi series at a point
    DoubleElem a_plus(const PointLabel& x, int d) const;
    DoubleElem a_minus(const PointLabel& x, int d) const;
};

// K^alpha -> K^{-rank(alpha)} (the degree-direction characters are
// trivial on P^1 since Pic^0 = 0); d(lambda) tags are untouched
DoubleElem restricted_identify(const DoubleElem& x, const std::vector<std::pair<DKey, KClass>>&
                                                        pending_alpha = {});

// Theorem-level suites
Report verify_thm65(AutoP1& a, const std::string& rel, int range, const Window& w);
Report verify_thm67(AutoP1& a, const std::string& rel, int range, const Window& w);
// [a^+_{x,d}, a^-_{x,d'}] in the windowed Heisenberg double
DoubleElem boson_commutator(AutoP1& a, const PointLabel& x, int d, int dprime, const Window& w);

// tensor square Heis (x) HeisCheck, used by the Drinfeld-double layer
struct TKey {
    DKey l, r;
    auto operator<=>(const TKey&) const = default;
};
class TDoubleElem {
    std::map<TKey, Scalar> terms_;
    long long q_ = 0;

public:
    TDoubleElem() = default;
    explicit TDoubleElem(long long q) : q_(q) {}
    long long q() const { return q_; }
    const std::map<TKey, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add(const TKey& k, const Scalar& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(k);
        if (it == terms_.end()) terms_[k] = c;
        else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    friend TDoubleElem operator+(const TDoubleElem& a, const TDoubleElem& b) {
        TDoubleElem r = a;
        if (r.q_ == 0) r.q_ = b.q_;
        for (auto& [k, c] : b.terms_) r.add(k, c);
        return r;
    }
    friend TDoubleElem operator-(const TDoubleElem& a, const TDoubleElem& b) {
        TDoubleElem r = a;
        if (r.q_ == 0) r.q_ = b.q_;
        for (auto& [k, c] : b.terms_) r.add(k, -c);
        return r;
    }
    friend TDoubleElem operator*(const Scalar& s, const TDoubleElem& a) {
        TDoubleElem r(a.q_);
        for (auto& [k, c] : a.terms_) r.add(k, s * c);
        return r;
    }
    friend bool operator==(const TDoubleElem& a, const TDoubleElem& b) {
        return a.terms_ == b.terms_;
    }
    static TDoubleElem tensor(const DoubleElem& a, const DoubleElem& b);
};

} // namespace hallq
