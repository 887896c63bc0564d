#pragma once

#include "hallq/hall_ops.hpp"
#include "hallq/ratfn.hpp"
#include "hallq/recurrence.hpp"

namespace hallq {

// Unramified automorphic form of rank n on P^1: finitely supported
// function on splitting types.
struct AutFn {
    int rank = 1;
    std::map<ObjLabel, Scalar> vals;

    Scalar at(const ObjLabel& v, long long q) const {
        auto it = vals.find(v);
        return it == vals.end() ? Scalar(q) : it->second;
    }
    void add(const ObjLabel& v, const Scalar& c) {
        if (c.is_zero()) return;
        auto it = vals.find(v);
        if (it == vals.end()) vals[v] = c;
        else {
            it->second += c;
            if (it->second.is_zero()) vals.erase(it);
        }
    }
    friend bool operator==(const AutFn& a, const AutFn& b) { return a.vals == b.vals; }
};

// Everything automorphic on X = P^1: the zeta function, Hecke and dual
// Hecke operators, Eisenstein series as exact rational functions, the
// generating-function coefficients E_d, psi_d, a_d, and the executable
// checks of the commutation/coproduct/pairing identities they satisfy.
class AutoP1 {
    Backend be_;
    HallAlgebra H_;
    mutable std::map<int, AlgElem> psi_cache_, a_cache_;
    mutable std::mutex mutex_;

public:
    explicit AutoP1(int q) : be_(Backend::coh_p1(q)), H_(be_) {}
    long long q() const { return be_.q(); }
    const Backend& backend() const { return be_; }
    const HallAlgebra& algebra() const { return H_; }

    // zeta_{P1}(t) = 1/((1-t)(1-qt))
    RationalFn zeta() const;
    // Euler-product truncation over points of degree <= maxdeg, as a series
    std::vector<Scalar> zeta_euler_series(int maxdeg, int nterms) const;
    long long closed_points(int d) const { return be_.coh().closed_points(d); }

    // the trivial-character cusp eigenform evaluated on a torsion class:
    // 1 on cyclic (divisor) types, 0 otherwise
    Scalar chi_f(const ObjLabel& torsion) const;

    AutFn hecke_apply(const ObjLabel& F, const AutFn& f) const;
    AutFn hecke_dual_apply(const ObjLabel& F, const AutFn& f) const;
    Scalar autfn_pair(const AutFn& f, const AutFn& g) const; // orbifold product
    AutFn dual_form(const AutFn& f) const;                   // f^D(V) = f(V*)

    struct Eisenstein {
        std::vector<std::pair<int, long long>> counts; // (a, N_a), descending a
        RationalFn fn;                                  // in w = (t2/t1)
        int amax;
    };
    Eisenstein eisenstein_series(const ObjLabel& v, int truncation) const;
    // exact rational form of the functional equation (3.4.3b) for P^1
    bool eisenstein_functional_equation(const ObjLabel& v, int truncation) const;

    AlgElem E_coeff(int d) const { return H_.basis(ObjLabel::coh_line(d)); }
    AlgElem psi_coeff(int d) const;
    AlgElem a_coeff(int d) const; // log psi

    // Theorem 3.3 relations, coefficientwise in a window
    Report verify_thm33(const std::string& relation, const Window& w, int range) const;
    Report verify_pairings(int range) const;
    Report verify_constant_term(int r, int range, const Window& w) const;
    Report commutator_ad_check(int dmax, int lrange, const Window& w) const;
    Report positivity_probe(int maxDegree) const;

    // kappa_d extracted from the zeta-ratio logarithm (the exact scalar
    // in [a_d, E_l] = kappa_d E_{l+d})
    Scalar kappa_from_zeta(int d) const;

    // series-log helper on scalar sequences
    static std::vector<Scalar> series_log(const std::vector<Scalar>& one_plus, long long q);
};

} // namespace hallq
