#pragma once

#include "hallq/algelem.hpp"
#include "hallq/report.hpp"

namespace hallq {

enum class SymBasis { Monomial, PowerSum, Elementary, HallLittlewood };

// Symmetric function in finitely many variables (N >= weight gives the
// stable coefficients). Conversions between bases are exact.
struct SymFn {
    SymBasis basis = SymBasis::Monomial;
    Scalar t;  // Hall-Littlewood parameter, meaningful for that basis
    std::map<Partition, Scalar> coeffs;
    int nvars = -1; // -1: stable

    long long q() const { return t.q() ? t.q() : (coeffs.empty() ? 0 : coeffs.begin()->second.q()); }
    void add(const Partition& p, const Scalar& c) {
        if (c.is_zero()) return;
        auto it = coeffs.find(p);
        if (it == coeffs.end()) coeffs[p] = c;
        else {
            it->second += c;
            if (it->second.is_zero()) coeffs.erase(it);
        }
    }
    friend bool operator==(const SymFn& a, const SymFn& b) {
        return a.basis == b.basis && a.coeffs == b.coeffs;
    }
};

// dense-enough multivariate polynomials, used internally and by tests
using Mono = std::vector<int>;
using MPoly = std::map<Mono, Scalar>;

MPoly mp_mul(const MPoly& a, const MPoly& b, int max_total_deg = -1);
MPoly mp_add(const MPoly& a, const MPoly& b);
void mp_addto(MPoly& a, const Mono& m, const Scalar& c);
Scalar mp_eval(const MPoly& p, const std::vector<Scalar>& xs, long long q);

class SymToolkit {
    long long q_;

public:
    explicit SymToolkit(long long q) : q_(q) {}
    long long q() const { return q_; }

    // P_mu(x_1..x_N; t) by direct symmetrization (antisymmetrize
    // x^mu prod_{i<j}(x_i - t x_j), divide by the Vandermonde and v_mu(t))
    SymFn hl_expand(const Partition& mu, int N, const Scalar& t) const;

    // b_mu(t) = prod_k phi_{m_k(mu)}(t)
    Scalar b_factor(const Partition& mu, const Scalar& t) const;

    // Macdonald's t-deformed pairing: (p_a, p_b) = delta z_a prod 1/(1-t^{a_i})
    Scalar macdonald_pair(const SymFn& f, const SymFn& g, const Scalar& t) const;

    // Ch: [F_{x,mu}] -> qx^{-n(mu)} P_mu(z; 1/qx), extended linearly
    SymFn ch_map(const AlgElem& x, long long qx) const;

    Report cauchy_check(const Scalar& t, int maxWeight, int N) const;

    // conversions / products (exact)
    SymFn to_monomial(const SymFn& f, int N) const;
    SymFn to_power_sum(const SymFn& f, int N) const;
    SymFn product(const SymFn& f, const SymFn& g, int N) const;

    // explicit polynomial realization in N variables
    MPoly realize(const SymFn& f, int N) const;
    SymFn monomials_of(const MPoly& p, int N) const;
};

} // namespace hallq
