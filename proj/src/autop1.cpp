#include "hallq/autop1.hpp"

#include <algorithm>

namespace hallq {

RationalFn AutoP1::zeta() const {
    long long qq = q();
    LaurentPoly one = LaurentPoly::constant(Scalar::integer(1, qq));
    LaurentPoly t = LaurentPoly::monomial(Scalar::integer(1, qq), 1);
    return RationalFn(one, (one - t) * (one - Scalar::integer(qq, qq) * t));
}

std::vector<Scalar> AutoP1::zeta_euler_series(int maxdeg, int nterms) const {
    // prod_{deg x <= maxdeg} (1 - t^{deg x})^{-N_deg}
    long long qq = q();
    std::vector<Scalar> acc(nterms, Scalar(qq));
    acc[0] = Scalar::integer(1, qq);
    for (int d = 1; d <= maxdeg; ++d) {
        long long nd = closed_points(d);
        for (long long rep = 0; rep < nd; ++rep) {
            // multiply by 1/(1-t^d) = 1 + t^d + t^{2d} + ...
            std::vector<Scalar> next(nterms, Scalar(qq));
            for (int k = 0; k < nterms; ++k)
                for (int m = 0; m * d + k < nterms; ++m) next[(size_t)(k + m * d)] += acc[(size_t)k];
            acc = next;
        }
    }
    return acc;
}

Scalar AutoP1::chi_f(const ObjLabel& torsion) const {
    for (auto& [pt, lam] : torsion.tors)
        if (lam.length() > 1) return Scalar(q());
    return Scalar::integer(1, q());
}

AutFn AutoP1::hecke_apply(const ObjLabel& F, const AutFn& f) const {
    AutFn out;
    out.rank = f.rank;
    for (auto& [v, c] : f.vals) {
        AlgElem prod = H_.hall_mul(H_.basis(v), H_.basis(F));
        for (auto& [k, g] : prod.terms())
            if (k.obj.is_pure_bundle()) out.add(k.obj, c * g);
    }
    return out;
}

AutFn AutoP1::hecke_dual_apply(const ObjLabel& F, const AutFn& f) const {
    // (T^v_F f)(V) = sum_U g^U_{V,F} |Aut V|/|Aut U| f(U)
    AutFn out;
    out.rank = f.rank;
    int h = F.h0_torsion();
    for (auto& [u, cu] : f.vals) {
        // V runs over full-rank subsheaves of U with quotient F
        int lo = (u.bundle.empty() ? 0 : u.bundle.back()) - h;
        int hi = u.bundle.empty() ? 0 : u.bundle.front();
        long long degV = be_.class_of(u).deg() - h;
        std::vector<std::vector<int>> cands;
        if (f.rank == 1) {
            cands.push_back({(int)degV});
        } else {
            for (int x = hi; x >= lo; --x) {
                int y = (int)degV - x;
                if (y > x || y < lo) continue;
                cands.push_back({x, y});
            }
        }
        for (auto& bd : cands) {
            ObjLabel v = ObjLabel::coh_bundle(std::vector<int>(bd));
            long long g = be_.hall_number(v, F, u);
            if (!g) continue;
            Scalar w = Scalar(Rational(be_.aut_order(v)) / Rational(be_.aut_order(u)), q());
            out.add(v, cu * Scalar::integer(g, q()) * w);
        }
    }
    return out;
}

Scalar AutoP1::autfn_pair(const AutFn& f, const AutFn& g) const {
    Scalar s(q());
    for (auto& [v, c] : f.vals) {
        auto it = g.vals.find(v);
        if (it == g.vals.end()) continue;
        s += c * it->second * Scalar(Rational(1) / Rational(be_.aut_order(v)), q());
    }
    return s;
}

AutFn AutoP1::dual_form(const AutFn& f) const {
    AutFn out;
    out.rank = f.rank;
    for (auto& [v, c] : f.vals) out.add(be_.coh().dualize(v), c);
    return out;
}

AutoP1::Eisenstein AutoP1::eisenstein_series(const ObjLabel& v, int truncation) const {
    if (!v.is_pure_bundle() || v.bundle.size() != 2)
        throw unsupported_shape("eisenstein_series: rank-2 bundle expected");
    long long qq = q();
    int d = v.bundle[0] + v.bundle[1];
    int amax = v.bundle[0];
    Eisenstein out;
    out.amax = amax;
    std::vector<Scalar> terms;
    for (int a = amax; a >= truncation; --a) {
        // saturated O(a)-subbundles = coprime form pairs / (q-1)
        long long na = be_.coh().coprime_pair_count(v.bundle[0] - a, v.bundle[1] - a) / (qq - 1);
        out.counts.push_back({a, na});
        terms.push_back(Scalar::integer(na, qq));
    }
    // series in w = u^{-1} starting at a = amax; denominator degree <= 2
    out.fn = series_to_rational(terms, 2, "w");
    return out;
}

bool AutoP1::eisenstein_functional_equation(const ObjLabel& v, int truncation) const {
    // E_V(t1,t2) = q zeta(q t2/t1)/zeta(t2/t1) E_V(q t2, q^{-1} t1) as an
    // exact identity of rational functions in u = t1/t2:
    //   u^{amax} R(1/u) = q^{1-d} u^d (q^2/u)^{amax} z(q/u)/z(1/u) R(u/q^2)
    // with R the reconstructed series in w = 1/u.
    long long qq = q();
    Eisenstein e = eisenstein_series(v, truncation);
    int d = v.bundle[0] + v.bundle[1];
    Scalar one = Scalar::integer(1, qq);
    RationalFn R = e.fn;
    RationalFn lhs = R.substitute_scaled_power(one, -1); // R(1/u)
    lhs = lhs * RationalFn(LaurentPoly::monomial(one, e.amax, "w"));
    RationalFn z = zeta();
    RationalFn zq = z.substitute_scaled_power(Scalar::integer(qq, qq), -1); // zeta(q/u)
    RationalFn z1 = z.substitute_scaled_power(one, -1);                     // zeta(1/u)
    RationalFn rhs = R.substitute_scaled_power(Scalar(Rational(1, bigint(qq * qq)), qq), 1);
    rhs = rhs * (zq / z1);
    // q^{1-d} q^{2 amax} u^{d - amax}
    Scalar coef = Scalar(pow(Rational(qq), 1 - d + 2 * e.amax), qq);
    rhs = rhs * RationalFn(LaurentPoly::monomial(coef, d - e.amax, "w"));
    return lhs == rhs;
}

AlgElem AutoP1::psi_coeff(int d) const {
    {
        std::lock_guard<std::mutex> lk(mutex_);
        auto it = psi_cache_.find(d);
        if (it != psi_cache_.end()) return it->second;
    }
    AlgElem out(q());
    if (d == 0) {
        out = H_.one();
    } else {
        for (auto& t : be_.coh().torsion_labels_of_h0(d)) {
            Scalar chi = chi_f(t);
            if (chi.is_zero()) continue;
            out.add({KClass(), t}, chi * Scalar(Rational(be_.aut_order(t)), q()));
        }
    }
    std::lock_guard<std::mutex> lk(mutex_);
    psi_cache_[d] = out;
    return out;
}

AlgElem AutoP1::a_coeff(int d) const {
    if (d < 1) throw error("a_coeff: d >= 1");
    {
        std::lock_guard<std::mutex> lk(mutex_);
        auto it = a_cache_.find(d);
        if (it != a_cache_.end()) return it->second;
    }
    // d psi_d = sum_{j=1..d} j a_j psi_{d-j}  (torsion algebra is commutative)
    std::vector<AlgElem> a(d + 1, AlgElem(q()));
    for (int k = 1; k <= d; ++k) {
        AlgElem rhs = Scalar::integer(k, q()) * psi_coeff(k);
        for (int j = 1; j < k; ++j)
            rhs = rhs - Scalar::integer(j, q()) * H_.hall_mul(a[(size_t)j], psi_coeff(k - j));
        a[(size_t)k] = Scalar(Rational(1, k), q()) * rhs;
    }
    std::lock_guard<std::mutex> lk(mutex_);
    for (int k = 1; k <= d; ++k) a_cache_[k] = a[(size_t)k];
    return a[(size_t)d];
}

std::vector<Scalar> AutoP1::series_log(const std::vector<Scalar>& one_plus, long long q) {
    // log(1 + x(t)) with x = one_plus - 1: l_d = x_d - (1/d) sum j l_j x_{d-j}
    int n = (int)one_plus.size();
    std::vector<Scalar> l((size_t)n, Scalar(q));
    for (int k = 1; k < n; ++k) {
        Scalar rhs = Scalar::integer(k, q) * one_plus[(size_t)k];
        for (int j = 1; j < k; ++j) rhs -= Scalar::integer(j, q) * l[(size_t)j] * one_plus[(size_t)(k - j)];
        l[(size_t)k] = Scalar(Rational(1, k), q) * rhs;
    }
    return l;
}

Scalar AutoP1::kappa_from_zeta(int d) const {
    // [a(t2), E(t1)] expands to (sum_d kappa_d (t2/t1)^d) E(t1) with
    // kappa-series = log zeta(q^{-1/2} u) - log zeta(q^{1/2} u);
    // this is the exact content of the E-psi commutation specialized to P^1
    long long qq = q();
    int n = d + 2;
    auto zs = zeta().series(n);
    std::vector<Scalar> zneg((size_t)n, Scalar(qq)), zpos((size_t)n, Scalar(qq));
    for (int k = 0; k < n; ++k) {
        zneg[(size_t)k] = zs[(size_t)k] * Scalar::v_pow(-k, qq);
        zpos[(size_t)k] = zs[(size_t)k] * Scalar::v_pow(k, qq);
    }
    auto ln = series_log(zneg, qq);
    auto lp = series_log(zpos, qq);
    return ln[(size_t)d] - lp[(size_t)d];
}

} // namespace hallq
