#include "hallq/symfun.hpp"

#include <algorithm>
#include <set>

#include "hallq/errors.hpp"

namespace hallq {

void mp_addto(MPoly& a, const Mono& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = a.find(m);
    if (it == a.end()) a[m] = c;
    else {
        it->second += c;
        if (it->second.is_zero()) a.erase(it);
    }
}

MPoly mp_add(const MPoly& a, const MPoly& b) {
    MPoly r = a;
    for (auto& [m, c] : b) mp_addto(r, m, c);
    return r;
}

MPoly mp_mul(const MPoly& a, const MPoly& b, int max_total_deg) {
    MPoly r;
    for (auto& [m1, c1] : a)
        for (auto& [m2, c2] : b) {
            Mono m(std::max(m1.size(), m2.size()), 0);
            int tot = 0;
            for (size_t i = 0; i < m.size(); ++i) {
                m[i] = (i < m1.size() ? m1[i] : 0) + (i < m2.size() ? m2[i] : 0);
                tot += m[i];
            }
            if (max_total_deg >= 0 && tot > max_total_deg) continue;
            mp_addto(r, m, c1 * c2);
        }
    return r;
}

Scalar mp_eval(const MPoly& p, const std::vector<Scalar>& xs, long long q) {
    Scalar s(q);
    for (auto& [m, c] : p) {
        Scalar v = c;
        for (size_t i = 0; i < m.size(); ++i)
            for (int k = 0; k < m[i]; ++k) v *= xs[i];
        s += v;
    }
    return s;
}

namespace {

// phi_m(t) = prod_{j=1..m}(1 - t^j)
Scalar phi(int m, const Scalar& t) {
    Scalar one = Scalar::integer(1, t.q());
    Scalar r = one;
    Scalar tj = one;
    for (int j = 1; j <= m; ++j) {
        tj *= t;
        r *= (one - tj);
    }
    return r;
}

// v_m(t) = prod_{j=1..m} (1-t^j)/(1-t)
Scalar vfac(int m, const Scalar& t) {
    Scalar one = Scalar::integer(1, t.q());
    Scalar r = one;
    Scalar tj = one;
    for (int j = 1; j <= m; ++j) {
        tj *= t;
        r *= (one - tj) / (one - t);
    }
    return r;
}

// divide P exactly by (x_i - x_j), P viewed as univariate in x_i
MPoly div_by_diff(const MPoly& p, size_t i, size_t j, long long q) {
    // slices by x_i-degree
    std::map<int, MPoly> slices;
    int dmax = 0;
    for (auto& [m, c] : p) {
        int d = i < m.size() ? m[i] : 0;
        Mono rest = m;
        if (i < rest.size()) rest[i] = 0;
        mp_addto(slices[d], rest, c);
        dmax = std::max(dmax, d);
    }
    // Q_{k-1} = P_k + x_j Q_k, from the top; exactness means P_0 = -x_j Q_0
    std::map<int, MPoly> qsl;
    MPoly cur; // Q_{dmax} = 0
    for (int k = dmax; k >= 1; --k) {
        MPoly xjcur;
        for (auto& [m, c] : cur) {
            Mono m2 = m;
            if (m2.size() <= j) m2.resize(j + 1, 0);
            m2[j] += 1;
            mp_addto(xjcur, m2, c);
        }
        MPoly qk = mp_add(slices.count(k) ? slices[k] : MPoly{}, xjcur);
        qsl[k - 1] = qk;
        cur = qk;
    }
    {
        MPoly rem = slices.count(0) ? slices[0] : MPoly{};
        for (auto& [m, c] : cur) {
            Mono m2 = m;
            if (m2.size() <= j) m2.resize(j + 1, 0);
            m2[j] += 1;
            mp_addto(rem, m2, c);
        }
        if (!rem.empty()) throw error("div_by_diff: not divisible");
    }
    (void)q;
    MPoly out;
    for (auto& [k, sl] : qsl)
        for (auto& [m, c] : sl) {
            Mono m2 = m;
            if (m2.size() <= i) m2.resize(i + 1, 0);
            m2[i] += k;
            mp_addto(out, m2, c);
        }
    return out;
}

Partition sorted_partition(const Mono& m) {
    std::vector<int> v;
    for (int e : m)
        if (e) v.push_back(e);
    std::sort(v.begin(), v.end(), std::greater<int>());
    return Partition(v);
}

bool is_dominant(const Mono& m, int N) {
    for (int i = 0; i + 1 < N; ++i) {
        int a = i < (int)m.size() ? m[(size_t)i] : 0;
        int b = i + 1 < (int)m.size() ? m[(size_t)i + 1] : 0;
        if (a < b) return false;
    }
    return true;
}


} // namespace

SymFn SymToolkit::hl_expand(const Partition& mu, int N, const Scalar& t) const {
    if (N < mu.length()) throw error("hl_expand: need N >= length(mu)");
    long long q = t.q();
    Scalar one = Scalar::integer(1, q);

    // numerator x^mu prod_{i<j} (x_i - t x_j)
    MPoly P;
    {
        Mono m(N, 0);
        for (int i = 0; i < mu.length(); ++i) m[(size_t)i] = mu.parts[(size_t)i];
        P[m] = one;
    }
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j) {
            MPoly f;
            Mono mi(N, 0), mj(N, 0);
            mi[(size_t)i] = 1;
            mj[(size_t)j] = 1;
            f[mi] = one;
            f[mj] = -t;
            P = mp_mul(P, f);
        }

    // antisymmetrize: collapse each monomial to its sorted representative
    // with the sign of the sorting permutation (repeated exponents die),
    // then expand the alternants fully so the Vandermonde division is a
    // genuine polynomial division
    MPoly dominant;
    for (auto& [m, c] : P) {
        Mono s = m;
        s.resize((size_t)N, 0);
        int sign = 1;
        bool dup = false;
        for (size_t a = 0; a < s.size() && !dup; ++a)
            for (size_t b = a + 1; b < s.size(); ++b) {
                if (s[a] == s[b]) {
                    dup = true;
                    break;
                }
                if (s[a] < s[b]) {
                    std::swap(s[a], s[b]);
                    sign = -sign;
                }
            }
        if (dup) continue;
        mp_addto(dominant, s, sign > 0 ? c : -c);
    }
    MPoly anti;
    {
        std::vector<int> perm((size_t)N);
        for (auto& [m, c] : dominant) {
            for (int i = 0; i < N; ++i) perm[(size_t)i] = i;
            // all permutations of the strict exponent vector
            std::sort(perm.begin(), perm.end());
            do {
                // sign of perm
                int sign = 1;
                std::vector<int> pp = perm;
                for (int i = 0; i < N; ++i)
                    while (pp[(size_t)i] != i) {
                        std::swap(pp[(size_t)i], pp[(size_t)pp[(size_t)i]]);
                        sign = -sign;
                    }
                Mono m2((size_t)N, 0);
                for (int i = 0; i < N; ++i) m2[(size_t)i] = m[(size_t)perm[(size_t)i]];
                mp_addto(anti, m2, sign > 0 ? c : -c);
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
    }

    // divide by the Vandermonde prod_{i<j} (x_i - x_j)
    MPoly quo = anti;
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j) quo = div_by_diff(quo, (size_t)i, (size_t)j, q);

    // divide by v_mu(t), multiplicities including the zero parts
    Scalar v = one;
    {
        std::map<int, int> mult;
        for (int part : mu.parts) mult[part]++;
        mult[0] += N - mu.length();
        for (auto& [part, m] : mult) v *= vfac(m, t);
    }
    SymFn out;
    out.basis = SymBasis::Monomial;
    out.nvars = N;
    out.t = t;
    Scalar vi = v.inv();
    for (auto& [m, c] : quo) {
        if (!is_dominant(m, N)) continue; // read coefficients off dominant reps
        out.add(sorted_partition(m), c * vi);
    }
    return out;
}

Scalar SymToolkit::b_factor(const Partition& mu, const Scalar& t) const {
    Scalar r = Scalar::integer(1, t.q());
    for (int k = 1; k <= mu.biggest(); ++k) r *= phi(mu.mult(k), t);
    return r;
}

MPoly SymToolkit::realize(const SymFn& f, int N) const {
    long long q = f.q() ? f.q() : q_;
    Scalar one = Scalar::integer(1, q);
    MPoly out;
    switch (f.basis) {
        case SymBasis::Monomial: {
            for (auto& [lam, c] : f.coeffs) {
                // sum of distinct permutations of the exponent vector
                Mono base(lam.parts.begin(), lam.parts.end());
                base.resize((size_t)N, 0);
                std::sort(base.begin(), base.end());
                if (lam.length() > N) throw error("realize: too few variables");
                do {
                    mp_addto(out, base, c);
                } while (std::next_permutation(base.begin(), base.end()));
            }
            return out;
        }
        case SymBasis::PowerSum: {
            for (auto& [lam, c] : f.coeffs) {
                MPoly term;
                term[Mono((size_t)N, 0)] = one;
                for (int part : lam.parts) {
                    MPoly pd;
                    for (int i = 0; i < N; ++i) {
                        Mono m((size_t)N, 0);
                        m[(size_t)i] = part;
                        pd[m] = one;
                    }
                    term = mp_mul(term, pd);
                }
                for (auto& [m, cc] : term) mp_addto(out, m, c * cc);
            }
            return out;
        }
        case SymBasis::Elementary: {
            for (auto& [lam, c] : f.coeffs) {
                MPoly term;
                term[Mono((size_t)N, 0)] = one;
                for (int part : lam.parts) {
                    MPoly ed;
                    // e_part = sum over part-subsets
                    std::vector<int> idx(part);
                    auto rec = [&](auto&& self, int pos, int start) -> void {
                        if (pos == part) {
                            Mono m((size_t)N, 0);
                            for (int i : idx) m[(size_t)i] = 1;
                            ed[m] = one;
                            return;
                        }
                        for (int i = start; i < N; ++i) {
                            idx[(size_t)pos] = i;
                            self(self, pos + 1, i + 1);
                        }
                    };
                    if (part > N) throw error("realize: e_part with part > N");
                    rec(rec, 0, 0);
                    term = mp_mul(term, ed);
                }
                for (auto& [m, cc] : term) mp_addto(out, m, c * cc);
            }
            return out;
        }
        case SymBasis::HallLittlewood: {
            for (auto& [lam, c] : f.coeffs) {
                SymFn pm = hl_expand(lam, N, f.t);
                MPoly mono = realize(pm, N);
                for (auto& [m, cc] : mono) mp_addto(out, m, c * cc);
            }
            return out;
        }
    }
    return out;
}

SymFn SymToolkit::monomials_of(const MPoly& p, int N) const {
    SymFn out;
    out.basis = SymBasis::Monomial;
    out.nvars = N;
    for (auto& [m, c] : p) {
        if (!is_dominant(m, N)) continue;
        out.add(sorted_partition(m), c);
    }
    return out;
}

SymFn SymToolkit::to_monomial(const SymFn& f, int N) const {
    if (f.basis == SymBasis::Monomial) return f;
    return monomials_of(realize(f, N), N);
}

SymFn SymToolkit::to_power_sum(const SymFn& f, int N) const {
    if (f.basis == SymBasis::PowerSum) return f;
    SymFn mono = to_monomial(f, N);
    long long q = f.q() ? f.q() : q_;
    // weights present
    std::set<int> weights;
    for (auto& [lam, c] : mono.coeffs) weights.insert(lam.weight());
    SymFn out;
    out.basis = SymBasis::PowerSum;
    out.nvars = f.nvars;
    out.t = f.t;
    for (int w : weights) {
        if (w > N) throw error("to_power_sum: need N >= weight");
        auto parts = Partition::all_of_weight(w);
        // matrix of p_lambda in the m basis
        std::vector<std::vector<Scalar>> A(parts.size(),
                                           std::vector<Scalar>(parts.size(), Scalar(q)));
        for (size_t j = 0; j < parts.size(); ++j) {
            SymFn pj;
            pj.basis = SymBasis::PowerSum;
            pj.coeffs[parts[j]] = Scalar::integer(1, q);
            SymFn pm = to_monomial(pj, N);
            for (size_t i = 0; i < parts.size(); ++i) A[i][j] = pm.coeffs.count(parts[i])
                                                                  ? pm.coeffs[parts[i]]
                                                                  : Scalar(q);
        }
        std::vector<Scalar> b(parts.size(), Scalar(q));
        for (size_t i = 0; i < parts.size(); ++i)
            if (mono.coeffs.count(parts[i])) b[i] = mono.coeffs[parts[i]];
        // solve A x = b
        size_t n = parts.size();
        for (size_t col = 0, row = 0; col < n && row < n; ++col) {
            size_t piv = row;
            while (piv < n && A[piv][col].is_zero()) ++piv;
            if (piv == n) continue;
            std::swap(A[piv], A[row]);
            std::swap(b[piv], b[row]);
            Scalar inv = A[row][col].inv();
            for (size_t j2 = 0; j2 < n; ++j2) A[row][j2] *= inv;
            b[row] *= inv;
            for (size_t i2 = 0; i2 < n; ++i2) {
                if (i2 == row || A[i2][col].is_zero()) continue;
                Scalar f2 = A[i2][col];
                for (size_t j2 = 0; j2 < n; ++j2) A[i2][j2] -= f2 * A[row][j2];
                b[i2] -= f2 * b[row];
            }
            ++row;
        }
        for (size_t i = 0; i < n; ++i) out.add(parts[i], b[i]);
    }
    return out;
}

SymFn SymToolkit::product(const SymFn& f, const SymFn& g, int N) const {
    MPoly p = mp_mul(realize(f, N), realize(g, N));
    return monomials_of(p, N);
}

Scalar SymToolkit::macdonald_pair(const SymFn& f, const SymFn& g, const Scalar& t) const {
    long long q = t.q();
    int wmax = 0;
    for (auto& [lam, c] : f.coeffs) wmax = std::max(wmax, lam.weight());
    for (auto& [lam, c] : g.coeffs) wmax = std::max(wmax, lam.weight());
    int N = std::max(1, wmax);
    SymFn pf = to_power_sum(f, N), pg = to_power_sum(g, N);
    Scalar s(q);
    Scalar one = Scalar::integer(1, q);
    for (auto& [lam, cf] : pf.coeffs) {
        auto it = pg.coeffs.find(lam);
        if (it == pg.coeffs.end()) continue;
        // z_lambda prod 1/(1-t^{lambda_i})
        Scalar z = one;
        std::map<int, int> mult;
        for (int part : lam.parts) mult[part]++;
        for (auto& [part, m] : mult) {
            for (int i = 0; i < m; ++i) z *= Scalar::integer(part, q);
            for (int i = 2; i <= m; ++i) z *= Scalar::integer(i, q);
        }
        Scalar denom = one;
        for (int part : lam.parts) denom *= (one - pow(t, part));
        s += cf * it->second * z / denom;
    }
    return s;
}

SymFn SymToolkit::ch_map(const AlgElem& x, long long qx) const {
    long long q = x.q();
    Scalar t = Scalar(Rational(1, bigint(qx)), q); // 1/qx
    SymFn out;
    out.basis = SymBasis::HallLittlewood;
    out.t = t;
    for (auto& [k, c] : x.terms()) {
        if (!k.kappa.is_zero()) throw error("ch_map: object terms only");
        if (k.obj.tag != BackendTag::TorsionLocal) throw error("ch_map: torsion-local backend only");
        const Partition& mu = k.obj.lam;
        Scalar factor = Scalar(pow(Rational(1, bigint(qx)), mu.n_stat()), q);
        out.add(mu, c * factor);
    }
    return out;
}

Report SymToolkit::cauchy_check(const Scalar& t, int maxWeight, int N) const {
    long long q = t.q();
    Scalar one = Scalar::integer(1, q);
    Report rep{"symfun", "cauchy-4.1.13", {}};
    // variables: z_0..z_{N-1}, w_0..w_{N-1}; truncate at z-weight <= maxWeight
    auto truncate = [&](const MPoly& p) {
        MPoly r;
        for (auto& [m, c] : p) {
            int zdeg = 0;
            for (int i = 0; i < N && i < (int)m.size(); ++i) zdeg += m[(size_t)i];
            if (zdeg <= maxWeight) mp_addto(r, m, c);
        }
        return r;
    };
    // rhs: prod_{ij} (1 + (1-t) sum_{k>=1} (z_i w_j)^k)
    MPoly rhs;
    rhs[Mono((size_t)(2 * N), 0)] = one;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            MPoly f;
            f[Mono((size_t)(2 * N), 0)] = one;
            for (int k = 1; k <= maxWeight; ++k) {
                Mono m((size_t)(2 * N), 0);
                m[(size_t)i] = k;
                m[(size_t)(N + j)] = k;
                f[m] = one - t;
            }
            rhs = truncate(mp_mul(rhs, f));
        }
    // lhs: sum_mu b_mu P_mu(z) P_mu(w)
    MPoly lhs;
    lhs[Mono((size_t)(2 * N), 0)] = one;
    {
        MPoly acc;
        mp_addto(acc, Mono((size_t)(2 * N), 0), one);
        lhs = MPoly{};
        mp_addto(lhs, Mono((size_t)(2 * N), 0), one);
        lhs = MPoly{};
        for (int wgt = 0; wgt <= maxWeight; ++wgt) {
            for (auto& mu : Partition::all_of_weight(wgt)) {
                if (mu.length() > N) continue;
                SymFn pmu = hl_expand(mu, N, t);
                MPoly pz = realize(pmu, N);
                // same polynomial in the w block
                MPoly pw;
                for (auto& [m, c] : pz) {
                    Mono m2((size_t)(2 * N), 0);
                    for (int i = 0; i < N && i < (int)m.size(); ++i) m2[(size_t)(N + i)] = m[(size_t)i];
                    mp_addto(pw, m2, c);
                }
                MPoly pz2;
                for (auto& [m, c] : pz) {
                    Mono m2((size_t)(2 * N), 0);
                    for (int i = 0; i < N && i < (int)m.size(); ++i) m2[(size_t)i] = m[(size_t)i];
                    mp_addto(pz2, m2, c);
                }
                Scalar b = b_factor(mu, t);
                MPoly term = mp_mul(pz2, pw);
                for (auto& [m, c] : term) mp_addto(lhs, m, b * c);
            }
        }
    }
    bool pass = truncate(lhs) == truncate(rhs);
    rep.add("weight<=" + std::to_string(maxWeight) + " N=" + std::to_string(N), pass);
    return rep;
}

} // namespace hallq
