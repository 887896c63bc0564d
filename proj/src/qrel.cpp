#include "hallq/qrel.hpp"

#include "hallq/autop1.hpp"

namespace hallq {

Scalar gauss_binomial(int m, int l, const Scalar& qParam) {
    if (l < 0 || l > m) return Scalar(qParam.q());
    Scalar one = Scalar::integer(1, qParam.q());
    // q-Pascal: [m,l] = [m-1,l-1] + q^l [m-1,l]
    std::vector<std::vector<Scalar>> tab((size_t)m + 1,
                                         std::vector<Scalar>((size_t)m + 1, Scalar(qParam.q())));
    for (int i = 0; i <= m; ++i) {
        tab[(size_t)i][0] = one;
        for (int j = 1; j <= i; ++j) {
            Scalar qj = pow(qParam, j);
            tab[(size_t)i][(size_t)j] =
                (j - 1 <= i - 1 ? tab[(size_t)(i - 1)][(size_t)(j - 1)] : Scalar(qParam.q())) +
                qj * (j <= i - 1 ? tab[(size_t)(i - 1)][(size_t)j] : Scalar(qParam.q()));
        }
    }
    return tab[(size_t)m][(size_t)l];
}

AlgElem serre_sum(const QuiverSpec& spec, int i, int j) {
    if (i == j) throw error("serre_check: i and j must be distinct vertices");
    Backend be = Backend::quiver(spec);
    HallAlgebra H(be);
    long long q = spec.q;
    int m = 1 - spec.cartan(i, j);
    AlgElem ei = H.basis(be.quiv().simple(i));
    AlgElem ej = H.basis(be.quiv().simple(j));
    Scalar qs = Scalar::integer(q, q);
    AlgElem acc(q);
    for (int l = 0; l <= m; ++l) {
        // balanced binomial: v^{-l(m-l)} [m,l]_q
        Scalar coef = Scalar::v_pow(-(long long)l * (m - l), q) * gauss_binomial(m, l, qs);
        if (l % 2) coef = -coef;
        AlgElem term = ej;
        for (int k = 0; k < l; ++k) term = H.ringel_mul(ei, term);
        for (int k = 0; k < m - l; ++k) term = H.ringel_mul(term, ei);
        // term currently equals e_i^l e_j e_i^{m-l}
        acc = acc + coef * term;
    }
    return acc;
}

Report serre_check(const QuiverSpec& spec, int i, int j) {
    Report rep{"qrel", "serre-5.2.9", {}};
    AlgElem s = serre_sum(spec, i, j);
    rep.add("quiver q=" + std::to_string(spec.q) + " (i,j)=(" + std::to_string(i) + "," +
                std::to_string(j) + ")",
            s.is_zero(), s.str(), "0");
    return rep;
}

Report drinfeld_quadratic_check(int range, int q) {
    Report rep{"qrel", "drinfeld-5.2.3", {}};
    AutoP1 A(q);
    Window w;
    w.minSummandDeg = -(range + 2);
    w.maxSummandDeg = range + 2;
    // the coefficientwise functional-equation form
    auto sub = A.verify_thm33("e-e", w, range);
    for (auto& c : sub.cases) rep.cases.push_back(c);
    // abstract quadratic form under x(n) -> [O(n)]
    const HallAlgebra& H = A.algebra();
    Scalar qs = Scalar::integer(q, q);
    auto x = [&](int n) { return A.E_coeff(n); };
    for (int a = -range; a <= range; ++a)
        for (int b = -range; b <= range; ++b) {
            AlgElem lhs = H.ringel_mul(x(a), x(b + 1)) - qs * H.ringel_mul(x(a + 1), x(b));
            AlgElem rhs = qs * H.ringel_mul(x(b + 1), x(a)) - H.ringel_mul(x(b), x(a + 1));
            rep.add("x(a)x(b+1): (a,b)=(" + std::to_string(a) + "," + std::to_string(b) + ")",
                    lhs == rhs);
        }
    // a = b collapse: x(a)x(a+1) = q x(a+1)x(a)
    for (int a = -range; a <= range; ++a)
        rep.add("collapse a=" + std::to_string(a),
                H.ringel_mul(x(a), x(a + 1)) == qs * H.ringel_mul(x(a + 1), x(a)));
    return rep;
}

Report monomial_basis_check(int d, const Window& w, int q) {
    Report rep{"qrel", "monomial-basis-5.2.1", {}};
    AutoP1 A(q);
    const HallAlgebra& H = A.algebra();
    // ordered monomials [O(i1)]^{m1} * ... with strictly decreasing i,
    // total rank 2, degree d, all i in the window
    struct Mono {
        int hi, lo; // hi > lo, or hi == lo for the square
    };
    std::vector<Mono> monos;
    for (int hi = w.maxSummandDeg; 2 * hi >= d; --hi) {
        int lo = d - hi;
        if (lo < w.minSummandDeg || lo > hi) continue;
        monos.push_back({hi, lo});
    }
    // bundles of degree d in the window
    std::vector<ObjLabel> bundles;
    for (int x = w.maxSummandDeg; 2 * x >= d; --x) {
        int y = d - x;
        if (y < w.minSummandDeg || y > x) continue;
        bundles.push_back(ObjLabel::coh_bundle({x, y}));
    }
    rep.add("count monomials = count bundles (" + std::to_string(monos.size()) + ")",
            monos.size() == bundles.size());
    // expansion matrix: triangular against the bundle basis ordered by
    // descending top summand, with invertible diagonal
    std::vector<std::vector<Scalar>> M(monos.size(),
                                       std::vector<Scalar>(bundles.size(), Scalar(q)));
    for (size_t r = 0; r < monos.size(); ++r) {
        AlgElem e = H.ringel_mul(A.E_coeff(monos[r].hi), A.E_coeff(monos[r].lo));
        for (auto& [k, c] : e.terms()) {
            bool found = false;
            for (size_t cidx = 0; cidx < bundles.size(); ++cidx)
                if (k.obj == bundles[cidx]) {
                    M[r][cidx] = c;
                    found = true;
                }
            if (!found)
                rep.add("stray term " + k.obj.str(), false, c.str(), "inside window basis");
        }
    }
    bool triangular = true, unit_diag = true;
    for (size_t r = 0; r < monos.size() && r < bundles.size(); ++r) {
        for (size_t cidx = 0; cidx < r; ++cidx)
            if (!M[r][cidx].is_zero()) triangular = false;
        if (M[r][r].is_zero()) unit_diag = false;
    }
    rep.add("triangular", triangular);
    rep.add("invertible leading coefficients", unit_diag);
    // determinant nonzero (exact)
    Scalar det = Scalar::integer(1, q);
    {
        auto Mc = M;
        size_t n = std::min(monos.size(), bundles.size());
        bool zero = monos.size() != bundles.size();
        for (size_t c = 0; c < n && !zero; ++c) {
            size_t piv = c;
            while (piv < n && Mc[piv][c].is_zero()) ++piv;
            if (piv == n) {
                zero = true;
                break;
            }
            if (piv != c) {
                std::swap(Mc[piv], Mc[c]);
                det = -det;
            }
            det *= Mc[c][c];
            Scalar inv = Mc[c][c].inv();
            for (size_t i2 = c + 1; i2 < n; ++i2) {
                Scalar f = Mc[i2][c] * inv;
                for (size_t j2 = c; j2 < n; ++j2) Mc[i2][j2] -= f * Mc[c][j2];
            }
        }
        if (zero) det = Scalar(q);
    }
    rep.add("determinant nonzero", !det.is_zero(), det.str(), "!= 0");
    return rep;
}

} // namespace hallq
