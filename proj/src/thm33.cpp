#include <algorithm>
#include <set>

#include "hallq/autop1.hpp"

namespace hallq {

namespace {

// p_Bun: kill torsion-carrying objects, set c = 1 (keep the K-power)
BasisKey project_bun(const BasisKey& k, bool& keep) {
    keep = k.obj.tors.empty();
    BasisKey out;
    out.kappa = KClass({k.kappa.rank()});
    out.obj = k.obj;
    return out;
}

long long ipow_ll(long long b, int e) {
    long long r = 1;
    while (e--) r *= b;
    return r;
}

} // namespace

Report AutoP1::verify_thm33(const std::string& relation, const Window& w, int range) const {
    long long qq = q();
    Scalar one = Scalar::integer(1, qq);
    Report rep{"autop1", "thm33-" + relation, {}};

    if (relation == "e-e") {
        // (t1 - q t2) E(t1) E(t2) = (q t1 - t2) E(t2) E(t1), coefficientwise:
        // E_{i-1}*E_j - q E_i*E_{j-1} = q E_j*E_{i-1} - E_{j-1}*E_i
        Scalar qs = Scalar::integer(qq, qq);
        for (int i = -range; i <= range; ++i)
            for (int j = -range; j <= range; ++j) {
                AlgElem lhs = H_.ringel_mul(E_coeff(i - 1), E_coeff(j)) -
                              qs * H_.ringel_mul(E_coeff(i), E_coeff(j - 1));
                AlgElem rhs = qs * H_.ringel_mul(E_coeff(j), E_coeff(i - 1)) -
                              H_.ringel_mul(E_coeff(j - 1), E_coeff(i));
                bool pass = lhs == rhs;
                std::string key = "(i,j)=(" + std::to_string(i) + "," + std::to_string(j) + ")";
                if (pass) rep.add(key, true);
                else {
                    AlgElem diff = lhs - rhs;
                    auto& [dk, dc] = *diff.terms().begin();
                    rep.add(key + " at " + dk.str(), false, lhs.coeff(dk).str(),
                            rhs.coeff(dk).str());
                }
            }
        return rep;
    }

    if (relation == "e-psi") {
        // (t1 - q^{3/2} t2) E(t1) psi(t2) = (t1 - q^{-1/2} t2) psi(t2) E(t1)
        Scalar q32 = Scalar::v_pow(3, qq), qm12 = Scalar::v_pow(-1, qq);
        int jmax = std::min(range, w.maxTorsionLength);
        for (int i = -range; i <= range; ++i)
            for (int j = 0; j <= jmax; ++j) {
                AlgElem lhs = H_.ringel_mul(E_coeff(i - 1), psi_coeff(j)) -
                              q32 * (j >= 1 ? H_.ringel_mul(E_coeff(i), psi_coeff(j - 1))
                                            : H_.zero());
                AlgElem rhs = H_.ringel_mul(psi_coeff(j), E_coeff(i - 1)) -
                              qm12 * (j >= 1 ? H_.ringel_mul(psi_coeff(j - 1), E_coeff(i))
                                             : H_.zero());
                bool pass = lhs == rhs;
                std::string key = "(i,j)=(" + std::to_string(i) + "," + std::to_string(j) + ")";
                if (pass) rep.add(key, true);
                else {
                    AlgElem diff = lhs - rhs;
                    auto& [dk, dc] = *diff.terms().begin();
                    rep.add(key + " at " + dk.str(), false, lhs.coeff(dk).str(),
                            rhs.coeff(dk).str());
                }
            }
        return rep;
    }

    if (relation == "copsi") {
        // Delta psi_d = sum_{a+b=d} (psi_a (x) c^a)(1 (x) psi_b)
        for (int d = 0; d <= range; ++d) {
            TensorElem lhs = H_.coproduct(psi_coeff(d), w);
            TensorElem rhs(qq);
            for (int a = 0; a + 0 <= d; ++a) {
                int b = d - a;
                AlgElem pa = psi_coeff(a), pb = psi_coeff(b);
                for (auto& [k1, c1] : pa.terms())
                    for (auto& [k2, c2] : pb.terms())
                        rhs.add({{KClass(), k1.obj}, {KClass::sheaf(0, a), k2.obj}}, c1 * c2);
            }
            rep.add("d=" + std::to_string(d), lhs == rhs);
        }
        return rep;
    }

    if (relation == "coE") {
        // Delta E_d = 1 (x) E_d + sum_{a+b=d} q^{-b/2} [O(a)] (x) K_{(1,a)} psi_b,
        // both sides truncated to labels inside the window
        for (int d = -range; d <= range; ++d) {
            if (d > w.maxSummandDeg) continue;
            TensorElem lhs = H_.coproduct(E_coeff(d), w);
            TensorElem rhs(qq);
            rhs.add({{KClass(), be_.zero()}, {KClass(), ObjLabel::coh_line(d)}}, one);
            for (int a = d; a >= w.minSummandDeg; --a) {
                int b = d - a;
                if (b < 0 || b > w.maxTorsionLength) continue;
                Scalar coef = Scalar::v_pow(-b, qq);
                AlgElem pb = psi_coeff(b);
                for (auto& [k2, c2] : pb.terms())
                    rhs.add({{KClass(), ObjLabel::coh_line(a)}, {KClass::sheaf(1, a), k2.obj}},
                            coef * c2);
            }
            rep.add("d=" + std::to_string(d), lhs == rhs);
        }
        return rep;
    }

    if (relation == "antipode") {
        // S(psi(t)) = psi(c^{-1} t)^{-1} exactly; S(E(t)) as the matched
        // window truncation of -E(c^{-1}t) psi(q^{-1/2}t)^{-1} K^{-1}.
        // The truncation depth is set by the window's torsion cap.
        int D = w.maxTorsionLength;
        // X = inverse series of psi(c^{-1} t)
        std::vector<AlgElem> psic, X((size_t)D + 1, AlgElem(qq));
        for (int d2 = 0; d2 <= D; ++d2)
            psic.push_back(H_.b_mul(H_.cartan(KClass::sheaf(0, -d2)), psi_coeff(d2)));
        X[0] = H_.one();
        for (int d2 = 1; d2 <= D; ++d2) {
            AlgElem s(qq);
            for (int j = 1; j <= d2; ++j) s = s + H_.b_mul(psic[(size_t)j], X[(size_t)(d2 - j)]);
            X[(size_t)d2] = -s;
        }
        for (int d2 = 1; d2 <= D; ++d2) {
            AlgElem lhs = H_.antipode(psi_coeff(d2), w);
            rep.add("S(psi_" + std::to_string(d2) + ")", lhs == X[(size_t)d2], lhs.str(),
                    X[(size_t)d2].str());
            rep.add("flag S(psi_" + std::to_string(d2) + ")",
                    H_.antipode_flag(psi_coeff(d2), w) == X[(size_t)d2]);
        }
        // E part: inverse series of psi(q^{-1/2} c^{-1} t); the central
        // decoration c^{-b} is forced by matching the Cartan word
        // K^{-1}_{(1,d)} of the flag sum (the series form suppresses it).
        // Matched truncation: the window caps each inverse-series step
        // (generator degree <= maxTorsionLength), not the total depth.
        int Dtot = range - w.minSummandDeg;
        std::vector<AlgElem> psiq, Y((size_t)Dtot + 1, AlgElem(qq));
        for (int d2 = 0; d2 <= std::min(D, Dtot); ++d2)
            psiq.push_back(Scalar::v_pow(-d2, qq) *
                           H_.b_mul(H_.cartan(KClass::sheaf(0, -d2)), psi_coeff(d2)));
        Y[0] = H_.one();
        for (int d2 = 1; d2 <= Dtot; ++d2) {
            AlgElem s(qq);
            for (int j = 1; j <= std::min(d2, D); ++j)
                s = s + H_.b_mul(psiq[(size_t)j], Y[(size_t)(d2 - j)]);
            Y[(size_t)d2] = -s;
        }
        for (int d2 = -range; d2 <= range; ++d2) {
            if (d2 > w.maxSummandDeg) continue;
            AlgElem lhs = H_.antipode_flag(E_coeff(d2), w);
            AlgElem rhs(qq);
            for (int a = d2; a >= w.minSummandDeg; --a) {
                int b = d2 - a;
                if (b < 0 || b > Dtot) continue;
                AlgElem term = H_.b_mul(E_coeff(a), H_.cartan(KClass::sheaf(0, -a)));
                term = H_.b_mul(term, Y[(size_t)b]);
                term = H_.b_mul(term, H_.cartan(KClass::sheaf(-1, 0)));
                rhs = rhs - term;
            }
            rep.add("S(E_" + std::to_string(d2) + ") window-truncated", lhs == rhs);
        }
        return rep;
    }

    if (relation == "counit") {
        rep.add("eps(psi_0)=1", H_.counit(psi_coeff(0)) == one);
        for (int d = 1; d <= range; ++d)
            rep.add("eps(psi_" + std::to_string(d) + ")=0",
                    H_.counit(psi_coeff(d)) == Scalar(qq));
        for (int d = -range; d <= range; ++d)
            rep.add("eps(E_" + std::to_string(d) + ")=0", H_.counit(E_coeff(d)) == Scalar(qq));
        rep.add("eps(K)=1", H_.counit(H_.cartan(KClass::sheaf(1, 0))) == one);
        rep.add("eps(c)=1", H_.counit(H_.cartan(KClass::sheaf(0, 1))) == one);
        return rep;
    }

    rep.add("unknown relation " + relation, false);
    return rep;
}

Report AutoP1::verify_pairings(int range) const {
    long long qq = q();
    Scalar one = Scalar::integer(1, qq);
    Report rep{"autop1", "pairings-3.6.3", {}};
    Scalar norm = Scalar::integer(qq - 1, qq); // |f|^2 = 1 normalization squared

    // (E_i, E_j) = delta_ij after normalization
    for (int i = -range; i <= range; ++i)
        for (int j = -range; j <= range; ++j) {
            Scalar v = norm * H_.green_pair(E_coeff(i), E_coeff(j));
            Scalar expect = (i == j) ? one : Scalar(qq);
            rep.add("(E_" + std::to_string(i) + ",E_" + std::to_string(j) + ")", v == expect,
                    v.str(), expect.str());
        }
    // (E_i, a_d) = 0
    for (int i = -range; i <= range; ++i)
        for (int d = 1; d <= range; ++d)
            rep.add("(E,a) orthogonal", H_.green_pair(E_coeff(i), a_coeff(d)) == Scalar(qq));
    // (K^i, K^j) = q^{ij}
    for (int i = -2; i <= 2; ++i)
        for (int j = -2; j <= 2; ++j) {
            Scalar v = H_.green_pair(H_.cartan(KClass::sheaf(i, 0)), H_.cartan(KClass::sheaf(j, 0)));
            rep.add("(K^i,K^j)", v == Scalar::q_pow((long long)i * j, qq));
        }
    // (c, anything) pairs trivially through the form
    rep.add("(c,c)=1", H_.green_pair(H_.cartan(KClass::sheaf(0, 1)),
                                     H_.cartan(KClass::sheaf(0, 1))) == one);

    // a-a pairing against both zeta-log orientations
    auto zs = zeta().series(range + 2);
    std::vector<Scalar> zq(zs.size(), Scalar(qq));
    for (size_t k = 0; k < zs.size(); ++k) zq[k] = zs[k] * Scalar::q_pow((long long)k, qq);
    auto logz = series_log(zs, qq);
    auto logzq = series_log(zq, qq);
    for (int d = 1; d <= range; ++d) {
        Scalar norm2 = H_.green_pair(a_coeff(d), a_coeff(d));
        Scalar derived = logzq[(size_t)d] - logz[(size_t)d];  // log zeta(qu)/zeta(u)
        Scalar printed = logz[(size_t)d] - logzq[(size_t)d];  // log zeta(u)/zeta(qu)
        rep.add("|a_" + std::to_string(d) + "|^2 derived orientation", norm2 == derived,
                norm2.str(), derived.str());
        rep.add("|a_" + std::to_string(d) + "|^2 printed orientation differs",
                !(norm2 == printed) || printed == derived);
    }
    // |a_1|^2 = q^2 - 1
    rep.add("|a_1|^2 = q^2-1",
            H_.green_pair(a_coeff(1), a_coeff(1)) == Scalar::integer(qq * qq - 1, qq));
    return rep;
}

Report AutoP1::verify_constant_term(int r, int range, const Window& w) const {
    long long qq = q();
    Scalar one = Scalar::integer(1, qq);
    Report rep{"autop1", "constant-term-3.7.6", {}};
    if (r == 0) {
        TensorElem lhs = H_.coproduct(H_.one(), w);
        TensorElem expect(qq);
        expect.add({{KClass(), be_.zero()}, {KClass(), be_.zero()}}, one);
        rep.add("empty product", lhs == expect);
        return rep;
    }
    if (r == 1) {
        for (int i = -range; i <= range; ++i) {
            if (i > w.maxSummandDeg || i < w.minSummandDeg) continue;
            TensorElem dd = H_.coproduct(E_coeff(i), w);
            TensorElem proj(qq);
            for (auto& [k, c] : dd.terms()) {
                bool keep1, keep2;
                BasisKey l = project_bun(k.l, keep1), r2 = project_bun(k.r, keep2);
                if (keep1 && keep2) proj.add({l, r2}, c);
            }
            TensorElem expect(qq);
            expect.add({{KClass(), be_.zero()}, {KClass(), ObjLabel::coh_line(i)}}, one);
            expect.add({{KClass(), ObjLabel::coh_line(i)}, {KClass({1}), be_.zero()}}, one);
            rep.add("r=1 E_" + std::to_string(i), proj == expect);
        }
        return rep;
    }
    // r = 2: rank-(1,1) block of p (x) p Delta(E_i E_j) equals
    // E_i (x) K E_j + sum_{k>=0} m_k E_{j-k} (x) K E_{i+k},
    // m-series = q zeta(u)/zeta(u/q) = (q - u)/(1 - qu)
    std::vector<Scalar> m((size_t)(2 * range + w.maxTorsionLength + 4), Scalar(qq));
    {
        LaurentPoly num(qq, "u"), den(qq, "u");
        num.add(0, Scalar::integer(qq, qq));
        num.add(1, -one);
        den.add(0, one);
        den.add(1, -Scalar::integer(qq, qq));
        auto s = RationalFn(num, den).series((int)m.size());
        for (size_t k = 0; k < m.size(); ++k) m[k] = s[k];
    }
    for (int i = -range; i <= range; ++i)
        for (int j = -range; j <= range; ++j) {
            AlgElem z = H_.ringel_mul(E_coeff(i), E_coeff(j));
            TensorElem dd = H_.coproduct(z, w);
            TensorElem proj(qq);
            for (auto& [k, c] : dd.terms()) {
                bool keep1, keep2;
                BasisKey l = project_bun(k.l, keep1), r2 = project_bun(k.r, keep2);
                if (!keep1 || !keep2) continue;
                // rank-(1,1) block only
                if (be_.class_of(l.obj).rank() != 1 || be_.class_of(r2.obj).rank() != 1) continue;
                proj.add({l, r2}, c);
            }
            TensorElem expect(qq);
            auto add_term = [&](int da, int db, const Scalar& c) {
                expect.add(
                    {{KClass(), ObjLabel::coh_line(da)}, {KClass({1}), ObjLabel::coh_line(db)}},
                    c);
            };
            add_term(i, j, one);
            for (int k = 0; k <= j - w.minSummandDeg; ++k) {
                if ((size_t)k >= m.size()) break;
                add_term(j - k, i + k, m[(size_t)k]);
            }
            // compare only on safe bidegrees
            std::set<long long> degs;
            for (auto& [k, c] : proj.terms()) degs.insert(be_.class_of(k.l.obj).deg());
            for (auto& [k, c] : expect.terms()) degs.insert(be_.class_of(k.l.obj).deg());
            bool pass = true;
            std::string detail;
            for (long long a : degs) {
                bool safe = true;
                for (auto& [kz, cz] : z.terms())
                    safe = safe && H_.coproduct_complete_at(kz.obj, KClass::sheaf(1, a), w);
                if (!safe) continue;
                for (auto& [k, c] : proj.terms())
                    if (be_.class_of(k.l.obj).deg() == a && !(expect.coeff(k) == c)) pass = false;
                for (auto& [k, c] : expect.terms())
                    if (be_.class_of(k.l.obj).deg() == a && !(proj.coeff(k) == c)) pass = false;
            }
            rep.add("(i,j)=(" + std::to_string(i) + "," + std::to_string(j) + ")", pass);
        }
    return rep;
}

Report AutoP1::commutator_ad_check(int dmax, int lrange, const Window& w) const {
    (void)w;
    long long qq = q();
    Report rep{"autop1", "commutator-3.5.8", {}};
    for (int d = 1; d <= dmax; ++d) {
        Scalar kappa = kappa_from_zeta(d);
        for (int l = -lrange; l <= lrange; ++l) {
            AlgElem lhs = H_.ringel_mul(a_coeff(d), E_coeff(l)) -
                          H_.ringel_mul(E_coeff(l), a_coeff(d));
            AlgElem rhs = kappa * E_coeff(l + d);
            rep.add("[a_" + std::to_string(d) + ", E_" + std::to_string(l) + "]", lhs == rhs,
                    lhs.str(), rhs.str());
        }
        // grading: no mixing across degrees
        AlgElem cross = H_.ringel_mul(a_coeff(d), E_coeff(0)) -
                        H_.ringel_mul(E_coeff(0), a_coeff(d));
        for (auto& [k, c] : cross.terms())
            rep.add("degree check d=" + std::to_string(d),
                    be_.class_of(k.obj) == KClass::sheaf(1, d));
        // the printed exponent (3.5.8) differs from the expansion-derived
        // kappa by q^{(d+1)/2} per factor; record computed vs printed
        Scalar printed = Scalar(Rational(-(long long)1, d), qq) *
                         Scalar::integer((long long)(ipow_ll(qq, 2 * d) - 1), qq) *
                         Scalar::v_pow(1, qq);
        rep.add("printed-3.5.8 d=" + std::to_string(d) + (kappa == printed ? " matches" : " differs"),
                true, kappa.str(), printed.str());
    }
    // negative control: perturbing psi breaks the proportionality
    {
        AlgElem bad = a_coeff(1) + psi_coeff(1); // wrong normalization
        AlgElem lhs = H_.ringel_mul(bad, E_coeff(0)) - H_.ringel_mul(E_coeff(0), bad);
        Scalar kappa = kappa_from_zeta(1);
        rep.add("negative control", !(lhs == kappa * E_coeff(1)));
    }
    return rep;
}

Report AutoP1::positivity_probe(int maxDegree) const {
    long long qq = q();
    Report rep{"autop1", "positivity-3.8.6", {}};
    if (maxDegree < 1) {
        rep.add("empty range", true);
        return rep;
    }
    std::vector<std::vector<Scalar>> gram((size_t)maxDegree,
                                          std::vector<Scalar>((size_t)maxDegree, Scalar(qq)));
    for (int i = 1; i <= maxDegree; ++i)
        for (int j = 1; j <= maxDegree; ++j)
            gram[(size_t)(i - 1)][(size_t)(j - 1)] = H_.green_pair(a_coeff(i), a_coeff(j));
    // leading principal minors, exact
    for (int k = 1; k <= maxDegree; ++k) {
        std::vector<std::vector<Scalar>> M((size_t)k, std::vector<Scalar>((size_t)k, Scalar(qq)));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) M[(size_t)i][(size_t)j] = gram[(size_t)i][(size_t)j];
        // determinant by fraction-free-ish gaussian elimination over Q(sqrt q)
        Scalar det = Scalar::integer(1, qq);
        bool zero = false;
        for (int c = 0; c < k && !zero; ++c) {
            int piv = c;
            while (piv < k && M[(size_t)piv][(size_t)c].is_zero()) ++piv;
            if (piv == k) {
                zero = true;
                break;
            }
            if (piv != c) {
                std::swap(M[(size_t)piv], M[(size_t)c]);
                det = -det;
            }
            det *= M[(size_t)c][(size_t)c];
            Scalar inv = M[(size_t)c][(size_t)c].inv();
            for (int i = c + 1; i < k; ++i) {
                Scalar f = M[(size_t)i][(size_t)c] * inv;
                for (int j = c; j < k; ++j) M[(size_t)i][(size_t)j] -= f * M[(size_t)c][(size_t)j];
            }
        }
        if (zero) det = Scalar(qq);
        bool positive = det.is_rational() && det.a().sign() > 0;
        rep.add("minor " + std::to_string(k), positive, det.str(), "> 0");
    }
    return rep;
}

} // namespace hallq
