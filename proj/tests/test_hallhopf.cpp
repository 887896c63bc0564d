#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hallq/hall_ops.hpp"

using namespace hallq;

namespace {
struct P1 {
    Backend be = Backend::coh_p1(2);
    HallAlgebra H{be};
    PointLabel x, y;
    P1() {
        x = be.coh().points_of_degree(1)[0];
        y = be.coh().points_of_degree(1)[1];
    }
    AlgElem O(int d) { return H.basis(ObjLabel::coh_line(d)); }
    AlgElem T(const PointLabel& p, std::vector<int> lam) {
        return H.basis(ObjLabel::coh_torsion({{p, Partition(std::move(lam))}}));
    }
};
Scalar sc(long long n, long long q) { return Scalar::integer(n, q); }
} // namespace

TEST_CASE("hall_mul examples on P1") {
    P1 ctx;
    auto& H = ctx.H;
    // [O(1)] o [O(0)] = [O(1)+O(0)]
    AlgElem p = H.hall_mul(ctx.O(1), ctx.O(0));
    CHECK(p.size() == 1);
    CHECK(p.coeff({KClass(), ObjLabel::coh_bundle({1, 0})}) == sc(1, 2));
    // [O(0)] o [O(1)] = q^2 [O(0)+O(1)]
    AlgElem p2 = H.hall_mul(ctx.O(0), ctx.O(1));
    CHECK(p2.size() == 1);
    CHECK(p2.coeff({KClass(), ObjLabel::coh_bundle({1, 0})}) == sc(4, 2));
    // [F_x] o [O(0)] = [O(0) (+) F_x]
    AlgElem p3 = H.hall_mul(ctx.T(ctx.x, {1}), ctx.O(0));
    CHECK(p3.size() == 1);
    ObjLabel mixed = ObjLabel::coh_torsion({{ctx.x, Partition({1})}});
    mixed.bundle = {0};
    CHECK(p3.coeff({KClass(), mixed}) == sc(1, 2));
    // strict splitting: [O(a)] o [O(b)] = [O(a)+O(b)] for a > b
    AlgElem p4 = H.hall_mul(ctx.O(2), ctx.O(-1));
    CHECK(p4.size() == 1);
    CHECK(p4.coeff({KClass(), ObjLabel::coh_bundle({2, -1})}) == sc(1, 2));
}

TEST_CASE("ringel_mul twist and the q-commutation of neighbors") {
    P1 ctx;
    auto& H = ctx.H;
    // E_0 E_1 = q E_1 E_0 in the Ringel algebra
    AlgElem a = H.ringel_mul(ctx.O(0), ctx.O(1));
    AlgElem b = H.ringel_mul(ctx.O(1), ctx.O(0));
    CHECK(a == sc(2, 2) * b);
    // torsion x torsion: * equals o
    AlgElem t1 = H.ringel_mul(ctx.T(ctx.x, {1}), ctx.T(ctx.y, {1}));
    AlgElem t2 = H.hall_mul(ctx.T(ctx.x, {1}), ctx.T(ctx.y, {1}));
    CHECK(t1 == t2);
    // x * 0 = 0
    CHECK(H.ringel_mul(ctx.O(1), H.zero()).is_zero());
}

TEST_CASE("b_mul: Cartan commutation rules") {
    P1 ctx;
    auto& H = ctx.H;
    AlgElem K = H.cartan(KClass::sheaf(1, 0));
    AlgElem Kinv = H.cartan(KClass::sheaf(-1, 0));
    AlgElem c1 = H.cartan(KClass::sheaf(0, 1));
    // [O(0)] K = q K [O(0)]
    CHECK(H.b_mul(ctx.O(0), K) == sc(2, 2) * H.b_mul(K, ctx.O(0)));
    // c central
    CHECK(H.b_mul(ctx.O(3), c1) == H.b_mul(c1, ctx.O(3)));
    CHECK(H.b_mul(ctx.T(ctx.x, {2}), c1) == H.b_mul(c1, ctx.T(ctx.x, {2})));
    // K K^{-1} = 1
    CHECK(H.b_mul(K, Kinv) == H.one());
}

TEST_CASE("coproduct examples") {
    P1 ctx;
    auto& H = ctx.H;
    Window w;
    // Delta(K_kappa) = K_kappa (x) K_kappa
    KClass kap = KClass::sheaf(2, -1);
    TensorElem dk = H.coproduct(H.cartan(kap), w);
    CHECK(dk.terms().size() == 1);
    CHECK(dk.coeff({{kap, ctx.be.zero()}, {kap, ctx.be.zero()}}) == sc(1, 2));
    // Delta([F_x]) = 1 (x) [F_x] + [F_x] (x) K_{Fbar}
    TensorElem df = H.coproduct(ctx.T(ctx.x, {1}), w);
    ObjLabel fx = ObjLabel::coh_torsion({{ctx.x, Partition({1})}});
    CHECK(df.terms().size() == 2);
    CHECK(df.coeff({{KClass(), ctx.be.zero()}, {KClass(), fx}}) == sc(1, 2));
    CHECK(df.coeff({{KClass(), fx}, {KClass::sheaf(0, 1), ctx.be.zero()}}) == sc(1, 2));
    // Delta([O+O]) at bidegree ((1,0),(1,0)): <O,O> |Aut O|^2/|Aut O+O| (q+1) = v/q
    TensorElem doo = H.coproduct(H.basis(ObjLabel::coh_bundle({0, 0})), w);
    Scalar got = doo.coeff(
        {{KClass(), ObjLabel::coh_line(0)}, {KClass::sheaf(1, 0), ObjLabel::coh_line(0)}});
    // direct evaluation of the (1.6.4)-style coefficient as an oracle
    Scalar expect = ctx.be.euler_form(KClass::sheaf(1, 0), KClass::sheaf(1, 0)) *
                    Scalar(Rational(1) * Rational(1) / Rational(6) * Rational(3), 2);
    CHECK(got == expect);
    CHECK(got == Scalar(Rational(0), Rational(1, 2), 2)); // v/q at q=2
}

TEST_CASE("counit") {
    P1 ctx;
    auto& H = ctx.H;
    CHECK(H.counit(H.cartan(KClass::sheaf(3, 2))) == sc(1, 2));
    CHECK(H.counit(ctx.O(5)) == sc(0, 2));
    CHECK(H.counit(H.zero()) == sc(0, 2));
}

TEST_CASE("antipode basics") {
    P1 ctx;
    auto& H = ctx.H;
    Window w;
    // S(K_kappa) = K_{-kappa}
    KClass kap = KClass::sheaf(1, 2);
    CHECK(H.antipode(H.cartan(kap), w) == H.cartan(-kap));
    // S([F_x]) = -[F_x] K^{-1}_{Fbar}
    AlgElem s = H.antipode(ctx.T(ctx.x, {1}), w);
    ObjLabel fx = ObjLabel::coh_torsion({{ctx.x, Partition({1})}});
    CHECK(s.size() == 1);
    CHECK(s.coeff({KClass::sheaf(0, -1), fx}) == sc(-1, 2));
    // S(1) = 1
    CHECK(H.antipode(H.one(), w) == H.one());
    // flag formula agrees with the convolution recursion on torsion <= 3
    for (auto lam : {std::vector<int>{2}, {1, 1}, {2, 1}, {3}}) {
        AlgElem t = ctx.T(ctx.x, lam);
        CHECK(H.antipode(t, w) == H.antipode_flag(t, w));
    }
    // bundles cannot fit a window: explicit error
    CHECK_THROWS_AS(H.antipode(ctx.O(0), w), window_insufficient);
}

TEST_CASE("green pairing") {
    P1 ctx;
    auto& H = ctx.H;
    CHECK(H.green_pair(ctx.O(0), ctx.O(0)) == sc(1, 2)); // 1/(q-1) = 1 at q=2
    CHECK(H.green_pair(ctx.O(0), ctx.O(1)) == sc(0, 2));
    // (K, K) = q on P1
    AlgElem K = H.cartan(KClass::sheaf(1, 0));
    CHECK(H.green_pair(K, K) == sc(2, 2));
    // Gram of object basis is diagonal positive
    Window w;
    w.maxRank = 1;
    w.minSummandDeg = -1;
    w.maxSummandDeg = 1;
    w.maxTorsionLength = 2;
    auto objs = ctx.be.window_objects(w);
    for (size_t i = 0; i < objs.size(); ++i)
        for (size_t j = 0; j < objs.size(); ++j) {
            Scalar p = H.green_pair(H.basis(objs[i]), H.basis(objs[j]));
            if (i != j) CHECK(p == sc(0, 2));
            else {
                CHECK(p.is_rational());
                CHECK(p.a().sign() > 0);
            }
        }
}

TEST_CASE("associativity of all three products on supported triples") {
    P1 ctx;
    auto& H = ctx.H;
    std::vector<AlgElem> gens = {ctx.O(0), ctx.O(1),  ctx.O(-1),        ctx.T(ctx.x, {1}),
                                 ctx.T(ctx.y, {2}),   ctx.T(ctx.x, {1, 1})};
    for (auto& a : gens)
        for (auto& b : gens)
            for (auto& c : gens) {
                long long rank = 0;
                for (auto& e : {a, b, c})
                    rank += e.terms().begin()->first.obj.bundle.size();
                if (rank > 2) continue;
                CHECK(H.hall_mul(H.hall_mul(a, b), c) == H.hall_mul(a, H.hall_mul(b, c)));
                CHECK(H.ringel_mul(H.ringel_mul(a, b), c) == H.ringel_mul(a, H.ringel_mul(b, c)));
            }
    // b_mul associativity with Cartan factors thrown in
    AlgElem K = H.cartan(KClass::sheaf(1, 0));
    AlgElem kx = H.b_mul(K, ctx.T(ctx.x, {1}));
    CHECK(H.b_mul(H.b_mul(kx, ctx.T(ctx.y, {1})), kx) ==
          H.b_mul(kx, H.b_mul(ctx.T(ctx.y, {1}), kx)));
}

TEST_CASE("grading: b_mul adds classes, coproduct splits them") {
    P1 ctx;
    auto& H = ctx.H;
    AlgElem z = H.b_mul(ctx.O(1), ctx.T(ctx.x, {2}));
    for (auto& [k, c] : z.terms())
        CHECK(ctx.be.class_of(k.obj) == KClass::sheaf(1, 3));
    Window w;
    TensorElem dz = H.coproduct(ctx.T(ctx.x, {2}), w);
    for (auto& [k, c] : dz.terms())
        CHECK(ctx.be.class_of(k.l.obj) + ctx.be.class_of(k.r.obj) == KClass::sheaf(0, 2));
}

TEST_CASE("verify_bialgebra on the torsion subalgebra and quivers") {
    // torsion, total length <= 3, q = 2
    {
        P1 ctx;
        auto& H = ctx.H;
        Window w;
        w.maxTorsionLength = 3;
        std::vector<std::pair<AlgElem, AlgElem>> samples;
        samples.push_back({ctx.T(ctx.x, {1}), ctx.T(ctx.x, {1})});
        samples.push_back({ctx.T(ctx.x, {1}), ctx.T(ctx.y, {2})});
        samples.push_back({ctx.T(ctx.x, {2}), ctx.T(ctx.x, {1})});
        samples.push_back({ctx.T(ctx.x, {1, 1}), ctx.T(ctx.y, {1})});
        auto rep = H.verify_bialgebra(w, samples);
        CHECK(rep.all_pass());
        CHECK(!rep.cases.empty());
    }
    // Kronecker and A2 quivers, small dims, q = 2
    for (auto spec : {QuiverSpec::kronecker(2), QuiverSpec::a2(2)}) {
        Backend be = Backend::quiver(spec);
        HallAlgebra H(be);
        Window w;
        w.maxDims = {2, 2};
        auto s1 = H.basis(be.quiv().simple(0));
        auto s2 = H.basis(be.quiv().simple(1));
        std::vector<std::pair<AlgElem, AlgElem>> samples = {
            {s1, s2}, {s2, s1}, {s1, s1}, {H.b_mul(s1, s2), s1}};
        auto rep = H.verify_bialgebra(w, samples);
        CHECK(rep.all_pass());
    }
}

TEST_CASE("verify_bialgebra negative control") {
    // a corrupted structure constant must produce a localized failure
    P1 ctx;
    auto& H = ctx.H;
    Window w;
    AlgElem xx = ctx.T(ctx.x, {1});
    TensorElem lhs = H.coproduct(H.b_mul(xx, xx), w);
    TensorElem rhs = H.tensor_mul(H.coproduct(xx, w), H.coproduct(xx, w));
    CHECK(lhs == rhs);
    // corrupt one coefficient (as if a g-table entry were off by one)
    TensorElem bad = rhs;
    auto k = rhs.terms().begin()->first;
    bad.add(k, Scalar::integer(1, 2));
    CHECK(!(lhs == bad));
}

TEST_CASE("verify_hopf on torsion length <= 3") {
    P1 ctx;
    auto& H = ctx.H;
    Window w;
    std::vector<AlgElem> samples = {ctx.T(ctx.x, {1}), ctx.T(ctx.x, {2}),
                                    ctx.T(ctx.x, {1, 1}), ctx.T(ctx.y, {3}),
                                    H.b_mul(ctx.T(ctx.x, {1}), ctx.T(ctx.y, {1})),
                                    H.cartan(KClass::sheaf(2, 1))};
    auto rep = H.verify_hopf(w, samples);
    CHECK(rep.all_pass());
}

TEST_CASE("verify_pair_adjoint randomized") {
    P1 ctx;
    auto& H = ctx.H;
    Window w;
    std::mt19937_64 rng(2024);
    auto torsions = ctx.be.coh().torsion_labels_of_h0(1);
    auto t2 = ctx.be.coh().torsion_labels_of_h0(2);
    torsions.insert(torsions.end(), t2.begin(), t2.end());
    std::vector<std::tuple<AlgElem, AlgElem, AlgElem>> samples;
    for (int i = 0; i < 50; ++i) {
        auto pick = [&]() {
            AlgElem e(2);
            ObjLabel o = torsions[rng() % torsions.size()];
            e.add({KClass(), o}, Scalar::integer(1 + (long long)(rng() % 3), 2));
            if (rng() % 2) {
                ObjLabel o2 = torsions[rng() % torsions.size()];
                e.add({KClass(), o2}, Scalar::integer((long long)(rng() % 3) - 1, 2));
            }
            return e;
        };
        AlgElem x = pick(), yy = pick();
        // z supported where x*y lands so the pairing is nontrivial
        AlgElem z = H.b_mul(pick(), pick());
        samples.push_back({x, yy, z});
    }
    auto rep = H.verify_pair_adjoint(w, samples);
    CHECK(rep.all_pass());
    CHECK(rep.cases.size() == 50);
    // explicit (O, O, O+O-supported) instance
    AlgElem z2 = H.basis(ObjLabel::coh_bundle({0, 0}));
    Scalar l = H.green_pair(H.b_mul(ctx.O(0), ctx.O(0)), z2);
    Scalar r = H.green_pair_tensor(TensorElem::tensor(ctx.O(0), ctx.O(0)),
                                   H.coproduct(z2, w));
    CHECK(l == r);
    CHECK(!l.is_zero());
}

TEST_CASE("quiver A2 ringel product matches hand computation") {
    // e1 * e2 = [S1+S2], e2 * e1 = v^{-1}([S1+S2] + [M])
    Backend be = Backend::quiver(QuiverSpec::a2(2));
    HallAlgebra H(be);
    AlgElem e1 = H.basis(be.quiv().simple(0));
    AlgElem e2 = H.basis(be.quiv().simple(1));
    AlgElem p = H.ringel_mul(e1, e2);
    CHECK(p.size() == 1);
    AlgElem p2 = H.ringel_mul(e2, e1);
    CHECK(p2.size() == 2);
    for (auto& [k, c] : p2.terms()) CHECK(c == Scalar::v_pow(-1, 2));
}
