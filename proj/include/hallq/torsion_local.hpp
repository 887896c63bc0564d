#pragma once

#include "hallq/objlabel.hpp"
#include "hallq/rational.hpp"

namespace hallq {

struct TorsionTriple {
    Partition sub, quot;
    long long count;
};

// |Aut| of the torsion module of type lam over a residue field with qx
// elements: qx^(|lam| + 2 n(lam)) * prod_i phi_{m_i}(1/qx).
bigint torsion_aut_order(const Partition& lam, long long qx);

// Submodule census of M = (+) R/pi^{lam_i} over R = F_q[u]/(pi(u)^N),
// pi irreducible of degree d (d = 1 uses pi = u). Exact enumeration of
// u-stable subspaces; complete list of (subtype, quotient type, count).
std::vector<TorsionTriple> local_submodule_census(const Partition& lam, int q, int d);

// Hall number at one point: submodules of type A with quotient of type B.
long long local_hall(const Partition& C, const Partition& A, const Partition& B, int q, int d);

// The category of torsion sheaves supported at a single point whose
// residue field has a prime number of elements (counts are done by
// honest enumeration there; composite q_x appears only through closed
// formulas upstream).
class TorsionLocalBackend {
    int q_;

public:
    explicit TorsionLocalBackend(int q) : q_(q) {}
    int q() const { return q_; }

    KClass class_of(const ObjLabel& a) const { return KClass::sheaf(0, a.lam.weight()); }
    long long euler_chi(const KClass&, const KClass&) const { return 0; }
    bigint aut_order(const ObjLabel& a) const { return torsion_aut_order(a.lam, q_); }
    long long hall_number(const ObjLabel& a, const ObjLabel& b, const ObjLabel& c) const {
        return local_hall(c.lam, a.lam, b.lam, q_, 1);
    }
    std::vector<std::tuple<ObjLabel, ObjLabel, long long>> subquotient_pairs(
        const ObjLabel& c) const {
        std::vector<std::tuple<ObjLabel, ObjLabel, long long>> out;
        for (auto& t : local_submodule_census(c.lam, q_, 1))
            out.push_back({ObjLabel::torsion_local(t.sub), ObjLabel::torsion_local(t.quot),
                           t.count});
        return out;
    }
    std::vector<ObjLabel> window_objects(int max_weight) const {
        std::vector<ObjLabel> out;
        for (int w = 0; w <= max_weight; ++w)
            for (auto& p : Partition::all_of_weight(w)) out.push_back(ObjLabel::torsion_local(p));
        return out;
    }
};

} // namespace hallq
