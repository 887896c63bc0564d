#pragma once

#include <map>
#include <mutex>
#include <tuple>

#include "hallq/objlabel.hpp"
#include "hallq/rational.hpp"

namespace hallq {

using TorsMap = std::vector<std::pair<PointLabel, Partition>>;

// Coherent sheaves on P^1 over F_q (q prime). Every object is a direct
// sum of line bundles O(d) and torsion sheaves; labels are the splitting
// type plus a partition per closed point.
//
// Hall numbers are computed exactly, by shape:
//   * rank-1 subsheaf of a pure rank<=2 bundle: binary-form pair census,
//     quotient type read off the gcd (torsion part is cyclic per point);
//   * full-rank subsheaf with torsion quotient: matrix-of-forms census,
//     local Smith type from gcd-of-entries and determinant;
//   * torsion subsheaf: per-point submodule enumeration;
//   * mixed labels reduce to those by exact composition identities
//     ([F] o [V] = [V (+) F], and the W (+) F' factorization formula).
// Anything else (rank >= 3) raises unsupported_shape rather than
// returning a wrong number.
class CohP1Backend {
    int q_;

    mutable std::map<std::pair<std::vector<int>, int>, std::map<ObjLabel, long long>>
        line_census_cache_;
    mutable std::map<std::tuple<std::vector<int>, std::vector<int>>,
                     std::map<ObjLabel, long long>>
        full_census_cache_;
    mutable std::map<std::tuple<ObjLabel, ObjLabel, ObjLabel>, long long> hall_cache_;
    mutable std::vector<std::vector<PointLabel>> points_cache_;
    mutable std::map<Window, std::map<KClass, std::vector<ObjLabel>>> window_cache_;
    mutable std::map<std::pair<ObjLabel, Window>,
                     std::vector<std::tuple<ObjLabel, ObjLabel, long long>>>
        subq_cache_;
    mutable std::mutex mutex_;

    const std::map<KClass, std::vector<ObjLabel>>& window_by_class(const Window& w) const;

public:
    explicit CohP1Backend(int q);
    int q() const { return q_; }

    KClass class_of(const ObjLabel& a) const;
    long long euler_chi(const KClass& a, const KClass& b) const;
    bigint aut_order(const ObjLabel& a) const;

    long long hall_number(const ObjLabel& a, const ObjLabel& b, const ObjLabel& c) const;

    std::vector<std::tuple<ObjLabel, ObjLabel, long long>> subquotient_pairs(
        const ObjLabel& c, const Window& w) const;

    ObjLabel dualize(const ObjLabel& a) const;

    // number of subsheaves of V (= pure rank-2 bundle) isomorphic to O(a)
    // with the prescribed quotient type
    long long count_line_subsheaves(const ObjLabel& v, int a, const ObjLabel& quotient) const;

    std::vector<PointLabel> points_of_degree(int d) const;
    long long closed_points(int d) const;

    // number of pairs of forms of degrees (m1, m2), not both zero, with
    // trivial common divisor (exact Moebius-style recursion over the
    // divisor degrees; used for deep saturated-subbundle counts)
    long long coprime_pair_count(int m1, int m2) const;

    std::vector<ObjLabel> window_objects(const Window& w) const;
    std::vector<ObjLabel> torsion_labels_of_h0(int d) const;

    // census kernels (exposed for tests and the benchmark)
    std::map<ObjLabel, long long> line_sub_census(const std::vector<int>& cdegs, int a) const;
    std::map<ObjLabel, long long> line_sub_census_serial(const std::vector<int>& cdegs,
                                                         int a) const;
    std::map<ObjLabel, long long> fullrank_census(const std::vector<int>& cdegs,
                                                  const std::vector<int>& adegs) const;
    std::map<ObjLabel, long long> fullrank_census_serial(const std::vector<int>& cdegs,
                                                         const std::vector<int>& adegs) const;

    // multi-point torsion census: all (subtype, quotient type, count)
    std::vector<std::tuple<TorsMap, TorsMap, long long>> torsion_census(const TorsMap& c) const;
};

// number of closed points of P^1(F_q) of degree d
long long p1_closed_points(int q, int d);

} // namespace hallq
