#pragma once

#include <map>
#include <mutex>
#include <tuple>

#include "hallq/flin.hpp"
#include "hallq/objlabel.hpp"
#include "hallq/rational.hpp"

namespace hallq {

struct QuiverSpec {
    int nv = 0;
    std::vector<std::pair<int, int>> arrows; // (source, target), no loops
    int q = 2;                               // prime field size

    QuiverSpec() = default;
    QuiverSpec(int nvertices, std::vector<std::pair<int, int>> arr, int qq);

    static QuiverSpec kronecker(int q) { return QuiverSpec(2, {{0, 1}, {0, 1}}, q); }
    static QuiverSpec a2(int q) { return QuiverSpec(2, {{0, 1}}, q); }

    // Cartan matrix entry: a_ii = 2, a_ij = -#edges between i and j
    int cartan(int i, int j) const;

    auto operator<=>(const QuiverSpec&) const = default;
};

// Representations of a quiver over F_q, up to isomorphism. Labels are
// lexicographically least matrix tuples in the GL-orbit; orbits are
// small because windows cap the total dimension.
class QuiverBackend {
    QuiverSpec spec_;

    mutable std::map<std::pair<std::vector<int>, std::vector<std::vector<uint8_t>>>,
                     std::pair<ObjLabel, long long>>
        canon_cache_; // -> (canonical label, |Aut|)
    mutable std::mutex mutex_;

    std::pair<ObjLabel, long long> canonicalize_impl(const std::vector<int>& dims,
                                                     const std::vector<flin::Mat>& mats) const;

public:
    explicit QuiverBackend(QuiverSpec spec) : spec_(std::move(spec)) {}
    const QuiverSpec& spec() const { return spec_; }
    int q() const { return spec_.q; }

    KClass class_of(const ObjLabel& a) const {
        return KClass(std::vector<long long>(a.dims.begin(), a.dims.end()));
    }

    // chi(a,b) = sum_i a_i b_i - sum_{arrows i->j} a_i b_j
    long long euler_chi(const KClass& a, const KClass& b) const;

    ObjLabel label_of(const std::vector<int>& dims, const std::vector<flin::Mat>& mats) const;
    ObjLabel simple(int vertex) const;

    bigint aut_order(const ObjLabel& a) const;

    // number of subrepresentations of C isomorphic to A with quotient B
    long long hall_number(const ObjLabel& a, const ObjLabel& b, const ObjLabel& c) const;
    long long hall_number_serial(const ObjLabel& a, const ObjLabel& b, const ObjLabel& c) const;

    std::vector<std::tuple<ObjLabel, ObjLabel, long long>> subquotient_pairs(
        const ObjLabel& c) const;

    // all iso classes with the given dimension vector
    std::vector<ObjLabel> objects_with_dims(const std::vector<int>& dims) const;
    // all iso classes with dims <= box componentwise
    std::vector<ObjLabel> window_objects(const std::vector<int>& box) const;

    // matrices of a label as flin mats
    std::vector<flin::Mat> mats_of(const ObjLabel& a) const;
};

} // namespace hallq
