#include "hallq/quiver.hpp"

#include <algorithm>

#include "hallq/errors.hpp"

#ifdef HALLQ_HAVE_OPENMP
#include <omp.h>
#endif

namespace hallq {

namespace flin {

std::vector<std::pair<Mat, Mat>> gl_elements(int d, int p) {
    static std::map<std::pair<int, int>, std::vector<std::pair<Mat, Mat>>> cache;
    static std::mutex m;
    std::lock_guard<std::mutex> lk(m);
    auto key = std::make_pair(d, p);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    std::vector<std::pair<Mat, Mat>> out;
    if (d == 0) {
        out.push_back({Mat{}, Mat{}});
        cache[key] = out;
        return out;
    }
    long long total = 1;
    for (int i = 0; i < d * d; ++i) total *= p;
    for (long long code = 0; code < total; ++code) {
        Mat M(d, Vec(d, 0));
        long long c = code;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                M[i][j] = (uint8_t)(c % p);
                c /= p;
            }
        // invert by Gauss-Jordan on [M | I]
        Mat A = M;
        Mat I = identity(d);
        bool ok = true;
        for (int col = 0; col < d && ok; ++col) {
            int piv = -1;
            for (int r = col; r < d; ++r)
                if (A[r][col] != 0) {
                    piv = r;
                    break;
                }
            if (piv < 0) {
                ok = false;
                break;
            }
            std::swap(A[piv], A[col]);
            std::swap(I[piv], I[col]);
            int inv = inv_mod(A[col][col], p);
            for (int j = 0; j < d; ++j) {
                A[col][j] = (uint8_t)(A[col][j] * inv % p);
                I[col][j] = (uint8_t)(I[col][j] * inv % p);
            }
            for (int r = 0; r < d; ++r) {
                if (r == col || A[r][col] == 0) continue;
                int f = A[r][col];
                for (int j = 0; j < d; ++j) {
                    int x = A[r][j] - f * A[col][j];
                    A[r][j] = (uint8_t)(((x % p) + p) % p);
                    x = I[r][j] - f * I[col][j];
                    I[r][j] = (uint8_t)(((x % p) + p) % p);
                }
            }
        }
        if (ok) out.push_back({M, I});
    }
    cache[key] = out;
    return out;
}

} // namespace flin

using flin::Mat;
using flin::Vec;

QuiverSpec::QuiverSpec(int nvertices, std::vector<std::pair<int, int>> arr, int qq)
    : nv(nvertices), arrows(std::move(arr)), q(qq) {
    for (auto& [s, t] : arrows) {
        if (s == t) throw error("QuiverSpec: edge-loops are not allowed");
        if (s < 0 || s >= nv || t < 0 || t >= nv) throw error("QuiverSpec: bad arrow");
    }
}

int QuiverSpec::cartan(int i, int j) const {
    if (i == j) return 2;
    int e = 0;
    for (auto& [s, t] : arrows) e += ((s == i && t == j) || (s == j && t == i));
    return -e;
}

long long QuiverBackend::euler_chi(const KClass& a, const KClass& b) const {
    long long chi = 0;
    for (int i = 0; i < spec_.nv; ++i) chi += a.at((size_t)i) * b.at((size_t)i);
    for (auto& [s, t] : spec_.arrows) chi -= a.at((size_t)s) * b.at((size_t)t);
    return chi;
}

static std::vector<Mat> unflatten(const QuiverSpec& spec, const std::vector<int>& dims,
                                  const std::vector<std::vector<uint8_t>>& flat) {
    std::vector<Mat> mats;
    for (size_t e = 0; e < spec.arrows.size(); ++e) {
        auto [s, t] = spec.arrows[e];
        Mat M(dims[t], Vec(dims[s], 0));
        for (int i = 0; i < dims[t]; ++i)
            for (int j = 0; j < dims[s]; ++j) M[i][j] = flat[e][i * dims[s] + j];
        mats.push_back(std::move(M));
    }
    return mats;
}

static std::vector<std::vector<uint8_t>> flatten(const std::vector<Mat>& mats) {
    std::vector<std::vector<uint8_t>> flat;
    for (auto& M : mats) {
        std::vector<uint8_t> f;
        for (auto& row : M) f.insert(f.end(), row.begin(), row.end());
        flat.push_back(std::move(f));
    }
    return flat;
}

std::pair<ObjLabel, long long> QuiverBackend::canonicalize_impl(
    const std::vector<int>& dims, const std::vector<Mat>& mats) const {
    // scan the product of GL(d_i); track lex-min image and stabilizer size
    std::vector<std::vector<std::pair<Mat, Mat>>> gls;
    long long group_order = 1;
    for (int i = 0; i < spec_.nv; ++i) {
        gls.push_back(flin::gl_elements(dims[i], spec_.q));
        group_order *= (long long)gls.back().size();
    }
    std::vector<std::vector<uint8_t>> orig = flatten(mats);
    std::vector<std::vector<uint8_t>> best = orig;
    long long stab = 0;

    std::vector<size_t> idx(spec_.nv, 0);
    while (true) {
        std::vector<Mat> trans;
        trans.reserve(mats.size());
        for (size_t e = 0; e < spec_.arrows.size(); ++e) {
            auto [s, t] = spec_.arrows[e];
            trans.push_back(flin::matmul(gls[t][idx[t]].first,
                                         flin::matmul(mats[e], gls[s][idx[s]].second, spec_.q),
                                         spec_.q));
        }
        auto flat = flatten(trans);
        if (flat == orig) ++stab;
        if (flat < best) best = flat;
        int v = 0;
        while (v < spec_.nv && ++idx[v] == gls[v].size()) idx[v++] = 0;
        if (v == spec_.nv) break;
    }

    ObjLabel lab;
    lab.tag = BackendTag::Quiver;
    lab.dims = dims;
    lab.mats = best;
    long long aut = stab; // |Aut| = |stabilizer of the tuple|
    (void)group_order;
    return {lab, aut};
}

ObjLabel QuiverBackend::label_of(const std::vector<int>& dims,
                                 const std::vector<Mat>& mats) const {
    auto key = std::make_pair(dims, flatten(mats));
    {
        std::lock_guard<std::mutex> lk(mutex_);
        auto it = canon_cache_.find(key);
        if (it != canon_cache_.end()) return it->second.first;
    }
    auto res = canonicalize_impl(dims, mats);
    std::lock_guard<std::mutex> lk(mutex_);
    canon_cache_[key] = res;
    // also cache under the canonical form itself
    canon_cache_[std::make_pair(dims, res.first.mats)] = res;
    return res.first;
}

ObjLabel QuiverBackend::simple(int vertex) const {
    std::vector<int> dims(spec_.nv, 0);
    dims[vertex] = 1;
    std::vector<Mat> mats;
    for (auto& [s, t] : spec_.arrows) mats.push_back(Mat(dims[t], Vec(dims[s], 0)));
    return label_of(dims, mats);
}

bigint QuiverBackend::aut_order(const ObjLabel& a) const {
    auto key = std::make_pair(a.dims, a.mats);
    {
        std::lock_guard<std::mutex> lk(mutex_);
        auto it = canon_cache_.find(key);
        if (it != canon_cache_.end()) return bigint(it->second.second);
    }
    auto res = canonicalize_impl(a.dims, unflatten(spec_, a.dims, a.mats));
    std::lock_guard<std::mutex> lk(mutex_);
    canon_cache_[key] = res;
    return bigint(res.second);
}

std::vector<Mat> QuiverBackend::mats_of(const ObjLabel& a) const {
    return unflatten(spec_, a.dims, a.mats);
}

namespace {

// Subrepresentation scan shared by the parallel and serial engines.
// For each tuple of per-vertex subspaces (as RREF bases) it checks
// invariance under the arrow maps, then hands sub- and quotient
// representation matrices to `emit`.
struct SubrepScan {
    const QuiverSpec& spec;
    const std::vector<int>& cdims;
    const std::vector<Mat>& cmats;
    const std::vector<int>& sdims;
    std::vector<std::vector<std::pair<Mat, std::vector<int>>>> subspaces; // per vertex
    std::vector<long long> radix;
    long long total = 1;

    SubrepScan(const QuiverSpec& sp, const std::vector<int>& cd, const std::vector<Mat>& cm,
               const std::vector<int>& sd)
        : spec(sp), cdims(cd), cmats(cm), sdims(sd) {
        for (int i = 0; i < sp.nv; ++i) {
            subspaces.push_back(flin::all_subspaces(sp.q, cd[i], sd[i]));
            radix.push_back(total);
            total *= (long long)subspaces.back().size();
        }
    }

    // returns false when the tuple is not invariant
    bool build(long long code, std::vector<Mat>& sub_mats, std::vector<Mat>& quot_mats,
               std::vector<int>& qdims) const {
        int p = spec.q;
        std::vector<const Mat*> bases(spec.nv);
        std::vector<const std::vector<int>*> pivots(spec.nv);
        for (int i = 0; i < spec.nv; ++i) {
            auto& s = subspaces[i][(size_t)((code / radix[i]) % (long long)subspaces[i].size())];
            bases[i] = &s.first;
            pivots[i] = &s.second;
        }
        // invariance + sub matrices (in the RREF bases of the U_i)
        sub_mats.clear();
        for (size_t e = 0; e < spec.arrows.size(); ++e) {
            auto [s, t] = spec.arrows[e];
            Mat M(sdims[t], Vec(sdims[s], 0));
            for (int r = 0; r < sdims[s]; ++r) {
                Vec img = flin::matvec(cmats[e], (*bases[s])[r], p);
                // express img in the basis of U_t: coefficients at pivots
                Vec res = img;
                for (size_t rr = 0; rr < bases[t]->size(); ++rr) {
                    int c = (*pivots[t])[rr];
                    int f = res[c];
                    if (f == 0) continue;
                    M[rr][r] = (uint8_t)f;
                    for (size_t j = 0; j < res.size(); ++j) {
                        int x = res[j] - f * (*bases[t])[rr][j];
                        res[j] = (uint8_t)(((x % p) + p) % p);
                    }
                }
                for (auto x : res)
                    if (x) return false; // img not in U_t
            }
            sub_mats.push_back(std::move(M));
        }
        // quotient matrices: coordinates on the non-pivot columns
        quot_mats.clear();
        qdims.assign(spec.nv, 0);
        std::vector<std::vector<int>> free_cols(spec.nv);
        for (int i = 0; i < spec.nv; ++i) {
            std::vector<bool> is_piv(cdims[i], false);
            for (int c : *pivots[i]) is_piv[c] = true;
            for (int c = 0; c < cdims[i]; ++c)
                if (!is_piv[c]) free_cols[i].push_back(c);
            qdims[i] = (int)free_cols[i].size();
        }
        for (size_t e = 0; e < spec.arrows.size(); ++e) {
            auto [s, t] = spec.arrows[e];
            Mat M(qdims[t], Vec(qdims[s], 0));
            for (int r = 0; r < qdims[s]; ++r) {
                Vec basis_vec(cdims[s], 0);
                basis_vec[free_cols[s][r]] = 1;
                Vec img = flin::matvec(cmats[e], basis_vec, p);
                Vec res = flin::reduce(*bases[t], *pivots[t], img, p);
                for (int rr = 0; rr < qdims[t]; ++rr) M[rr][r] = res[free_cols[t][rr]];
            }
            quot_mats.push_back(std::move(M));
        }
        return true;
    }
};

} // namespace

long long QuiverBackend::hall_number_serial(const ObjLabel& a, const ObjLabel& b,
                                            const ObjLabel& c) const {
    if (a.tag != BackendTag::Quiver || b.tag != BackendTag::Quiver ||
        c.tag != BackendTag::Quiver)
        throw backend_mismatch("quiver hall_number: mixed backends");
    for (int i = 0; i < spec_.nv; ++i)
        if (a.dims[i] + b.dims[i] != c.dims[i]) return 0;
    auto cmats = mats_of(c);
    SubrepScan scan(spec_, c.dims, cmats, a.dims);
    long long count = 0;
    std::vector<Mat> sub, quot;
    std::vector<int> qdims;
    for (long long code = 0; code < scan.total; ++code) {
        if (!scan.build(code, sub, quot, qdims)) continue;
        if (label_of(a.dims, sub) == a && label_of(qdims, quot) == b) ++count;
    }
    return count;
}

long long QuiverBackend::hall_number(const ObjLabel& a, const ObjLabel& b,
                                     const ObjLabel& c) const {
    if (a.tag != BackendTag::Quiver || b.tag != BackendTag::Quiver ||
        c.tag != BackendTag::Quiver)
        throw backend_mismatch("quiver hall_number: mixed backends");
    for (int i = 0; i < spec_.nv; ++i)
        if (a.dims[i] + b.dims[i] != c.dims[i]) return 0;
    auto cmats = mats_of(c);
    SubrepScan scan(spec_, c.dims, cmats, a.dims);
    long long count = 0;
#ifdef HALLQ_HAVE_OPENMP
#pragma omp parallel for schedule(static) reduction(+ : count)
#endif
    for (long long code = 0; code < scan.total; ++code) {
        std::vector<Mat> sub, quot;
        std::vector<int> qdims;
        if (!scan.build(code, sub, quot, qdims)) continue;
        if (label_of(a.dims, sub) == a && label_of(qdims, quot) == b) ++count;
    }
    return count;
}

std::vector<std::tuple<ObjLabel, ObjLabel, long long>> QuiverBackend::subquotient_pairs(
    const ObjLabel& c) const {
    auto cmats = mats_of(c);
    std::map<std::pair<ObjLabel, ObjLabel>, long long> acc;
    // iterate over all sub-dimension vectors
    std::vector<int> sd(spec_.nv, 0);
    while (true) {
        SubrepScan scan(spec_, c.dims, cmats, sd);
        std::vector<Mat> sub, quot;
        std::vector<int> qdims;
        for (long long code = 0; code < scan.total; ++code) {
            if (!scan.build(code, sub, quot, qdims)) continue;
            acc[{label_of(sd, sub), label_of(qdims, quot)}]++;
        }
        int v = 0;
        while (v < spec_.nv && ++sd[v] > c.dims[v]) sd[v++] = 0;
        if (v == spec_.nv) break;
    }
    std::vector<std::tuple<ObjLabel, ObjLabel, long long>> out;
    for (auto& [key, cnt] : acc) out.push_back({key.first, key.second, cnt});
    return out;
}

std::vector<ObjLabel> QuiverBackend::objects_with_dims(const std::vector<int>& dims) const {
    // enumerate all matrix tuples, canonicalize, dedup
    long long total = 1;
    std::vector<long long> sizes;
    for (auto& [s, t] : spec_.arrows) {
        long long n = 1;
        for (int i = 0; i < dims[s] * dims[t]; ++i) n *= spec_.q;
        sizes.push_back(n);
        total *= n;
    }
    std::set<ObjLabel> seen;
    for (long long code = 0; code < total; ++code) {
        std::vector<Mat> mats;
        long long cc = code;
        for (size_t e = 0; e < spec_.arrows.size(); ++e) {
            auto [s, t] = spec_.arrows[e];
            Mat M(dims[t], Vec(dims[s], 0));
            long long inner = cc % sizes[e];
            cc /= sizes[e];
            for (int i = 0; i < dims[t]; ++i)
                for (int j = 0; j < dims[s]; ++j) {
                    M[i][j] = (uint8_t)(inner % spec_.q);
                    inner /= spec_.q;
                }
            mats.push_back(std::move(M));
        }
        seen.insert(label_of(dims, mats));
    }
    return std::vector<ObjLabel>(seen.begin(), seen.end());
}

std::vector<ObjLabel> QuiverBackend::window_objects(const std::vector<int>& box) const {
    std::vector<ObjLabel> out;
    std::vector<int> dims(spec_.nv, 0);
    while (true) {
        auto objs = objects_with_dims(dims);
        out.insert(out.end(), objs.begin(), objs.end());
        int v = 0;
        while (v < spec_.nv && ++dims[v] > box[v]) dims[v++] = 0;
        if (v == spec_.nv) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace hallq
