#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "hallq/fppoly.hpp"

namespace hallq {

// Class in the Grothendieck group. Sheaf backends use {rank, degree};
// quiver backends use the dimension vector.
struct KClass {
    std::vector<long long> v; // canonical: no trailing zeros

    KClass() = default;
    explicit KClass(std::vector<long long> vv) : v(std::move(vv)) { normalize(); }
    static KClass sheaf(long long rank, long long deg) { return KClass({rank, deg}); }

    void normalize() {
        while (!v.empty() && v.back() == 0) v.pop_back();
    }

    long long at(size_t i) const { return i < v.size() ? v[i] : 0; }
    long long rank() const { return at(0); }
    long long deg() const { return at(1); }
    bool is_zero() const { return v.empty(); }

    friend KClass operator+(const KClass& a, const KClass& b) {
        KClass r;
        r.v.resize(std::max(a.v.size(), b.v.size()), 0);
        for (size_t i = 0; i < r.v.size(); ++i) r.v[i] = a.at(i) + b.at(i);
        r.normalize();
        return r;
    }
    friend KClass operator-(const KClass& a, const KClass& b) {
        KClass nb = b;
        for (auto& x : nb.v) x = -x;
        return a + nb;
    }
    KClass operator-() const {
        KClass r = *this;
        for (auto& x : r.v) x = -x;
        return r;
    }
    auto operator<=>(const KClass&) const = default;

    std::string str() const {
        std::string s = "(";
        for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
        return s + ")";
    }
};

struct Partition {
    std::vector<int> parts; // weakly decreasing, positive

    Partition() = default;
    explicit Partition(std::vector<int> p) : parts(std::move(p)) {
        for (size_t i = 0; i + 1 < parts.size(); ++i)
            if (parts[i] < parts[i + 1]) throw std::invalid_argument("Partition not decreasing");
        while (!parts.empty() && parts.back() == 0) parts.pop_back();
    }

    int weight() const { return std::accumulate(parts.begin(), parts.end(), 0); }
    int length() const { return (int)parts.size(); }
    bool empty() const { return parts.empty(); }
    int biggest() const { return parts.empty() ? 0 : parts[0]; }

    // n(lambda) = sum (i-1) lambda_i
    long long n_stat() const {
        long long n = 0;
        for (size_t i = 0; i < parts.size(); ++i) n += (long long)i * parts[i];
        return n;
    }
    // multiplicity of part size k
    int mult(int k) const {
        int m = 0;
        for (int x : parts) m += (x == k);
        return m;
    }

    auto operator<=>(const Partition&) const = default;

    std::string str() const {
        std::string s = "(";
        for (size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + std::to_string(parts[i]);
        return s + ")";
    }

    static std::vector<Partition> all_of_weight(int n) {
        std::vector<Partition> out;
        std::vector<int> cur;
        // decreasing compositions
        auto rec = [&](auto&& self, int rem, int maxpart) -> void {
            if (rem == 0) {
                out.push_back(Partition(cur));
                return;
            }
            for (int k = std::min(rem, maxpart); k >= 1; --k) {
                cur.push_back(k);
                self(self, rem - k, k);
                cur.pop_back();
            }
        };
        rec(rec, n, n);
        return out;
    }
};

// A closed point of P^1: "inf" or a monic irreducible over the prime field.
struct PointLabel {
    fp::Poly poly; // empty <=> the infinite place

    PointLabel() = default;
    explicit PointLabel(fp::Poly f) : poly(std::move(f)) {}
    static PointLabel inf() { return PointLabel(); }

    bool is_inf() const { return poly.empty(); }
    int degree() const { return is_inf() ? 1 : fp::deg(poly); }

    auto operator<=>(const PointLabel&) const = default;

    std::string str() const { return is_inf() ? "inf" : fp::poly_str(poly); }
};

enum class BackendTag : uint8_t { CohP1 = 0, TorsionLocal = 1, Quiver = 2 };

// Canonical name of an isomorphism class in one of the three backends.
// Two labels are equal iff the objects are isomorphic.
struct ObjLabel {
    BackendTag tag = BackendTag::CohP1;

    // CohP1: bundle summand degrees (weakly decreasing) + torsion per point
    std::vector<int> bundle;
    std::vector<std::pair<PointLabel, Partition>> tors; // sorted, partitions nonempty

    // TorsionLocal
    Partition lam;

    // Quiver: canonical matrix tuple (one flattened row-major matrix per arrow)
    std::vector<int> dims;
    std::vector<std::vector<uint8_t>> mats;

    auto operator<=>(const ObjLabel&) const = default;

    bool is_zero() const {
        switch (tag) {
            case BackendTag::CohP1: return bundle.empty() && tors.empty();
            case BackendTag::TorsionLocal: return lam.empty();
            case BackendTag::Quiver:
                for (int d : dims)
                    if (d) return false;
                return true;
        }
        return true;
    }

    static ObjLabel zero(BackendTag t) {
        ObjLabel o;
        o.tag = t;
        return o;
    }

    static ObjLabel coh_bundle(std::vector<int> degs) {
        ObjLabel o;
        o.tag = BackendTag::CohP1;
        std::sort(degs.begin(), degs.end(), std::greater<int>());
        o.bundle = std::move(degs);
        return o;
    }
    static ObjLabel coh_line(int d) { return coh_bundle({d}); }
    static ObjLabel coh_torsion(std::vector<std::pair<PointLabel, Partition>> t) {
        ObjLabel o;
        o.tag = BackendTag::CohP1;
        std::sort(t.begin(), t.end());
        for (auto& [pt, lam] : t)
            if (lam.empty()) throw std::invalid_argument("empty partition in torsion label");
        o.tors = std::move(t);
        return o;
    }
    static ObjLabel torsion_local(Partition p) {
        ObjLabel o;
        o.tag = BackendTag::TorsionLocal;
        o.lam = std::move(p);
        return o;
    }

    // CohP1 split into locally free and torsion parts
    ObjLabel lf_part() const {
        ObjLabel o = *this;
        o.tors.clear();
        return o;
    }
    ObjLabel tors_part() const {
        ObjLabel o = *this;
        o.bundle.clear();
        return o;
    }
    bool is_pure_bundle() const { return tag == BackendTag::CohP1 && tors.empty(); }
    bool is_pure_torsion() const { return tag == BackendTag::CohP1 && bundle.empty(); }
    int h0_torsion() const {
        int s = 0;
        for (auto& [pt, lam] : tors) s += pt.degree() * lam.weight();
        return s;
    }

    std::string str() const {
        switch (tag) {
            case BackendTag::TorsionLocal: return "T" + lam.str();
            case BackendTag::Quiver: {
                std::string s = "Q[";
                for (size_t i = 0; i < dims.size(); ++i)
                    s += (i ? "," : "") + std::to_string(dims[i]);
                s += "]";
                for (auto& m : mats) {
                    s += "{";
                    for (size_t i = 0; i < m.size(); ++i)
                        s += (i ? "," : "") + std::to_string((int)m[i]);
                    s += "}";
                }
                return s;
            }
            case BackendTag::CohP1: {
                if (is_zero()) return "0";
                std::string s;
                for (int d : bundle) {
                    if (!s.empty()) s += "+";
                    s += "O(" + std::to_string(d) + ")";
                }
                for (auto& [pt, lam] : tors) {
                    if (!s.empty()) s += "+";
                    s += "T(" + pt.str() + ";" + lam.str() + ")";
                }
                return s;
            }
        }
        return "?";
    }
};

// Finite slice of a backend: bounds making the label set finite.
struct Window {
    int maxRank = 2;
    int minSummandDeg = -3;
    int maxSummandDeg = 3;
    int maxTorsionLength = 3;
    std::vector<int> maxDims; // quiver backends: per-vertex dimension cap

    bool contains_class_sheaf(const KClass& c) const {
        return c.rank() >= 0 && c.rank() <= maxRank;
    }
    auto operator<=>(const Window&) const = default;
};

} // namespace hallq
