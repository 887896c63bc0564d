#include "hallq/cohp1.hpp"

#include <algorithm>
#include <set>

#include "hallq/errors.hpp"
#include "hallq/torsion_local.hpp"

#ifdef HALLQ_HAVE_OPENMP
#include <omp.h>
#endif

namespace hallq {

namespace {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

int mobius(int n) {
    int m = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            m = -m;
        }
    }
    if (n > 1) m = -m;
    return m;
}

long long ipow(long long b, int e) {
    long long r = 1;
    while (e--) r *= b;
    return r;
}

// ---- torsion-map helpers ------------------------------------------------

Partition partition_at(const TorsMap& t, const PointLabel& x) {
    for (auto& [pt, lam] : t)
        if (pt == x) return lam;
    return Partition();
}

TorsMap tors_normalize(TorsMap t) {
    TorsMap out;
    for (auto& [pt, lam] : t)
        if (!lam.empty()) out.push_back({pt, lam});
    std::sort(out.begin(), out.end());
    return out;
}

int tors_h0(const TorsMap& t) {
    int s = 0;
    for (auto& [pt, lam] : t) s += pt.degree() * lam.weight();
    return s;
}

std::vector<PointLabel> support_union(const TorsMap& a, const TorsMap& b) {
    std::set<PointLabel> s;
    for (auto& [pt, lam] : a) s.insert(pt);
    for (auto& [pt, lam] : b) s.insert(pt);
    return std::vector<PointLabel>(s.begin(), s.end());
}

} // namespace

long long p1_closed_points(int q, int d) {
    // (1/d) sum_{e|d} mu(e) (q^{d/e} + 1); the +1 only matters at d = 1
    long long s = 0;
    for (int e = 1; e <= d; ++e)
        if (d % e == 0) s += mobius(e) * (ipow(q, d / e) + 1);
    return s / d;
}

CohP1Backend::CohP1Backend(int q) : q_(q) {
    if (!is_prime(q)) throw error("CohP1Backend: q must be prime for exact counting");
}

KClass CohP1Backend::class_of(const ObjLabel& a) const {
    long long deg = 0;
    for (int d : a.bundle) deg += d;
    deg += a.h0_torsion();
    return KClass::sheaf((long long)a.bundle.size(), deg);
}

long long CohP1Backend::euler_chi(const KClass& a, const KClass& b) const {
    // genus 0: chi((r,d),(r',d')) = r r' + r d' - r' d
    return a.rank() * b.rank() + a.rank() * b.deg() - b.rank() * a.deg();
}

bigint CohP1Backend::aut_order(const ObjLabel& a) const {
    // |Aut(V (+) F)| = |Aut V| |Aut F| q^{rk(V) h0(F)}
    bigint total = 1;
    // bundle part: GL blocks for equal degrees, q^(d_i - d_j + 1) per
    // ordered pair with d_i < d_j
    std::map<int, int> mult;
    for (int d : a.bundle) mult[d]++;
    for (auto& [d, m] : mult) {
        bigint gl = 1;
        bigint qm = 1;
        for (int i = 0; i < m; ++i) qm *= q_;
        bigint qk = 1;
        for (int k = 0; k < m; ++k) {
            gl *= (qm - qk);
            qk *= q_;
        }
        total *= gl;
    }
    long long homdim = 0;
    for (size_t i = 0; i < a.bundle.size(); ++i)
        for (size_t j = 0; j < a.bundle.size(); ++j)
            if (a.bundle[i] < a.bundle[j]) homdim += a.bundle[j] - a.bundle[i] + 1;
    for (long long i = 0; i < homdim; ++i) total *= q_;
    // torsion part
    for (auto& [pt, lam] : a.tors) total *= torsion_aut_order(lam, ipow(q_, pt.degree()));
    // interaction
    long long inter = (long long)a.bundle.size() * a.h0_torsion();
    for (long long i = 0; i < inter; ++i) total *= q_;
    return total;
}

std::vector<PointLabel> CohP1Backend::points_of_degree(int d) const {
    if (d < 1) return {};
    {
        std::lock_guard<std::mutex> lk(mutex_);
        if ((int)points_cache_.size() > d && !points_cache_[(size_t)d].empty())
            return points_cache_[(size_t)d];
    }
    std::vector<PointLabel> pts;
    if (d == 1) {
        pts.push_back(PointLabel::inf());
        for (auto& f : fp::monic_irreducibles(1, q_)) pts.push_back(PointLabel(f));
    } else {
        for (auto& f : fp::monic_irreducibles(d, q_)) pts.push_back(PointLabel(f));
    }
    std::sort(pts.begin(), pts.end());
    std::lock_guard<std::mutex> lk(mutex_);
    if ((int)points_cache_.size() <= d) points_cache_.resize((size_t)d + 1);
    points_cache_[(size_t)d] = pts;
    return pts;
}

long long CohP1Backend::closed_points(int d) const { return p1_closed_points(q_, d); }

long long CohP1Backend::coprime_pair_count(int m1, int m2) const {
    // T(m1,m2) = sum_{d>=0} b_d C(m1-d, m2-d), b_d = #effective divisors
    // of degree d = 1 + q + ... + q^d; solve for C top-down
    if (m1 < 0 && m2 < 0) return 0;
    auto total = [&](int a, int b) -> long long {
        long long t = 1;
        if (a >= 0)
            for (int i = 0; i <= a; ++i) t *= q_;
        long long t2 = 1;
        if (b >= 0)
            for (int i = 0; i <= b; ++i) t2 *= q_;
        return t * t2 - 1;
    };
    std::map<std::pair<int, int>, long long> memo;
    auto rec = [&](auto&& self, int a, int b) -> long long {
        if (a < 0 && b < 0) return 0;
        if (a < 0) return b == 0 ? q_ - 1 : 0; // (0, nonzero constant)
        if (b < 0) return a == 0 ? q_ - 1 : 0;
        auto it = memo.find({a, b});
        if (it != memo.end()) return it->second;
        long long c = total(a, b);
        long long bd = 1;
        for (int d = 1; d <= std::max(a, b); ++d) {
            bd = bd * q_ + 1; // 1 + q + ... + q^d
            c -= bd * self(self, a - d, b - d);
            if (a - d < 0 && b - d < 0) break;
        }
        return memo[{a, b}] = c;
    };
    return rec(rec, m1, m2);
}

ObjLabel CohP1Backend::dualize(const ObjLabel& a) const {
    if (!a.tors.empty()) throw error("dualize: torsion part present");
    std::vector<int> degs;
    for (int d : a.bundle) degs.push_back(-d);
    return ObjLabel::coh_bundle(degs);
}

// ---- census kernels -----------------------------------------------------

namespace {

// forms of degree m on P^1: coefficient vectors of length max(0, m+1)
struct FormSlot {
    int form_deg;  // degree of the line bundle of sections
    int dim;       // max(0, form_deg + 1)
};

// decode `code` into the coefficient vector of a form
fp::Poly decode_form(long long code, int dim, int q) {
    fp::Poly f(dim, 0);
    for (int i = 0; i < dim; ++i) {
        f[i] = (uint8_t)(code % q);
        code /= q;
    }
    return fp::trim(std::move(f));
}

struct GcdInfo {
    fp::Poly gcd_aff; // monic gcd of the affine parts (empty if all forms zero)
    int ord_inf;      // common vanishing order at the infinite place
    bool all_zero;
};

GcdInfo form_gcd(const std::vector<std::pair<fp::Poly, int>>& forms, int q) {
    GcdInfo g{{}, 1 << 20, true};
    for (auto& [f, d] : forms) {
        if (f.empty()) continue;
        g.all_zero = false;
        g.gcd_aff = g.gcd_aff.empty() ? fp::monic(f, q) : fp::gcd(g.gcd_aff, f, q);
        g.ord_inf = std::min(g.ord_inf, d - fp::deg(f));
    }
    return g;
}

// factor a cyclic divisor (gcd) into per-point single-part torsion
TorsMap cyclic_type(const fp::Poly& gcd_aff, int ord_inf, int q) {
    TorsMap t;
    if (ord_inf > 0) t.push_back({PointLabel::inf(), Partition({ord_inf})});
    fp::Poly g = gcd_aff;
    if (!g.empty() && fp::deg(g) > 0) {
        for (int d = 1; d <= fp::deg(g); ++d) {
            if (fp::deg(g) < d) break;
            for (auto& pi : fp::monic_irreducibles(d, q)) {
                int m = fp::ord_at(g, pi, q);
                if (m > 0) {
                    t.push_back({PointLabel(pi), Partition({m})});
                    for (int i = 0; i < m; ++i) g = fp::divexact(g, pi, q);
                }
                if (fp::deg(g) < d) break;
            }
        }
    }
    return tors_normalize(std::move(t));
}

} // namespace

std::map<ObjLabel, long long> CohP1Backend::line_sub_census_serial(const std::vector<int>& cdegs,
                                                                   int a) const {
    std::map<ObjLabel, long long> acc;
    std::vector<FormSlot> slots;
    long long total = 1;
    int degC = 0;
    for (int c : cdegs) {
        int m = c - a;
        slots.push_back({m, std::max(0, m + 1)});
        for (int i = 0; i < slots.back().dim; ++i) total *= q_;
        degC += c;
    }
    for (long long code = 0; code < total; ++code) {
        long long cc = code;
        std::vector<std::pair<fp::Poly, int>> forms;
        for (auto& s : slots) {
            long long inner = 0;
            long long radix = 1;
            for (int i = 0; i < s.dim; ++i) radix *= q_;
            inner = cc % radix;
            cc /= radix;
            forms.push_back({decode_form(inner, s.dim, q_), s.form_deg});
        }
        GcdInfo g = form_gcd(forms, q_);
        if (g.all_zero) continue;
        TorsMap t = cyclic_type(g.gcd_aff, g.ord_inf, q_);
        int len = tors_h0(t);
        ObjLabel quot;
        quot.tag = BackendTag::CohP1;
        if (cdegs.size() == 2) quot.bundle = {degC - a - len};
        quot.tors = t;
        acc[quot]++;
    }
    std::map<ObjLabel, long long> out;
    for (auto& [k, v] : acc) {
        if (v % (q_ - 1) != 0) throw error("line_sub_census: count not divisible");
        out[k] = v / (q_ - 1);
    }
    return out;
}

std::map<ObjLabel, long long> CohP1Backend::line_sub_census(const std::vector<int>& cdegs,
                                                            int a) const {
    auto key = std::make_pair(cdegs, a);
    {
        std::lock_guard<std::mutex> lk(mutex_);
        auto it = line_census_cache_.find(key);
        if (it != line_census_cache_.end()) return it->second;
    }

    std::vector<FormSlot> slots;
    long long total = 1;
    int degC = 0;
    for (int c : cdegs) {
        int m = c - a;
        slots.push_back({m, std::max(0, m + 1)});
        for (int i = 0; i < slots.back().dim; ++i) total *= q_;
        degC += c;
    }

    int nthreads = 1;
#ifdef HALLQ_HAVE_OPENMP
    nthreads = omp_get_max_threads();
#endif
    std::vector<std::map<ObjLabel, long long>> partial((size_t)nthreads);

#ifdef HALLQ_HAVE_OPENMP
#pragma omp parallel num_threads(nthreads)
#endif
    {
        int tid = 0;
#ifdef HALLQ_HAVE_OPENMP
        tid = omp_get_thread_num();
#endif
        auto& acc = partial[(size_t)tid];
#ifdef HALLQ_HAVE_OPENMP
#pragma omp for schedule(static)
#endif
        for (long long code = 0; code < total; ++code) {
            long long cc = code;
            std::vector<std::pair<fp::Poly, int>> forms;
            for (auto& s : slots) {
                long long radix = 1;
                for (int i = 0; i < s.dim; ++i) radix *= q_;
                long long inner = cc % radix;
                cc /= radix;
                forms.push_back({decode_form(inner, s.dim, q_), s.form_deg});
            }
            GcdInfo g = form_gcd(forms, q_);
            if (g.all_zero) continue;
            TorsMap t = cyclic_type(g.gcd_aff, g.ord_inf, q_);
            int len = tors_h0(t);
            ObjLabel quot;
            quot.tag = BackendTag::CohP1;
            if (cdegs.size() == 2) quot.bundle = {degC - a - len};
            quot.tors = t;
            acc[quot]++;
        }
    }
    // deterministic merge: ordered map keys, thread order irrelevant to sums
    std::map<ObjLabel, long long> merged;
    for (auto& m : partial)
        for (auto& [k, v] : m) merged[k] += v;
    std::map<ObjLabel, long long> out;
    for (auto& [k, v] : merged) out[k] = v / (q_ - 1);

    std::lock_guard<std::mutex> lk(mutex_);
    line_census_cache_[key] = out;
    return out;
}

std::map<ObjLabel, long long> CohP1Backend::fullrank_census_serial(
    const std::vector<int>& cdegs, const std::vector<int>& adegs) const {
    // subs isomorphic to (+) O(a_r) inside (+) O(c_t), torsion quotient.
    // Entries f[r][t] of degree c_t - a_r; injective iff det != 0; local
    // Smith type from gcd of entries and the determinant.
    size_t n = cdegs.size();
    std::vector<std::vector<FormSlot>> slot(n, std::vector<FormSlot>(n));
    long long total = 1;
    for (size_t r = 0; r < n; ++r)
        for (size_t t = 0; t < n; ++t) {
            int m = cdegs[t] - adegs[r];
            slot[r][t] = {m, std::max(0, m + 1)};
            for (int i = 0; i < slot[r][t].dim; ++i) total *= q_;
        }
    int D = 0;
    for (size_t i = 0; i < n; ++i) D += cdegs[i] - adegs[i];

    std::map<ObjLabel, long long> acc;
    for (long long code = 0; code < total; ++code) {
        long long cc = code;
        std::vector<std::vector<fp::Poly>> f(n, std::vector<fp::Poly>(n));
        std::vector<std::pair<fp::Poly, int>> entries;
        for (size_t r = 0; r < n; ++r)
            for (size_t t = 0; t < n; ++t) {
                long long radix = 1;
                for (int i = 0; i < slot[r][t].dim; ++i) radix *= q_;
                long long inner = cc % radix;
                cc /= radix;
                f[r][t] = decode_form(inner, slot[r][t].dim, q_);
                entries.push_back({f[r][t], slot[r][t].form_deg});
            }
        fp::Poly det;
        if (n == 1) det = f[0][0];
        else det = fp::sub(fp::mul(f[0][0], f[1][1], q_), fp::mul(f[0][1], f[1][0], q_), q_);
        if (det.empty()) continue;
        int det_inf = D - fp::deg(det);
        GcdInfo g = form_gcd(entries, q_);
        // per-point Smith type (e2 >= e1)
        TorsMap t;
        if (det_inf > 0 || g.ord_inf > 0) {
            int e1 = g.ord_inf, e2 = det_inf - e1;
            std::vector<int> parts;
            if (e2 > 0) parts.push_back(e2);
            if (e1 > 0) parts.push_back(e1);
            if (!parts.empty()) t.push_back({PointLabel::inf(), Partition(parts)});
        }
        fp::Poly dd = det;
        for (int d = 1; d <= fp::deg(det); ++d) {
            if (fp::deg(dd) < 1) break;
            for (auto& pi : fp::monic_irreducibles(d, q_)) {
                int m = fp::ord_at(dd, pi, q_);
                if (m == 0) continue;
                int e1 = g.gcd_aff.empty() ? 0 : fp::ord_at(g.gcd_aff, pi, q_);
                int e2 = m - e1;
                std::vector<int> parts;
                if (e2 > 0) parts.push_back(e2);
                if (e1 > 0) parts.push_back(e1);
                if (!parts.empty()) {
                    std::sort(parts.begin(), parts.end(), std::greater<int>());
                    t.push_back({PointLabel(pi), Partition(parts)});
                }
                for (int i = 0; i < m; ++i) dd = fp::divexact(dd, pi, q_);
                if (fp::deg(dd) < 1) break;
            }
        }
        ObjLabel quot;
        quot.tag = BackendTag::CohP1;
        quot.tors = tors_normalize(std::move(t));
        acc[quot]++;
    }
    // divide by |Aut(source)|
    ObjLabel src = ObjLabel::coh_bundle(std::vector<int>(adegs));
    bigint aut = aut_order(src);
    long long autl = (long long)aut;
    std::map<ObjLabel, long long> out;
    for (auto& [k, v] : acc) {
        if (v % autl != 0) throw error("fullrank_census: count not divisible by |Aut|");
        out[k] = v / autl;
    }
    return out;
}

std::map<ObjLabel, long long> CohP1Backend::fullrank_census(const std::vector<int>& cdegs,
                                                            const std::vector<int>& adegs) const {
    auto key = std::make_tuple(cdegs, adegs);
    {
        std::lock_guard<std::mutex> lk(mutex_);
        auto it = full_census_cache_.find(key);
        if (it != full_census_cache_.end()) return it->second;
    }

    size_t n = cdegs.size();
    std::vector<std::vector<FormSlot>> slot(n, std::vector<FormSlot>(n));
    long long total = 1;
    for (size_t r = 0; r < n; ++r)
        for (size_t t = 0; t < n; ++t) {
            int m = cdegs[t] - adegs[r];
            slot[r][t] = {m, std::max(0, m + 1)};
            for (int i = 0; i < slot[r][t].dim; ++i) total *= q_;
        }
    int D = 0;
    for (size_t i = 0; i < n; ++i) D += cdegs[i] - adegs[i];

    int nthreads = 1;
#ifdef HALLQ_HAVE_OPENMP
    nthreads = omp_get_max_threads();
#endif
    std::vector<std::map<ObjLabel, long long>> partial((size_t)nthreads);

#ifdef HALLQ_HAVE_OPENMP
#pragma omp parallel num_threads(nthreads)
#endif
    {
        int tid = 0;
#ifdef HALLQ_HAVE_OPENMP
        tid = omp_get_thread_num();
#endif
        auto& acc = partial[(size_t)tid];
#ifdef HALLQ_HAVE_OPENMP
#pragma omp for schedule(static)
#endif
        for (long long code = 0; code < total; ++code) {
            long long cc = code;
            std::vector<std::vector<fp::Poly>> f(n, std::vector<fp::Poly>(n));
            std::vector<std::pair<fp::Poly, int>> entries;
            for (size_t r = 0; r < n; ++r)
                for (size_t t = 0; t < n; ++t) {
                    long long radix = 1;
                    for (int i = 0; i < slot[r][t].dim; ++i) radix *= q_;
                    long long inner = cc % radix;
                    cc /= radix;
                    f[r][t] = decode_form(inner, slot[r][t].dim, q_);
                    entries.push_back({f[r][t], slot[r][t].form_deg});
                }
            fp::Poly det;
            if (n == 1) det = f[0][0];
            else det = fp::sub(fp::mul(f[0][0], f[1][1], q_), fp::mul(f[0][1], f[1][0], q_), q_);
            if (det.empty()) continue;
            int det_inf = D - fp::deg(det);
            GcdInfo g = form_gcd(entries, q_);
            TorsMap t;
            if (det_inf > 0 || g.ord_inf > 0) {
                int e1 = g.ord_inf, e2 = det_inf - e1;
                std::vector<int> parts;
                if (e2 > 0) parts.push_back(e2);
                if (e1 > 0) parts.push_back(e1);
                std::sort(parts.begin(), parts.end(), std::greater<int>());
                if (!parts.empty()) t.push_back({PointLabel::inf(), Partition(parts)});
            }
            fp::Poly dd = det;
            for (int d = 1; d <= fp::deg(det); ++d) {
                if (fp::deg(dd) < 1) break;
                for (auto& pi : fp::monic_irreducibles(d, q_)) {
                    int m = fp::ord_at(dd, pi, q_);
                    if (m == 0) continue;
                    int e1 = g.gcd_aff.empty() ? 0 : fp::ord_at(g.gcd_aff, pi, q_);
                    int e2 = m - e1;
                    std::vector<int> parts;
                    if (e2 > 0) parts.push_back(e2);
                    if (e1 > 0) parts.push_back(e1);
                    if (!parts.empty()) {
                        std::sort(parts.begin(), parts.end(), std::greater<int>());
                        t.push_back({PointLabel(pi), Partition(parts)});
                    }
                    for (int i = 0; i < m; ++i) dd = fp::divexact(dd, pi, q_);
                    if (fp::deg(dd) < 1) break;
                }
            }
            ObjLabel quot;
            quot.tag = BackendTag::CohP1;
            quot.tors = tors_normalize(std::move(t));
            acc[quot]++;
        }
    }

    std::map<ObjLabel, long long> merged;
    for (auto& m : partial)
        for (auto& [k, v] : m) merged[k] += v;
    ObjLabel src = ObjLabel::coh_bundle(std::vector<int>(adegs));
    long long autl = (long long)aut_order(src);
    std::map<ObjLabel, long long> out;
    for (auto& [k, v] : merged) {
        if (v % autl != 0) throw error("fullrank_census: count not divisible by |Aut|");
        out[k] = v / autl;
    }

    std::lock_guard<std::mutex> lk(mutex_);
    full_census_cache_[key] = out;
    return out;
}

// ---- torsion censuses ---------------------------------------------------

std::vector<std::tuple<TorsMap, TorsMap, long long>> CohP1Backend::torsion_census(
    const TorsMap& c) const {
    std::vector<std::tuple<TorsMap, TorsMap, long long>> acc = {{{}, {}, 1}};
    for (auto& [pt, lam] : c) {
        auto local = local_submodule_census(lam, q_, pt.degree());
        std::vector<std::tuple<TorsMap, TorsMap, long long>> next;
        for (auto& [sub, quot, cnt] : acc)
            for (auto& t : local) {
                TorsMap s2 = sub, q2 = quot;
                if (!t.sub.empty()) s2.push_back({pt, t.sub});
                if (!t.quot.empty()) q2.push_back({pt, t.quot});
                next.push_back({tors_normalize(s2), tors_normalize(q2), cnt * t.count});
            }
        acc = std::move(next);
    }
    return acc;
}

// ---- Hall numbers -------------------------------------------------------

long long CohP1Backend::hall_number(const ObjLabel& a, const ObjLabel& b,
                                    const ObjLabel& c) const {
    if (a.tag != BackendTag::CohP1 || b.tag != BackendTag::CohP1 || c.tag != BackendTag::CohP1)
        throw backend_mismatch("cohp1 hall_number: mixed backends");
    {
        auto key = std::make_tuple(a, b, c);
        std::lock_guard<std::mutex> lk(mutex_);
        auto it = hall_cache_.find(key);
        if (it != hall_cache_.end()) return it->second;
    }
    long long res = 0;
    KClass ca = class_of(a), cb = class_of(b), cc = class_of(c);
    if (!((ca + cb) == cc)) {
        res = 0;
    } else if (cc.rank() > 2) {
        throw unsupported_shape("cohp1 hall_number: rank >= 3 target (" + a.str() + "," + b.str() +
                                " -> " + c.str() + ")");
    } else if (a.is_zero()) {
        res = (b == c) ? 1 : 0;
    } else if (b.is_zero()) {
        res = (a == c) ? 1 : 0;
    } else if (a.is_pure_torsion()) {
        // torsion subsheaf: must land in the torsion part of C; quotient
        // splits off the bundle part of C untouched
        if (b.lf_part() != c.lf_part()) {
            res = 0;
        } else {
            long long g = 1;
            auto pts = support_union(a.tors, c.tors);
            for (auto& x : support_union(b.tors, TorsMap{}))
                if (std::find(pts.begin(), pts.end(), x) == pts.end()) pts.push_back(x);
            for (auto& x : pts) {
                g *= local_hall(partition_at(c.tors, x), partition_at(a.tors, x),
                                partition_at(b.tors, x), q_, x.degree());
                if (!g) break;
            }
            res = g;
        }
    } else if (!a.tors.empty()) {
        // mixed sub: [A] = [A_tors] o [A_lf] exactly, so compose
        ObjLabel alf = a.lf_part(), ators = a.tors_part();
        long long total = 0;
        for (auto& [dsub, dquot, cnt] : torsion_census(c.tors)) {
            if (!(dsub == ators.tors)) continue;
            ObjLabel d;
            d.tag = BackendTag::CohP1;
            d.bundle = c.bundle;
            d.tors = dquot;
            total += cnt * hall_number(alf, b, d);
        }
        res = total;
    } else if ((int)a.bundle.size() == (int)c.bundle.size()) {
        // full-rank pure-bundle sub, torsion quotient
        if (!b.is_pure_torsion()) {
            res = 0;
        } else {
            // g^{W (+) F'}_{A, F} = q^{n h0(F')} sum_{F''} g^W_{A,F''} g^F_{F',F''}
            //                      |Aut F'| |Aut F''| / |Aut F|
            const TorsMap& Fp = c.tors;     // F'
            const TorsMap& F = b.tors;      // F
            auto census = fullrank_census(c.bundle, a.bundle);
            Rational sum(0);
            for (auto& [sub, quot, cnt] : torsion_census(F)) {
                if (!(sub == Fp)) continue;
                // quot plays the role of F''
                ObjLabel fpp;
                fpp.tag = BackendTag::CohP1;
                fpp.tors = quot;
                auto it = census.find(fpp);
                if (it == census.end()) continue;
                ObjLabel fpL, fL;
                fpL.tag = fL.tag = BackendTag::CohP1;
                fpL.tors = Fp;
                fL.tors = F;
                Rational term(it->second);
                term *= Rational(aut_order(fpL)) * Rational(aut_order(fpp)) /
                        Rational(aut_order(fL));
                // g^F_{F',F''} = (#subs of F of type F' with quotient F'');
                // torsion_census counts subs, so cnt already *is* that
                // number restricted to sub == F'
                term *= Rational(cnt);
                sum += term;
            }
            long long n = (long long)a.bundle.size();
            Rational qpow = pow(Rational(q_), n * tors_h0(c.tors));
            sum *= qpow;
            if (!sum.is_integer()) throw error("hall_number: non-integer mixed count");
            res = (long long)sum.num();
        }
    } else if ((int)a.bundle.size() == 1 && (int)c.bundle.size() == 2) {
        if (c.tors.empty()) {
            auto census = line_sub_census(c.bundle, a.bundle[0]);
            auto it = census.find(b);
            res = it == census.end() ? 0 : it->second;
        } else if (b.tors.empty()) {
            res = 0; // pure-bundle quotient forces the sub to contain all torsion
        } else {
            // compose on the quotient side: [B] = [B_tors] o [B_lf]
            ObjLabel blf = b.lf_part(), btors = b.tors_part();
            long long total = 0;
            // D runs over extensions of A by B_tors (rank-1, mixed)
            int budget = tors_h0(btors.tors);
            std::vector<PointLabel> supp;
            for (auto& [pt, lam] : btors.tors) supp.push_back(pt);
            // enumerate torsion labels supported in supp with h0 <= budget
            std::vector<TorsMap> dts = {{}};
            for (auto& pt : supp) {
                std::vector<TorsMap> next;
                for (auto& base : dts) {
                    int used = tors_h0(base);
                    for (int w = 0; w * pt.degree() + used <= budget; ++w)
                        for (auto& lam : Partition::all_of_weight(w)) {
                            TorsMap t2 = base;
                            if (!lam.empty()) t2.push_back({pt, lam});
                            next.push_back(tors_normalize(t2));
                        }
                }
                dts = std::move(next);
            }
            std::sort(dts.begin(), dts.end());
            dts.erase(std::unique(dts.begin(), dts.end()), dts.end());
            for (auto& dt : dts) {
                int rem = budget - tors_h0(dt);
                if (rem < 0) continue;
                ObjLabel d;
                d.tag = BackendTag::CohP1;
                d.bundle = {a.bundle[0] + rem};
                d.tors = dt;
                long long g1 = hall_number(a, btors, d);
                if (!g1) continue;
                long long g2 = hall_number(d, blf, c);
                total += g1 * g2;
            }
            res = total;
        }
    } else {
        throw unsupported_shape("cohp1 hall_number: unhandled shape (" + a.str() + "," + b.str() +
                                " -> " + c.str() + ")");
    }

    std::lock_guard<std::mutex> lk(mutex_);
    hall_cache_[std::make_tuple(a, b, c)] = res;
    return res;
}

long long CohP1Backend::count_line_subsheaves(const ObjLabel& v, int a,
                                              const ObjLabel& quotient) const {
    if (!v.is_pure_bundle() || v.bundle.size() != 2)
        throw unsupported_shape("count_line_subsheaves: V must be a rank-2 bundle");
    auto census = line_sub_census(v.bundle, a);
    auto it = census.find(quotient);
    return it == census.end() ? 0 : it->second;
}

const std::map<KClass, std::vector<ObjLabel>>& CohP1Backend::window_by_class(
    const Window& w) const {
    {
        std::lock_guard<std::mutex> lk(mutex_);
        auto it = window_cache_.find(w);
        if (it != window_cache_.end()) return it->second;
    }
    auto objs = window_objects(w);
    std::map<KClass, std::vector<ObjLabel>> by_class;
    for (auto& o : objs) by_class[class_of(o)].push_back(o);
    std::lock_guard<std::mutex> lk(mutex_);
    auto it = window_cache_.find(w);
    if (it != window_cache_.end()) return it->second;
    return window_cache_[w] = std::move(by_class);
}

std::vector<std::tuple<ObjLabel, ObjLabel, long long>> CohP1Backend::subquotient_pairs(
    const ObjLabel& c, const Window& w) const {
    {
        std::lock_guard<std::mutex> lk(mutex_);
        auto it = subq_cache_.find({c, w});
        if (it != subq_cache_.end()) return it->second;
    }
    std::vector<std::tuple<ObjLabel, ObjLabel, long long>> out;
    KClass cc = class_of(c);
    auto& by_class = window_by_class(w);

    // structural candidates for the sub: torsion part a subtype of C's
    // torsion, bundle summands window-bounded and below max(C.bundle)
    std::set<TorsMap> subtypes;
    for (auto& [s, qt, cnt] : torsion_census(c.tors)) subtypes.insert(s);
    int maxb = c.bundle.empty() ? w.minSummandDeg - 1 : c.bundle.front();
    std::vector<ObjLabel> cands;
    for (auto& s : subtypes) {
        ObjLabel base;
        base.tag = BackendTag::CohP1;
        base.tors = s;
        if ((int)c.bundle.size() >= 0) cands.push_back(base); // rank-0 sub
        if ((int)c.bundle.size() >= 1) {
            for (int x = w.minSummandDeg; x <= std::min(maxb, w.maxSummandDeg); ++x) {
                ObjLabel o = base;
                o.bundle = {x};
                cands.push_back(o);
            }
        }
        if ((int)c.bundle.size() >= 2) {
            for (int x = w.minSummandDeg; x <= std::min(maxb, w.maxSummandDeg); ++x)
                for (int y = w.minSummandDeg; y <= x; ++y) {
                    ObjLabel o = base;
                    o.bundle = {x, y};
                    cands.push_back(o);
                }
        }
    }
    for (auto& a : cands) {
        KClass ca = class_of(a);
        KClass cb = cc - ca;
        if (cb.rank() < 0) continue;
        auto it = by_class.find(cb);
        if (it == by_class.end()) continue;
        for (auto& b : it->second) {
            long long g = hall_number(a, b, c);
            if (g) out.push_back({a, b, g});
        }
    }
    std::sort(out.begin(), out.end());
    std::lock_guard<std::mutex> lk(mutex_);
    return subq_cache_[{c, w}] = out;
}

std::vector<ObjLabel> CohP1Backend::torsion_labels_of_h0(int d) const {
    // all torsion labels with h0 = d
    std::vector<PointLabel> pts;
    for (int e = 1; e <= d; ++e)
        for (auto& p : points_of_degree(e)) pts.push_back(p);
    std::vector<TorsMap> acc = {{}};
    for (auto& pt : pts) {
        std::vector<TorsMap> next;
        for (auto& base : acc) {
            int used = tors_h0(base);
            for (int w = 0; used + w * pt.degree() <= d; ++w) {
                if (w == 0) {
                    next.push_back(base);
                    continue;
                }
                for (auto& lam : Partition::all_of_weight(w)) {
                    TorsMap t2 = base;
                    t2.push_back({pt, lam});
                    next.push_back(tors_normalize(t2));
                }
            }
        }
        acc = std::move(next);
    }
    std::vector<ObjLabel> out;
    for (auto& t : acc) {
        if (tors_h0(t) != d) continue;
        ObjLabel o;
        o.tag = BackendTag::CohP1;
        o.tors = t;
        out.push_back(o);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<ObjLabel> CohP1Backend::window_objects(const Window& w) const {
    // bundle splitting types with each summand in [minD, maxD], rank <= maxRank
    std::vector<std::vector<int>> bundles = {{}};
    for (int r = 1; r <= w.maxRank; ++r) {
        std::vector<int> cur(r);
        auto rec = [&](auto&& self, int idx, int hi) -> void {
            if (idx == r) {
                bundles.push_back(cur);
                return;
            }
            for (int d = hi; d >= w.minSummandDeg; --d) {
                cur[idx] = d;
                self(self, idx + 1, d);
            }
        };
        rec(rec, 0, w.maxSummandDeg);
    }
    // torsion configurations with h0 <= maxTorsionLength
    std::vector<ObjLabel> torsions;
    for (int d = 0; d <= w.maxTorsionLength; ++d)
        for (auto& t : torsion_labels_of_h0(d)) torsions.push_back(t);

    std::vector<ObjLabel> out;
    for (auto& b : bundles)
        for (auto& t : torsions) {
            ObjLabel o = t;
            o.bundle = b;
            out.push_back(o);
        }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace hallq
