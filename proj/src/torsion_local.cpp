#include "hallq/torsion_local.hpp"

#include <map>
#include <mutex>

#include "hallq/errors.hpp"

namespace hallq {

bigint torsion_aut_order(const Partition& lam, long long qx) {
    // qx^(|lam|+2n(lam)) * prod_k phi_{m_k}(1/qx), phi_m(t) = prod (1-t^j)
    bigint Q = qx;
    long long e = lam.weight() + 2 * lam.n_stat();
    bigint val = 1;
    for (long long i = 0; i < e; ++i) val *= Q;
    Rational r(val);
    for (int k = 1; k <= lam.biggest(); ++k) {
        int m = lam.mult(k);
        for (int j = 1; j <= m; ++j) {
            r *= Rational(1) - pow(Rational(1, bigint(qx)), j);
        }
    }
    if (!r.is_integer()) throw error("torsion_aut_order: non-integer");
    return r.num();
}

namespace {

using Vec = std::vector<uint8_t>;
using Mat = std::vector<Vec>;

struct FpSpace {
    int p;
    int dim;

    Vec mul_mat_vec(const Mat& M, const Vec& v) const {
        Vec r(dim, 0);
        for (int i = 0; i < dim; ++i) {
            int acc = 0;
            for (int j = 0; j < dim; ++j) acc += M[i][j] * v[j];
            r[i] = (uint8_t)(acc % p);
        }
        return r;
    }

    // reduce v against rows in reduced echelon form (pivots vector gives
    // pivot column of each row); returns the residue
    Vec reduce(const Mat& rows, const std::vector<int>& pivots, Vec v) const {
        for (size_t r = 0; r < rows.size(); ++r) {
            int c = pivots[r];
            if (v[c] == 0) continue;
            int f = v[c]; // rows are normalized: rows[r][c] == 1
            for (int j = 0; j < dim; ++j) {
                int x = v[j] - f * rows[r][j];
                v[j] = (uint8_t)(((x % p) + p) % p);
            }
        }
        return v;
    }

    // rank of an arbitrary list of vectors
    int rank(std::vector<Vec> vs) const {
        int rk = 0;
        int col = 0;
        for (; col < dim && rk < (int)vs.size(); ++col) {
            int piv = -1;
            for (int i = rk; i < (int)vs.size(); ++i)
                if (vs[i][col] != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) continue;
            std::swap(vs[rk], vs[piv]);
            int inv = 1;
            while ((vs[rk][col] * inv) % p != 1) ++inv;
            for (int j = 0; j < dim; ++j) vs[rk][j] = (uint8_t)(vs[rk][j] * inv % p);
            for (int i = 0; i < (int)vs.size(); ++i) {
                if (i == rk || vs[i][col] == 0) continue;
                int f = vs[i][col];
                for (int j = 0; j < dim; ++j) {
                    int x = vs[i][j] - f * vs[rk][j];
                    vs[i][j] = (uint8_t)(((x % p) + p) % p);
                }
            }
            ++rk;
        }
        return rk;
    }
};

// enumerate reduced-echelon bases of all k-dim subspaces of F_p^dim
template <class F>
void for_each_subspace(int p, int dim, int k, F&& fn) {
    if (k == 0) {
        Mat empty;
        std::vector<int> piv;
        fn(empty, piv);
        return;
    }
    std::vector<int> cols(k);
    // choose pivot columns 0 <= c0 < c1 < ... < c_{k-1} < dim
    auto rec_cols = [&](auto&& self, int idx, int start) -> void {
        if (idx == k) {
            // free positions: row r, column j: j > cols[r], j not a pivot col
            std::vector<std::pair<int, int>> free_pos;
            for (int r = 0; r < k; ++r)
                for (int j = cols[r] + 1; j < dim; ++j) {
                    bool is_piv = false;
                    for (int s = 0; s < k; ++s)
                        if (cols[s] == j) is_piv = true;
                    if (!is_piv) free_pos.push_back({r, j});
                }
            size_t nf = free_pos.size();
            std::vector<int> vals(nf, 0);
            while (true) {
                Mat rows(k, Vec(dim, 0));
                for (int r = 0; r < k; ++r) rows[r][cols[r]] = 1;
                for (size_t t = 0; t < nf; ++t) rows[free_pos[t].first][free_pos[t].second] =
                    (uint8_t)vals[t];
                fn(rows, cols);
                size_t t = 0;
                while (t < nf && ++vals[t] == p) vals[t++] = 0;
                if (t == nf) break;
            }
        } else {
            for (int c = start; c < dim; ++c) {
                cols[idx] = c;
                self(self, idx + 1, c + 1);
            }
        }
    };
    rec_cols(rec_cols, 0, 0);
}

struct CensusKey {
    Partition lam;
    int q, d;
    auto operator<=>(const CensusKey&) const = default;
};

std::map<CensusKey, std::vector<TorsionTriple>> g_census_cache;
std::mutex g_census_mutex;

} // namespace

std::vector<TorsionTriple> local_submodule_census(const Partition& lam, int q, int d) {
    CensusKey key{lam, q, d};
    {
        std::lock_guard<std::mutex> lk(g_census_mutex);
        auto it = g_census_cache.find(key);
        if (it != g_census_cache.end()) return it->second;
    }

    int N = lam.biggest();
    int D = d * lam.weight(); // F_q-dimension of the module
    if (D > 12) throw unsupported_shape("local_submodule_census: module too large");

    // pi: u (d = 1) or a monic irreducible of degree d (any one; the
    // count depends only on d). Build the mult-by-u operator on
    // M = (+) F_q[u]/pi^{lam_i}.
    fp::Poly pi;
    if (d == 1) pi = fp::Poly{0, 1};
    else pi = fp::monic_irreducibles(d, q).at(0);

    FpSpace sp{q, D};
    Mat U(D, Vec(D, 0));
    std::vector<int> block_start;
    {
        int off = 0;
        for (int part : lam.parts) {
            block_start.push_back(off);
            int bd = d * part; // dim of F_q[u]/pi^part
            fp::Poly mod_poly{1};
            for (int i = 0; i < part; ++i) mod_poly = fp::mul(mod_poly, pi, q);
            // column j of the block: u * u^j mod pi^part
            for (int j = 0; j < bd; ++j) {
                fp::Poly uj(j + 2, 0);
                uj[j + 1] = 1; // u^(j+1)
                fp::Poly red = fp::mod(uj, mod_poly, q);
                for (int i = 0; i < (int)red.size(); ++i) U[off + i][off + j] = red[i];
            }
            off += bd;
        }
    }

    // powers of pi(U) as matrices, for type detection
    Mat piU(D, Vec(D, 0));
    {
        // pi(U) = sum pi_i U^i
        Mat P(D, Vec(D, 0));
        Mat Upow(D, Vec(D, 0));
        for (int i = 0; i < D; ++i) Upow[i][i] = 1;
        for (int i = 0; i < (int)pi.size(); ++i) {
            for (int r = 0; r < D; ++r)
                for (int c = 0; c < D; ++c) P[r][c] = (uint8_t)((P[r][c] + pi[i] * Upow[r][c]) % q);
            // Upow *= U
            Mat next(D, Vec(D, 0));
            for (int r = 0; r < D; ++r)
                for (int c = 0; c < D; ++c) {
                    int acc = 0;
                    for (int k = 0; k < D; ++k) acc += Upow[r][k] * U[k][c];
                    next[r][c] = (uint8_t)(acc % q);
                }
            Upow = next;
        }
        piU = P;
    }
    std::vector<Mat> piU_pow(N + 1, Mat(D, Vec(D, 0)));
    for (int i = 0; i < D; ++i) piU_pow[0][i][i] = 1;
    for (int k = 1; k <= N; ++k)
        for (int r = 0; r < D; ++r)
            for (int c = 0; c < D; ++c) {
                int acc = 0;
                for (int t = 0; t < D; ++t) acc += piU_pow[k - 1][r][t] * piU[t][c];
                piU_pow[k][r][c] = (uint8_t)(acc % q);
            }

    // type of the restriction of the module structure to a subspace given
    // by echelon rows: m_k = (#parts >= k) = (dimker pi^k - dimker pi^{k-1})/d
    auto type_of_sub = [&](const Mat& rows) -> Partition {
        int k0 = (int)rows.size();
        std::vector<int> dimker(N + 1, 0);
        dimker[0] = 0;
        for (int k = 1; k <= N; ++k) {
            std::vector<Vec> imgs;
            for (auto& r : rows) imgs.push_back(sp.mul_mat_vec(piU_pow[k], r));
            int rk = sp.rank(imgs);
            dimker[k] = k0 - rk;
        }
        // nparts[k-1] = #parts >= k; recover the partition from that
        std::vector<int> nparts(N, 0);
        for (int k = 1; k <= N; ++k) nparts[k - 1] = (dimker[k] - dimker[k - 1]) / d;
        std::vector<int> out;
        for (int i = 0; i < lam.weight(); ++i) {
            int cnt = 0;
            for (int k = 1; k <= N; ++k)
                if (nparts[k - 1] > i) ++cnt;
            if (cnt == 0) break;
            out.push_back(cnt);
        }
        return Partition(out);
    };

    // type of the quotient M/W: dim ker(pi^k on M/W) = D - dim(pi^k M + W) + dim W
    auto type_of_quot = [&](const Mat& rows) -> Partition {
        int dw = (int)rows.size();
        std::vector<int> dimker(N + 1, 0);
        for (int k = 1; k <= N; ++k) {
            std::vector<Vec> span;
            for (int c = 0; c < D; ++c) {
                Vec col(D, 0);
                for (int r = 0; r < D; ++r) col[r] = piU_pow[k][r][c];
                span.push_back(col);
            }
            for (auto& r : rows) span.push_back(r);
            int rk = sp.rank(span);
            dimker[k] = (D - dw) - (rk - dw);
        }
        std::vector<int> nparts(N, 0);
        for (int k = 1; k <= N; ++k) nparts[k - 1] = (dimker[k] - dimker[k - 1]) / d;
        std::vector<int> out;
        for (int i = 0; i < lam.weight(); ++i) {
            int cnt = 0;
            for (int k = 1; k <= N; ++k)
                if (nparts[k - 1] > i) ++cnt;
            if (cnt == 0) break;
            out.push_back(cnt);
        }
        return Partition(out);
    };

    std::map<std::pair<Partition, Partition>, long long> counts;
    for (int k = 0; k <= D; ++k) {
        for_each_subspace(q, D, k, [&](const Mat& rows, const std::vector<int>& pivots) {
            // u-stability
            for (auto& r : rows) {
                Vec img = sp.mul_mat_vec(U, r);
                Vec res = sp.reduce(rows, pivots, img);
                for (auto x : res)
                    if (x) return;
            }
            Partition sub = type_of_sub(rows);
            Partition quot = type_of_quot(rows);
            counts[{sub, quot}]++;
        });
    }

    std::vector<TorsionTriple> out;
    for (auto& [key2, cnt] : counts) out.push_back({key2.first, key2.second, cnt});

    std::lock_guard<std::mutex> lk(g_census_mutex);
    g_census_cache[key] = out;
    return out;
}

long long local_hall(const Partition& C, const Partition& A, const Partition& B, int q, int d) {
    if (A.weight() + B.weight() != C.weight()) return 0;
    for (auto& t : local_submodule_census(C, q, d))
        if (t.sub == A && t.quot == B) return t.count;
    return 0;
}

} // namespace hallq
