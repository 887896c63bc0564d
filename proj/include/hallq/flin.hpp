#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace hallq {
namespace flin {

using Vec = std::vector<uint8_t>;
using Mat = std::vector<Vec>; // row major

inline Mat identity(int n) {
    Mat m(n, Vec(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline Vec matvec(const Mat& M, const Vec& v, int p) {
    Vec r(M.size(), 0);
    for (size_t i = 0; i < M.size(); ++i) {
        int acc = 0;
        for (size_t j = 0; j < v.size(); ++j) acc += M[i][j] * v[j];
        r[i] = (uint8_t)(acc % p);
    }
    return r;
}

inline Mat matmul(const Mat& A, const Mat& B, int p) {
    size_t n = A.size(), m = B.empty() ? 0 : B[0].size(), k = B.size();
    Mat C(n, Vec(m, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t t = 0; t < k; ++t) {
            if (A[i][t] == 0) continue;
            for (size_t j = 0; j < m; ++j) C[i][j] = (uint8_t)((C[i][j] + A[i][t] * B[t][j]) % p);
        }
    return C;
}

inline int inv_mod(int a, int p) {
    int t = 0, newt = 1, r = p, newr = a % p;
    while (newr != 0) {
        int q = r / newr;
        int tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    return ((t % p) + p) % p;
}

// Bring rows into reduced echelon form in place; returns pivot columns.
inline std::vector<int> rref(Mat& rows, int p) {
    std::vector<int> pivots;
    int r = 0;
    int ncols = rows.empty() ? 0 : (int)rows[0].size();
    for (int c = 0; c < ncols && r < (int)rows.size(); ++c) {
        int piv = -1;
        for (int i = r; i < (int)rows.size(); ++i)
            if (rows[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(rows[r], rows[piv]);
        int inv = inv_mod(rows[r][c], p);
        for (int j = 0; j < ncols; ++j) rows[r][j] = (uint8_t)(rows[r][j] * inv % p);
        for (int i = 0; i < (int)rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            int f = rows[i][c];
            for (int j = 0; j < ncols; ++j) {
                int x = rows[i][j] - f * rows[r][j];
                rows[i][j] = (uint8_t)(((x % p) + p) % p);
            }
        }
        pivots.push_back(c);
        ++r;
    }
    rows.resize(pivots.size());
    return pivots;
}

inline int rank(Mat rows, int p) { return (int)rref(rows, p).size(); }

// residue of v modulo the span of RREF rows
inline Vec reduce(const Mat& rows, const std::vector<int>& pivots, Vec v, int p) {
    for (size_t r = 0; r < rows.size(); ++r) {
        int c = pivots[r];
        if (v[c] == 0) continue;
        int f = v[c];
        for (size_t j = 0; j < v.size(); ++j) {
            int x = v[j] - f * rows[r][j];
            v[j] = (uint8_t)(((x % p) + p) % p);
        }
    }
    return v;
}

inline bool in_span(const Mat& rows, const std::vector<int>& pivots, const Vec& v, int p) {
    Vec res = reduce(rows, pivots, v, p);
    for (auto x : res)
        if (x) return false;
    return true;
}

// Enumerate all k-dim subspaces of F_p^dim as RREF bases.
inline void for_each_subspace(int p, int dim, int k,
                              const std::function<void(const Mat&, const std::vector<int>&)>& fn) {
    if (k == 0) {
        Mat empty;
        std::vector<int> piv;
        fn(empty, piv);
        return;
    }
    if (k > dim) return;
    std::vector<int> cols(k);
    auto rec = [&](auto&& self, int idx, int start) -> void {
        if (idx == k) {
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
                for (size_t t = 0; t < nf; ++t)
                    rows[free_pos[t].first][free_pos[t].second] = (uint8_t)vals[t];
                std::vector<int> piv(cols.begin(), cols.end());
                fn(rows, piv);
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
    rec(rec, 0, 0);
}

// Collect all of them (convenient for parallel loops over an index).
inline std::vector<std::pair<Mat, std::vector<int>>> all_subspaces(int p, int dim, int k) {
    std::vector<std::pair<Mat, std::vector<int>>> out;
    for_each_subspace(p, dim, k, [&](const Mat& m, const std::vector<int>& piv) {
        out.push_back({m, piv});
    });
    return out;
}

// All invertible d x d matrices over F_p together with inverses.
std::vector<std::pair<Mat, Mat>> gl_elements(int d, int p);

} // namespace flin
} // namespace hallq
