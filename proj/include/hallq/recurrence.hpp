#pragma once

#include <optional>
#include <vector>

#include "hallq/ratfn.hpp"

namespace hallq {

// A sequence given by initial terms plus a linear recurrence
//   x_n = sum_i rec[i] * x_{n-1-i}   for n >= offset,
// over Q(sqrt q). Construction re-checks the recurrence against every
// supplied term.
struct RecurrenceSeries {
    std::vector<Scalar> initial;
    std::vector<Scalar> rec;
    int offset = 0;

    Scalar term(int n) const {
        if (n < (int)initial.size()) return initial[(size_t)n];
        std::vector<Scalar> buf = initial;
        for (int k = (int)initial.size(); k <= n; ++k) {
            Scalar c(initial.empty() ? rec.front().q() : initial.front().q());
            for (size_t i = 0; i < rec.size(); ++i) c += rec[i] * buf[k - 1 - i];
            buf.push_back(c);
        }
        return buf[(size_t)n];
    }
};

namespace detail {

// Solve A x = b over Q(sqrt q) by Gaussian elimination.
// Returns nullopt when the system is inconsistent or underdetermined
// columns are fixed to zero (we only need *a* solution; the re-expansion
// check validates it).
inline std::optional<std::vector<Scalar>> solve_linear(std::vector<std::vector<Scalar>> A,
                                                       std::vector<Scalar> b) {
    size_t rows = A.size();
    if (rows == 0) return std::vector<Scalar>{};
    size_t cols = A[0].size();
    std::vector<size_t> pivot_col;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && A[piv][c].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(A[piv], A[r]);
        std::swap(b[piv], b[r]);
        Scalar inv = A[r][c].inv();
        for (size_t j = c; j < cols; ++j) A[r][j] *= inv;
        b[r] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || A[i][c].is_zero()) continue;
            Scalar f = A[i][c];
            for (size_t j = c; j < cols; ++j) A[i][j] -= f * A[r][j];
            b[i] -= f * b[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (size_t i = r; i < rows; ++i)
        if (!b[i].is_zero()) return std::nullopt;
    long long qq = b.empty() ? 0 : b[0].q();
    std::vector<Scalar> x(cols, Scalar(qq));
    for (size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = b[i];
    return x;
}

} // namespace detail

// Reconstruct the unique minimal rational function whose power series
// expansion matches all supplied terms, assuming a linear recurrence of
// order <= max_order holds from some starting index <= max_order.
// Exact Hankel-style solve; the re-expansion check is mandatory.
inline RationalFn series_to_rational(const std::vector<Scalar>& terms, int max_order,
                                     const std::string& var = "t") {
    if (terms.empty()) throw error("series_to_rational: no terms");
    long long qq = terms[0].q();
    int n = (int)terms.size();
    int best_residual = 0;

    for (int r = 0; r <= max_order; ++r) {
        // Try recurrence of order r valid for indices n0 <= k < n with
        // n0 as small as possible (at most max_order + r).
        for (int n0 = r; n0 <= std::min(n, max_order + r); ++n0) {
            if (n - n0 < r) break; // not enough equations to pin r coeffs
            std::vector<std::vector<Scalar>> A;
            std::vector<Scalar> b;
            for (int k = n0; k < n; ++k) {
                std::vector<Scalar> row;
                row.reserve(r);
                for (int i = 1; i <= r; ++i) row.push_back(terms[k - i]);
                A.push_back(std::move(row));
                b.push_back(terms[k]);
            }
            auto sol = detail::solve_linear(A, b);
            if (!sol) continue;
            // Build Q(t) = 1 - sum c_i t^i, P = (series * Q) truncated.
            LaurentPoly Q(qq, var);
            Q.set(0, Scalar::integer(1, qq));
            for (int i = 1; i <= r; ++i) Q.add(i, -(*sol)[i - 1]);
            LaurentPoly P(qq, var);
            for (int k = 0; k < n0; ++k) {
                Scalar c = terms[k];
                for (int i = 1; i <= r && i <= k; ++i) c -= (*sol)[i - 1] * terms[k - i];
                P.add(k, c);
            }
            RationalFn f(P, Q);
            // mandatory re-expansion check against *all* supplied terms
            auto re = f.series(n);
            bool ok = true;
            int pos = 0;
            for (int k = 0; k < n; ++k) {
                if (re[k] != terms[k]) {
                    ok = false;
                    pos = k;
                    break;
                }
            }
            if (ok) return f;
            best_residual = std::max(best_residual, pos);
        }
    }
    throw no_recurrence("series_to_rational: no recurrence of order <= " +
                            std::to_string(max_order) + " fits",
                        best_residual);
}

} // namespace hallq
