#pragma once

#include "hallq/hall_ops.hpp"
#include "hallq/report.hpp"

namespace hallq {

// Gaussian binomial [m choose l]_q as a polynomial value (q-Pascal
// recursion, exact and total).
Scalar gauss_binomial(int m, int l, const Scalar& qParam);

// Quantum Serre relation (the alternating sum over l of
// (-1)^l [1-a_ij choose l] e_i^l e_j e_i^{1-a_ij-l}) evaluated in the
// quiver Ringel algebra with e_i = [V(i)]. Exact vanishing requires the
// balanced binomial v^{-l(m-l)} [m choose l]_q; the plain q-binomial
// does not annihilate the sum (recorded in the discrepancy ledger).
Report serre_check(const QuiverSpec& spec, int i, int j);
// the resulting element itself, for tests
AlgElem serre_sum(const QuiverSpec& spec, int i, int j);

// x(a)x(b+1) - q x(a+1)x(b) = q x(b+1)x(a) - x(b)x(a+1) under
// x(n) -> [O(n)], plus the coefficientwise (t1 - qt2)-form re-exported
// from the automorphic layer.
Report drinfeld_quadratic_check(int range, int q);

// For rank-2 degree d in the window: ordered monomials in the [O(i)]
// biject with splitting types, expand triangularly with invertible
// change of basis.
Report monomial_basis_check(int d, const Window& w, int q);

} // namespace hallq
