#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hallq {

// Dense univariate polynomials over F_p (p a small prime), coefficients
// lowest-first with no trailing zeros. Used for closed points of P^1 and
// for binary-form gcd/factor work in the subsheaf counting kernels.
namespace fp {

using Poly = std::vector<uint8_t>;

inline int deg(const Poly& f) { return (int)f.size() - 1; } // deg(0) = -1

Poly trim(Poly f);
Poly add(const Poly& a, const Poly& b, int p);
Poly sub(const Poly& a, const Poly& b, int p);
Poly mul(const Poly& a, const Poly& b, int p);
Poly mod(Poly a, const Poly& b, int p);
Poly divexact(const Poly& a, const Poly& b, int p);
Poly monic(Poly f, int p);
Poly gcd(Poly a, Poly b, int p);

// x^k mod f
Poly powmod_x(long long k, const Poly& f, int p);

bool is_irreducible(const Poly& f, int p);

// all monic irreducible polynomials of the given degree, in lex order of
// coefficient vectors
std::vector<Poly> monic_irreducibles(int degree, int p);

// multiplicity of the irreducible pi in f
int ord_at(const Poly& f, const Poly& pi, int p);

std::string poly_str(const Poly& f); // "t^2+t+1" style

Poly parse_poly(const std::string& s, int p);

} // namespace fp
} // namespace hallq
