#pragma once

#include "hallq/algelem.hpp"
#include "hallq/backend.hpp"
#include "hallq/report.hpp"

namespace hallq {

// The algebra engine over one finitary backend: Hall product, Ringel
// twist, the K-extended algebra B(A), the windowed Green coproduct,
// counit, antipode and the Green pairing.
class HallAlgebra {
    Backend be_;

    mutable std::map<std::pair<ObjLabel, ObjLabel>, AlgElem> prod_cache_;
    mutable std::mutex mutex_;

    // complete support of [A] o [B]
    std::vector<ObjLabel> product_support(const ObjLabel& a, const ObjLabel& b) const;

public:
    explicit HallAlgebra(Backend be) : be_(std::move(be)) {}
    const Backend& backend() const { return be_; }
    long long q() const { return be_.q(); }

    AlgElem zero() const { return AlgElem(q()); }
    AlgElem one() const { return basis(be_.zero()); }
    AlgElem basis(const ObjLabel& a) const {
        return AlgElem::basis(q(), {KClass(), a}, Scalar::integer(1, q()));
    }
    AlgElem basis_k(const KClass& kappa, const ObjLabel& a) const {
        return AlgElem::basis(q(), {kappa, a}, Scalar::integer(1, q()));
    }
    AlgElem cartan(const KClass& kappa) const { return basis_k(kappa, be_.zero()); }

    // [A] o [B] on object terms (Cartan parts must be trivial)
    AlgElem hall_mul(const AlgElem& x, const AlgElem& y) const;
    // [A] * [B] = <B,A> [A] o [B]
    AlgElem ringel_mul(const AlgElem& x, const AlgElem& y) const;
    // full product of B(A): K_k[A] K_l[B] = (Abar|l) K_{k+l} ([A]*[B])
    AlgElem b_mul(const AlgElem& x, const AlgElem& y) const;

    TensorElem tensor_mul(const TensorElem& x, const TensorElem& y) const;

    // windowed Green coproduct
    TensorElem coproduct(const AlgElem& x, const Window& w) const;
    // true when the coproduct of every term of x, restricted to the
    // bidegree (g1, class - g1), is provably complete inside w
    bool coproduct_complete_at(const ObjLabel& a, const KClass& g1, const Window& w) const;

    Scalar counit(const AlgElem& x) const;

    // antipode by convolution-inverse recursion; throws
    // window_insufficient when flag quotients provably leave the window
    AlgElem antipode(const AlgElem& x, const Window& w) const;
    // independent oracle: the alternating flag-sum formula
    AlgElem antipode_flag(const AlgElem& x, const Window& w) const;

    // (K_a[A], K_b[B]) = (a|b) delta_{AB} / |Aut A| (hermitian; the
    // conjugation on Q(sqrt q) is the identity, kept as a hook)
    Scalar green_pair(const AlgElem& x, const AlgElem& y) const;
    Scalar green_pair_tensor(const TensorElem& x, const TensorElem& y) const;

    // verification suites
    Report verify_bialgebra(const Window& w,
                            const std::vector<std::pair<AlgElem, AlgElem>>& samples) const;
    Report verify_hopf(const Window& w, const std::vector<AlgElem>& samples) const;
    Report verify_pair_adjoint(const Window& w,
                               const std::vector<std::tuple<AlgElem, AlgElem, AlgElem>>& samples)
        const;
};

} // namespace hallq
