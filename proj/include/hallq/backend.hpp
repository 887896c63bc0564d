#pragma once

#include <memory>

#include "hallq/cohp1.hpp"
#include "hallq/quiver.hpp"
#include "hallq/scalar.hpp"
#include "hallq/torsion_local.hpp"

namespace hallq {

// One interface over the three finitary categories. The algebra layer
// only talks to this.
class Backend {
    std::shared_ptr<CohP1Backend> coh_;
    std::shared_ptr<TorsionLocalBackend> tors_;
    std::shared_ptr<QuiverBackend> quiv_;
    BackendTag tag_;
    int q_;

public:
    static Backend coh_p1(int q) {
        Backend b;
        b.tag_ = BackendTag::CohP1;
        b.q_ = q;
        b.coh_ = std::make_shared<CohP1Backend>(q);
        return b;
    }
    static Backend torsion_local(int q) {
        Backend b;
        b.tag_ = BackendTag::TorsionLocal;
        b.q_ = q;
        b.tors_ = std::make_shared<TorsionLocalBackend>(q);
        return b;
    }
    static Backend quiver(const QuiverSpec& spec) {
        Backend b;
        b.tag_ = BackendTag::Quiver;
        b.q_ = spec.q;
        b.quiv_ = std::make_shared<QuiverBackend>(spec);
        return b;
    }

    BackendTag tag() const { return tag_; }
    int q() const { return q_; }
    const CohP1Backend& coh() const { return *coh_; }
    const QuiverBackend& quiv() const { return *quiv_; }
    const TorsionLocalBackend& torsl() const { return *tors_; }

    ObjLabel zero() const { return ObjLabel::zero(tag_); }

    KClass class_of(const ObjLabel& a) const {
        check(a);
        switch (tag_) {
            case BackendTag::CohP1: return coh_->class_of(a);
            case BackendTag::TorsionLocal: return tors_->class_of(a);
            case BackendTag::Quiver: return quiv_->class_of(a);
        }
        return {};
    }

    long long euler_chi(const KClass& a, const KClass& b) const {
        switch (tag_) {
            case BackendTag::CohP1: return coh_->euler_chi(a, b);
            case BackendTag::TorsionLocal: return 0;
            case BackendTag::Quiver: return quiv_->euler_chi(a, b);
        }
        return 0;
    }

    // <a,b> = v^chi(a,b)
    Scalar euler_form(const KClass& a, const KClass& b) const {
        return Scalar::v_pow(euler_chi(a, b), q_);
    }
    // (a|b) = v^{chi(a,b)+chi(b,a)}
    Scalar sym_form(const KClass& a, const KClass& b) const {
        return Scalar::v_pow(euler_chi(a, b) + euler_chi(b, a), q_);
    }

    bigint aut_order(const ObjLabel& a) const {
        check(a);
        switch (tag_) {
            case BackendTag::CohP1: return coh_->aut_order(a);
            case BackendTag::TorsionLocal: return tors_->aut_order(a);
            case BackendTag::Quiver: return quiv_->aut_order(a);
        }
        return 1;
    }

    long long hall_number(const ObjLabel& a, const ObjLabel& b, const ObjLabel& c) const {
        check(a);
        check(b);
        check(c);
        switch (tag_) {
            case BackendTag::CohP1: return coh_->hall_number(a, b, c);
            case BackendTag::TorsionLocal: return tors_->hall_number(a, b, c);
            case BackendTag::Quiver: return quiv_->hall_number(a, b, c);
        }
        return 0;
    }

    std::vector<std::tuple<ObjLabel, ObjLabel, long long>> subquotient_pairs(
        const ObjLabel& c, const Window& w) const {
        check(c);
        switch (tag_) {
            case BackendTag::CohP1: return coh_->subquotient_pairs(c, w);
            case BackendTag::TorsionLocal: return tors_->subquotient_pairs(c);
            case BackendTag::Quiver: return quiv_->subquotient_pairs(c);
        }
        return {};
    }

    std::vector<ObjLabel> window_objects(const Window& w) const {
        switch (tag_) {
            case BackendTag::CohP1: return coh_->window_objects(w);
            case BackendTag::TorsionLocal: return tors_->window_objects(w.maxTorsionLength);
            case BackendTag::Quiver: {
                std::vector<int> box = w.maxDims;
                if (box.empty()) box.assign((size_t)quiv_->spec().nv, w.maxRank);
                return quiv_->window_objects(box);
            }
        }
        return {};
    }

    // orbifold number of exact sequences 0 -> M -> B -> A -> N -> 0
    // divided by |Aut A| |Aut B|
    Rational g_four(const ObjLabel& a, const ObjLabel& b, const ObjLabel& m, const ObjLabel& n,
                    const Window& w) const;

private:
    void check(const ObjLabel& a) const {
        if (a.tag != tag_) throw backend_mismatch("ObjLabel from a different backend");
    }
    std::vector<ObjLabel> transit_candidates(const KClass& cl, const ObjLabel& a,
                                             const ObjLabel& b, const Window& w) const;
};

} // namespace hallq
