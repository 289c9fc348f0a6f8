#pragma once

// *-actions of the built-in Hopf algebras on model algebras.
//
// UEAAction extends a Lie action by *-derivations: the PBW monomial
// xi_1^k1 ... xi_d^kd acts as D_1^k1 o ... o D_d^kd. GroupAction lets a finite
// group act by *-automorphisms given on the algebra basis.

#include <memory>
#include <string>
#include <vector>

#include "hopfmorita/algebra.hpp"
#include "hopfmorita/group_hopf.hpp"
#include "hopfmorita/hopf.hpp"
#include "hopfmorita/lie_action.hpp"
#include "hopfmorita/uea.hpp"

namespace hopfmorita {

class UEAAction {
public:
    using Hopf = UEA;

    UEAAction(UEAPtr hopf, LieAction lie) : hopf_(std::move(hopf)), lie_(std::move(lie)) {
        if (hopf_->dim() != lie_.dim()) throw ConstructionError("Lie action and enveloping algebra differ in dimension");
    }

    /// Enveloping algebra of the action's own brackets, truncated at N.
    static UEAAction extend(LieAction lie, int truncation) {
        auto h = make_uea(lie.brackets(), truncation);
        return UEAAction(std::move(h), std::move(lie));
    }

    const UEA& hopf() const { return *hopf_; }
    const UEAPtr& hopf_ptr() const { return hopf_; }
    const AlgebraPtr& algebra() const { return lie_.algebra(); }
    const LieAction& lie() const { return lie_; }

    Element act(const Monomial& m, const Element& a) const {
        Element out = a;
        for (int i = hopf_->dim() - 1; i >= 0; --i)
            for (int k = 0; k < m.at(static_cast<std::size_t>(i)); ++k) out = lie_.apply(i, out);
        return out;
    }

    Element act(const Linear<Monomial>& g, const Element& a) const {
        Element out = Element::zero(algebra());
        for (const auto& [m, c] : g) out += act(m, a) * c;
        return out;
    }

private:
    UEAPtr hopf_;
    LieAction lie_;
};

class GroupAction {
public:
    using Hopf = GroupHopf;

    /// images[g][k] = g acting on basis vector k.
    GroupAction(GroupHopfPtr hopf, AlgebraPtr alg, std::vector<std::vector<BasisVec>> images)
        : hopf_(std::move(hopf)), alg_(std::move(alg)), images_(std::move(images)) {
        if (!alg_->finite()) throw UnsupportedModelError("group actions need a finite model");
        if (static_cast<int>(images_.size()) != hopf_->order())
            throw ConstructionError("need one automorphism per group element");
        for (const auto& row : images_)
            if (row.size() != alg_->dim()) throw ConstructionError("automorphism must cover every basis vector");
    }

    /// Each group element permutes the basis: perms[g][k] is the image index of k.
    static GroupAction from_permutations(GroupHopfPtr hopf, AlgebraPtr alg, const std::vector<std::vector<long>>& perms) {
        std::vector<std::vector<BasisVec>> images;
        for (const auto& p : perms) {
            std::vector<BasisVec> row;
            for (long k : p) row.emplace_back(k);
            images.push_back(std::move(row));
        }
        return GroupAction(std::move(hopf), std::move(alg), std::move(images));
    }

    static GroupAction trivial(GroupHopfPtr hopf, AlgebraPtr alg) {
        std::vector<long> id;
        for (std::size_t k = 0; k < alg->dim(); ++k) id.push_back(static_cast<long>(k));
        std::vector<std::vector<long>> perms(static_cast<std::size_t>(hopf->order()), id);
        return from_permutations(std::move(hopf), std::move(alg), perms);
    }

    const GroupHopf& hopf() const { return *hopf_; }
    const GroupHopfPtr& hopf_ptr() const { return hopf_; }
    const AlgebraPtr& algebra() const { return alg_; }

    Element act(int g, const Element& a) const {
        BasisVec out;
        const auto& row = images_.at(static_cast<std::size_t>(g));
        for (const auto& [k, c] : a.coeffs()) out.add_scaled(row.at(static_cast<std::size_t>(k)), c);
        return Element(alg_, out);
    }

    Element act(const Linear<int>& g, const Element& a) const {
        Element out = Element::zero(alg_);
        for (const auto& [k, c] : g) out += act(k, a) * c;
        return out;
    }

private:
    GroupHopfPtr hopf_;
    AlgebraPtr alg_;
    std::vector<std::vector<BasisVec>> images_;
};

template <class A>
concept HopfAction = requires(const A& act, const typename A::Hopf::Key& k, const Element& a) {
    requires HopfStarAlgebra<typename A::Hopf>;
    { act.hopf() } -> std::convertible_to<const typename A::Hopf&>;
    { act.algebra() } -> std::convertible_to<AlgebraPtr>;
    { act.act(k, a) } -> std::convertible_to<Element>;
};

/// The five *-action axioms on all Hopf basis keys against the algebra basis
/// (|k| <= window on Laurent): module, unit, module-algebra, unit-preservation, star.
template <HopfAction Act>
Report star_action_report(const Act& action, int window = 3) {
    using K = typename Act::Hopf::Key;
    const auto& h = action.hopf();
    const auto& alg = action.algebra();
    Report r("hopf *-action on " + alg->name());
    r.info()["truncation"] = h.truncation();
    if (!alg->finite()) r.info()["window"] = window;

    auto& module = r.check("module");
    auto& unit = r.check("unit");
    auto& modalg = r.check("module-algebra");
    auto& unit_pres = r.check("unit-preservation");
    auto& star = r.check("star");

    const auto keys = h.basis();
    const auto abasis = alg->basis_window(window);
    const Element one = Element::one(alg);

    for (BasisIndex a : abasis) {
        Element ea = Element::basis(alg, a);
        unit.expect(action.act(h.unit_key(), ea) == ea, alg->label(a));
    }
    for (const K& g : keys) {
        const std::string lg = h.label(g);
        unit_pres.expect(action.act(g, one) == one * h.counit(g), lg);
        const Linear<K> sgs = hopf_star(h, h.antipode(g));
        const auto delta = h.coproduct(g);
        for (BasisIndex a : abasis) {
            Element ea = Element::basis(alg, a);
            star.expect(action.act(g, ea).star() == action.act(sgs, ea.star()), lg + " on " + alg->label(a));
            for (const K& k : keys) {
                if (!multipliable(h, g, k)) continue;
                Element lhs = action.act(g, action.act(k, ea));
                Element rhs = action.act(h.mul(g, k), ea);
                module.expect(lhs == rhs, lg + " * " + h.label(k) + " on " + alg->label(a));
            }
            for (BasisIndex b : abasis) {
                Element eb = Element::basis(alg, b);
                Element rhs = Element::zero(alg);
                for (const auto& t : delta) rhs += action.act(t.left, ea) * action.act(t.right, eb) * t.coeff;
                modalg.expect(action.act(g, ea * eb) == rhs, lg + " on " + alg->label(a) + "*" + alg->label(b));
            }
        }
    }
    return r;
}

}  // namespace hopfmorita
