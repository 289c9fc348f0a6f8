#pragma once

// The convolution algebra Hom(H, A), the group U(H, A) cut out by the
// normalization, cocycle, centrality and unitarity conditions, convolution
// inverses and the hat map c -> c (g |> c^-1).
//
// All identities are checked on Hopf basis keys, hence "verified to order N"
// for truncated enveloping algebras.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "hopfmorita/algebra.hpp"
#include "hopfmorita/exp.hpp"
#include "hopfmorita/hopf_action.hpp"

namespace hopfmorita {

template <HopfStarAlgebra H>
class ConvolutionMap {
public:
    using Key = typename H::Key;

    ConvolutionMap() = default;
    ConvolutionMap(std::shared_ptr<const H> hopf, AlgebraPtr target) : hopf_(std::move(hopf)), target_(std::move(target)) {}

    /// e(g) = epsilon(g) 1.
    static ConvolutionMap unit(std::shared_ptr<const H> hopf, AlgebraPtr target) {
        ConvolutionMap m(hopf, target);
        for (const Key& g : hopf->basis()) m.set(g, Element::one(target) * hopf->counit(g));
        return m;
    }

    const H& hopf() const { return *hopf_; }
    const std::shared_ptr<const H>& hopf_ptr() const { return hopf_; }
    const AlgebraPtr& target() const { return target_; }

    void set(const Key& g, const Element& v) {
        if (v.algebra() && v.algebra() != target_) throw DomainError("convolution value lies in a different algebra");
        values_[g] = Element(target_, v.coeffs());
    }

    Element value(const Key& g) const {
        auto it = values_.find(g);
        return it == values_.end() ? Element::zero(target_) : it->second;
    }

    Element value(const Linear<Key>& g) const {
        Element out = Element::zero(target_);
        for (const auto& [k, c] : g) out += value(k) * c;
        return out;
    }

    const std::map<Key, Element>& values() const { return values_; }

    friend bool operator==(const ConvolutionMap& a, const ConvolutionMap& b) {
        if (a.hopf_ != b.hopf_ || a.target_ != b.target_) return false;
        for (const Key& g : a.hopf_->basis())
            if (!(a.value(g) == b.value(g))) return false;
        return true;
    }

private:
    std::shared_ptr<const H> hopf_;
    AlgebraPtr target_;
    std::map<Key, Element> values_;
};

template <HopfStarAlgebra H>
void require_compatible(const ConvolutionMap<H>& a, const ConvolutionMap<H>& b) {
    if (a.hopf_ptr() != b.hopf_ptr()) throw DomainError("convolution maps on different Hopf algebras");
    if (a.target() != b.target()) throw DomainError("convolution maps into different algebras");
}

/// (a * b)(g) = a(g_(1)) b(g_(2)).
template <HopfStarAlgebra H>
ConvolutionMap<H> convolve(const ConvolutionMap<H>& a, const ConvolutionMap<H>& b) {
    require_compatible(a, b);
    ConvolutionMap<H> out(a.hopf_ptr(), a.target());
    for (const auto& g : a.hopf().basis()) {
        Element v = Element::zero(a.target());
        for (const auto& t : a.hopf().coproduct(g)) v += a.value(t.left) * b.value(t.right) * t.coeff;
        out.set(g, v);
    }
    return out;
}

template <HopfAction Act>
using ConvolutionMapFor = ConvolutionMap<typename Act::Hopf>;

/// Normalization, cocycle, centrality and unitarity on all basis keys (pairs
/// within truncation) against the algebra basis (|k| <= window on Laurent).
template <HopfAction Act>
Report u_membership(const ConvolutionMapFor<Act>& a, const Act& action, int window = 3) {
    using K = typename Act::Hopf::Key;
    const auto& h = action.hopf();
    const auto& alg = action.algebra();
    if (&a.hopf() != &h || a.target() != alg) throw DomainError("convolution map does not match the action");
    Report r("U(H,A) membership");
    r.info()["verified_to_order"] = h.truncation();
    if (!alg->finite()) r.info()["window"] = window;

    auto& norm = r.check("normalization");
    auto& cocycle = r.check("cocycle");
    auto& central = r.check("centrality");
    auto& unitary = r.check("unitarity");

    norm.expect(a.value(h.unit_key()) == Element::one(alg), "a(1) = " + a.value(h.unit_key()).str());

    const auto keys = h.basis();
    const auto abasis = alg->basis_window(window);
    for (const K& g : keys) {
        const auto delta = h.coproduct(g);
        for (const K& k : keys) {
            if (!multipliable(h, g, k)) continue;
            Element rhs = Element::zero(alg);
            for (const auto& t : delta) rhs += a.value(t.left) * action.act(t.right, a.value(k)) * t.coeff;
            cocycle.expect(a.value(h.mul(g, k)) == rhs, "(" + h.label(g) + ", " + h.label(k) + ")");
        }
        for (BasisIndex b : abasis) {
            Element eb = Element::basis(alg, b);
            Element lhs = Element::zero(alg), rhs = Element::zero(alg);
            for (const auto& t : delta) {
                lhs += action.act(t.left, eb) * a.value(t.right) * t.coeff;
                rhs += a.value(t.left) * action.act(t.right, eb) * t.coeff;
            }
            central.expect(lhs == rhs, "(" + h.label(g) + ", " + alg->label(b) + ")");
        }
        Element u = Element::zero(alg);
        for (const auto& t : delta)
            u += a.value(t.left) * a.value(hopf_antipode(h, h.star(t.right))).star() * t.coeff;
        unitary.expect(u == Element::one(alg) * h.counit(g), h.label(g));
    }
    return r;
}

inline std::string failed_checks(const Report& r) {
    std::string s;
    for (const auto& c : r.checks())
        if (!c.passed()) s += (s.empty() ? "" : ", ") + c.name;
    return s;
}

/// a^-1(g) = a(S(g^*))^*. Refuses maps that are not members.
template <HopfAction Act>
ConvolutionMapFor<Act> convolution_inverse(const ConvolutionMapFor<Act>& a, const Act& action, int window = 3) {
    Report r = u_membership(a, action, window);
    if (!r.passed()) throw DomainError("convolution_inverse: not a member of U(H,A), failed " + failed_checks(r));
    const auto& h = action.hopf();
    ConvolutionMapFor<Act> out(a.hopf_ptr(), a.target());
    for (const auto& g : h.basis()) out.set(g, a.value(hopf_antipode(h, h.star(g))).star());
    return out;
}

/// Requires c central unitary; hat(c)(g) = c (g |> c^*).
template <HopfAction Act>
ConvolutionMapFor<Act> hat(const Element& c, const Act& action, int window = 3) {
    if (c.algebra() != action.algebra()) throw DomainError("hat: element of a different algebra");
    if (!is_central(c, window) || !is_unitary(c)) throw DomainError("hat: " + c.str() + " is not a central unitary");
    ConvolutionMapFor<Act> out(action.hopf_ptr(), action.algebra());
    const Element cinv = c.star();
    for (const auto& g : action.hopf().basis()) out.set(g, c * action.act(g, cinv));
    return out;
}

/// Formal action of a PBW monomial on an exponential sum.
inline ExpSum act_formal(const UEAAction& action, const Monomial& m, const ExpSum& s) {
    ExpSum out = s;
    for (int i = action.hopf().dim() - 1; i >= 0; --i)
        for (int k = 0; k < m.at(static_cast<std::size_t>(i)); ++k) out = out.apply(action.lie().derivation(i));
    return out;
}

/// hat of a formally unitary exponential sum; every value must collapse to an element.
inline ConvolutionMap<UEA> hat(const ExpSum& c, const UEAAction& action) {
    if (c.algebra() != action.algebra()) throw DomainError("hat: exponential sum over a different algebra");
    const ExpSum cinv = c.star();
    if ((c * cinv).to_element() != Element::one(action.algebra())) throw DomainError("hat: argument is not unitary");
    ConvolutionMap<UEA> out(action.hopf_ptr(), action.algebra());
    for (const auto& g : action.hopf().basis()) {
        auto v = (c * act_formal(action, g, cinv)).to_element();
        if (!v) throw InconsistencyError("hat: value on " + action.hopf().label(g) + " does not reduce to an element");
        out.set(g, *v);
    }
    return out;
}

/// g |> c = epsilon(g) c for every basis key.
template <HopfAction Act>
bool is_action_invariant(const Element& c, const Act& action) {
    for (const auto& g : action.hopf().basis())
        if (!(action.act(g, c) == c * action.hopf().counit(g))) return false;
    return true;
}

/// ker(hat) = invariant central unitaries, and hat(c1 c2) = hat(c1) * hat(c2), on the witnesses.
template <HopfAction Act>
Report exact_sequence_check(const Act& action, const std::vector<Element>& witnesses, int window = 3) {
    Report r("exact sequence 1 -> U(Z)^H -> U(Z) -> U(H,A)");
    auto& kernel = r.check("kernel-is-invariants");
    auto& morphism = r.check("hat-morphism");
    const auto e = ConvolutionMapFor<Act>::unit(action.hopf_ptr(), action.algebra());
    std::vector<ConvolutionMapFor<Act>> hats;
    for (const auto& c : witnesses) {
        hats.push_back(hat(c, action, window));
        bool trivial = hats.back() == e;
        bool invariant = is_action_invariant(c, action);
        kernel.expect(trivial == invariant, c.str() + (invariant ? " invariant" : " not invariant") +
                                                (trivial ? " but hat(c) = e" : " but hat(c) != e"));
    }
    for (std::size_t i = 0; i < witnesses.size(); ++i)
        for (std::size_t j = 0; j < witnesses.size(); ++j)
            morphism.expect(hat(witnesses[i] * witnesses[j], action, window) == convolve(hats[i], hats[j]),
                            "(" + witnesses[i].str() + ", " + witnesses[j].str() + ")");
    return r;
}

/// Every value a(g) commutes with the algebra basis.
template <HopfStarAlgebra H>
Report centrality_of_values_check(const ConvolutionMap<H>& a, int window = 3) {
    Report r("centrality of values");
    auto& c = r.check("values-central");
    for (const auto& g : a.hopf().basis()) c.expect(is_central(a.value(g), window), a.hopf().label(g));
    return r;
}

}  // namespace hopfmorita
