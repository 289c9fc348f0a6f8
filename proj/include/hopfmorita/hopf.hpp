#pragma once

// Common interface of the built-in Hopf *-algebras and the generic axiom report.
//
// A Hopf algebra here is described on a basis of keys: products, coproduct,
// counit, antipode and involution are given on basis keys and extended
// (anti)linearly. Truncated enveloping algebras carry a degree; a product of
// two keys is only formed when the combined degree stays within truncation.

#include <concepts>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "hopfmorita/linear.hpp"
#include "hopfmorita/report.hpp"

namespace hopfmorita {

template <class Key>
struct SweedlerTerm {
    Scalar coeff;
    Key left;
    Key right;
};

template <class H>
concept HopfStarAlgebra = requires(const H& h, const typename H::Key& k) {
    typename H::Key;
    { h.basis() } -> std::convertible_to<std::vector<typename H::Key>>;
    { h.unit_key() } -> std::convertible_to<typename H::Key>;
    { h.degree(k) } -> std::convertible_to<int>;
    { h.truncation() } -> std::convertible_to<int>;
    { h.mul(k, k) } -> std::convertible_to<Linear<typename H::Key>>;
    { h.coproduct(k) } -> std::convertible_to<std::vector<SweedlerTerm<typename H::Key>>>;
    { h.counit(k) } -> std::convertible_to<Scalar>;
    { h.antipode(k) } -> std::convertible_to<Linear<typename H::Key>>;
    { h.star(k) } -> std::convertible_to<Linear<typename H::Key>>;
    { h.label(k) } -> std::convertible_to<std::string>;
};

/// True when k1 * k2 stays within truncation.
template <HopfStarAlgebra H>
bool multipliable(const H& h, const typename H::Key& a, const typename H::Key& b) {
    return h.degree(a) + h.degree(b) <= h.truncation();
}

template <HopfStarAlgebra H>
Linear<typename H::Key> hopf_mul(const H& h, const Linear<typename H::Key>& a, const Linear<typename H::Key>& b) {
    Linear<typename H::Key> out;
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b) out.add_scaled(h.mul(ka, kb), ca * cb);
    return out;
}

template <HopfStarAlgebra H>
Linear<typename H::Key> hopf_antipode(const H& h, const Linear<typename H::Key>& a) {
    Linear<typename H::Key> out;
    for (const auto& [k, c] : a) out.add_scaled(h.antipode(k), c);
    return out;
}

/// Antilinear extension of the involution.
template <HopfStarAlgebra H>
Linear<typename H::Key> hopf_star(const H& h, const Linear<typename H::Key>& a) {
    Linear<typename H::Key> out;
    for (const auto& [k, c] : a) out.add_scaled(h.star(k), c.conj());
    return out;
}

template <HopfStarAlgebra H>
using Tensor2 = Linear<std::tuple<typename H::Key, typename H::Key>>;
template <HopfStarAlgebra H>
using Tensor3 = Linear<std::tuple<typename H::Key, typename H::Key, typename H::Key>>;

template <HopfStarAlgebra H>
Tensor2<H> coproduct_tensor(const H& h, const Linear<typename H::Key>& a) {
    Tensor2<H> out;
    for (const auto& [k, c] : a)
        for (const auto& t : h.coproduct(k)) out.add({t.left, t.right}, c * t.coeff);
    return out;
}

/// Coassociativity, counit, antipode, multiplicativity, associativity,
/// cocommutativity and *-compatibility on every basis key (pairs and
/// triples restricted to the truncation).
template <HopfStarAlgebra H>
Report hopf_axiom_report(const H& h) {
    using K = typename H::Key;
    Report r("hopf axioms");
    r.info()["truncation"] = h.truncation();
    const auto basis = h.basis();
    const K one = h.unit_key();
    const Linear<K> unit(one);

    auto& coassoc = r.check("coassociativity");
    auto& counit = r.check("counit");
    auto& antipode = r.check("antipode");
    auto& cocomm = r.check("cocommutativity");
    auto& star_inv = r.check("star-involutive");
    auto& star_cop = r.check("star-coproduct");
    auto& ssg = r.check("antipode-star");
    auto& unit_law = r.check("unit");
    auto& mult = r.check("coproduct-multiplicative");
    auto& assoc = r.check("associativity");
    auto& star_anti = r.check("star-antimultiplicative");

    for (const K& g : basis) {
        const std::string lg = h.label(g);
        const auto delta = h.coproduct(g);

        Tensor3<H> left, right;
        for (const auto& t : delta) {
            for (const auto& u : h.coproduct(t.left)) left.add({u.left, u.right, t.right}, t.coeff * u.coeff);
            for (const auto& u : h.coproduct(t.right)) right.add({t.left, u.left, u.right}, t.coeff * u.coeff);
        }
        coassoc.expect(left == right, lg);

        Linear<K> eps_left, eps_right;
        for (const auto& t : delta) {
            eps_left.add(t.right, t.coeff * h.counit(t.left));
            eps_right.add(t.left, t.coeff * h.counit(t.right));
        }
        counit.expect(eps_left == Linear<K>(g) && eps_right == Linear<K>(g), lg);

        Linear<K> s_left, s_right;
        for (const auto& t : delta) {
            s_left.add_scaled(hopf_mul(h, h.antipode(t.left), Linear<K>(t.right)), t.coeff);
            s_right.add_scaled(hopf_mul(h, Linear<K>(t.left), h.antipode(t.right)), t.coeff);
        }
        const Linear<K> eps_one = unit * h.counit(g);
        antipode.expect(s_left == eps_one && s_right == eps_one, lg);

        Tensor2<H> d, dop;
        for (const auto& t : delta) {
            d.add({t.left, t.right}, t.coeff);
            dop.add({t.right, t.left}, t.coeff);
        }
        cocomm.expect(d == dop, lg);

        const Linear<K> gs = h.star(g);
        star_inv.expect(hopf_star(h, gs) == Linear<K>(g), lg);

        Tensor2<H> star_delta;
        for (const auto& t : delta)
            for (const auto& [a, ca] : h.star(t.left))
                for (const auto& [b, cb] : h.star(t.right)) star_delta.add({a, b}, t.coeff.conj() * ca * cb);
        star_cop.expect(coproduct_tensor(h, gs) == star_delta, lg);

        ssg.expect(hopf_antipode(h, hopf_star(h, hopf_antipode(h, gs))) == Linear<K>(g), lg);

        unit_law.expect(h.mul(one, g) == Linear<K>(g) && h.mul(g, one) == Linear<K>(g), lg);
    }

    for (const K& g : basis)
        for (const K& k : basis) {
            if (!multipliable(h, g, k)) continue;
            const std::string w = h.label(g) + " * " + h.label(k);
            const Linear<K> gk = h.mul(g, k);

            Tensor2<H> prod;
            for (const auto& s : h.coproduct(g))
                for (const auto& t : h.coproduct(k))
                    for (const auto& [a, ca] : h.mul(s.left, t.left))
                        for (const auto& [b, cb] : h.mul(s.right, t.right))
                            prod.add({a, b}, s.coeff * t.coeff * ca * cb);
            mult.expect(coproduct_tensor(h, gk) == prod, w);

            star_anti.expect(hopf_star(h, gk) == hopf_mul(h, h.star(k), h.star(g)), w);

            for (const K& l : basis) {
                if (h.degree(g) + h.degree(k) + h.degree(l) > h.truncation()) continue;
                assoc.expect(hopf_mul(h, gk, Linear<K>(l)) == hopf_mul(h, Linear<K>(g), h.mul(k, l)),
                             w + " * " + h.label(l));
            }
        }
    return r;
}

}  // namespace hopfmorita
