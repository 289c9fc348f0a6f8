#include <gtest/gtest.h>

#include <array>
#include <random>

#include "hopfmorita/hopf_action.hpp"

using namespace hopfmorita;

namespace {

const Scalar I = Scalar::i();

LieBrackets solvable2() {
    LieBrackets br(2);
    br.set(0, 1, {0, 1});
    return br;
}

// su(2): [xi1, xi2] = xi3 and cyclic.
LieBrackets su2() {
    LieBrackets br(3);
    br.set(0, 1, {0, 0, 1});
    br.set(1, 2, {1, 0, 0});
    br.set(2, 0, {0, 1, 0});
    return br;
}

Monomial mono(std::initializer_list<int> k) { return Monomial(k); }

// Delta as the product of the primitive coproducts of the letters of the
// word, multiplied out in H (x) H.
Tensor2<UEA> coproduct_by_multiplicativity(const UEA& h, const Monomial& m) {
    Tensor2<UEA> acc;
    acc.add({h.unit_key(), h.unit_key()}, 1);
    for (int g : h.word(m)) {
        Tensor2<UEA> next;
        for (const auto& [t, c] : acc) {
            const auto& [l, r] = t;
            for (const auto& [a, ca] : h.mul(l, h.generator(g))) next.add({a, r}, c * ca);
            for (const auto& [b, cb] : h.mul(r, h.generator(g))) next.add({l, b}, c * cb);
        }
        acc = next;
    }
    return acc;
}

}  // namespace

TEST(UEA, StraighteningSingleStep) {
    UEA h(solvable2(), 4);
    EXPECT_EQ(h.mul(mono({1, 0}), mono({0, 1})), Linear<Monomial>(mono({1, 1})));
    Linear<Monomial> expected(mono({1, 1}));
    expected.add(mono({0, 1}), -1);
    EXPECT_EQ(h.mul(mono({0, 1}), mono({1, 0})), expected);
}

TEST(UEA, UnitAndAbelianSquares) {
    UEA h(LieBrackets::abelian(1), 2);
    EXPECT_EQ(h.mul(mono({0}), mono({2})), Linear<Monomial>(mono({2})));
    EXPECT_EQ(h.mul(mono({1}), mono({1})), Linear<Monomial>(mono({2})));
}

TEST(UEA, TruncationOverflowIsAnError) {
    UEA h(LieBrackets::abelian(1), 2);
    EXPECT_THROW(h.mul(mono({2}), mono({1})), TruncationOverflow);
    EXPECT_THROW(h.coproduct(mono({3})), TruncationOverflow);
}

TEST(UEA, Coproduct) {
    UEA h(LieBrackets::abelian(1), 4);
    auto d1 = coproduct_tensor(h, Linear<Monomial>(mono({1})));
    Tensor2<UEA> expect1;
    expect1.add({mono({1}), mono({0})}, 1);
    expect1.add({mono({0}), mono({1})}, 1);
    EXPECT_EQ(d1, expect1);

    Tensor2<UEA> expect0;
    expect0.add({mono({0}), mono({0})}, 1);
    EXPECT_EQ(coproduct_tensor(h, Linear<Monomial>(mono({0}))), expect0);

    Tensor2<UEA> expect2;
    expect2.add({mono({2}), mono({0})}, 1);
    expect2.add({mono({1}), mono({1})}, 2);
    expect2.add({mono({0}), mono({2})}, 1);
    EXPECT_EQ(coproduct_tensor(h, Linear<Monomial>(mono({2}))), expect2);
}

TEST(UEA, ClosedFormCoproductMatchesMultiplicativity) {
    for (const auto& br : {solvable2(), su2()}) {
        UEA h(br, 4);
        for (const auto& m : h.basis())
            EXPECT_EQ(coproduct_tensor(h, Linear<Monomial>(m)), coproduct_by_multiplicativity(h, m)) << h.label(m);
    }
}

TEST(UEA, AntipodeCounitStar) {
    UEA h(solvable2(), 4);
    Linear<Monomial> s12(mono({1, 1}));
    s12.add(mono({0, 1}), -1);
    EXPECT_EQ(h.antipode(mono({1, 1})), s12);
    EXPECT_EQ(h.counit(mono({0, 0})), Scalar(1));
    EXPECT_EQ(h.counit(mono({2, 1})), Scalar(0));
    Linear<Monomial> xi(mono({1, 0}));
    EXPECT_EQ(hopf_star(h, xi), -xi);
    EXPECT_EQ(hopf_antipode(h, hopf_star(h, hopf_antipode(h, hopf_star(h, xi)))), xi);
    // antilinear: (i xi)^* = i xi
    EXPECT_EQ(hopf_star(h, xi * I), xi * I);
}

TEST(UEA, BasisEnumeration) {
    UEA h(su2(), 3);
    EXPECT_EQ(h.basis().size(), 20u);  // binom(3 + 3, 3)
    EXPECT_EQ(h.basis().front(), mono({0, 0, 0}));
    EXPECT_EQ(h.label(mono({2, 0, 1})), "xi1^2 xi3");
}

TEST(HopfAxioms, AbelianDimOne) {
    UEA h(LieBrackets::abelian(1), 4);
    auto r = hopf_axiom_report(h);
    EXPECT_TRUE(r.passed()) << r.to_json().dump(2);
}

TEST(HopfAxioms, NonAbelian) {
    for (const auto& br : {solvable2(), su2()}) {
        UEA h(br, br.dim() == 2 ? 4 : 3);
        auto r = hopf_axiom_report(h);
        EXPECT_TRUE(r.passed()) << r.to_json().dump(2);
    }
}

TEST(HopfAxioms, GroupZ2AndS3) {
    auto r = hopf_axiom_report(GroupHopf::cyclic(2));
    EXPECT_TRUE(r.passed()) << r.to_json().dump(2);
    // S3 as permutations of {0,1,2}; compose tables from the permutation list.
    std::vector<std::array<int, 3>> perms{{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
    std::vector<std::vector<int>> table(6, std::vector<int>(6));
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) {
            std::array<int, 3> c{};
            for (int i = 0; i < 3; ++i) c[static_cast<std::size_t>(i)] = perms[a][static_cast<std::size_t>(perms[b][static_cast<std::size_t>(i)])];
            for (int k = 0; k < 6; ++k)
                if (perms[static_cast<std::size_t>(k)] == c) table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = k;
        }
    EXPECT_TRUE(hopf_axiom_report(GroupHopf(table)).passed());
}

TEST(HopfAxioms, RejectsNonGroupTables) {
    EXPECT_THROW(GroupHopf({{0, 1}, {1, 1}}), ConstructionError);
    EXPECT_THROW(GroupHopf({{0, 1}, {0, 1}}), ConstructionError);
}

// [xi1,xi2] = xi2, [xi2,xi3] = xi1, [xi1,xi3] = 0 violates Jacobi.
TEST(HopfAxioms, JacobiViolationBreaksAssociativityOnly) {
    LieBrackets br(3);
    br.set(0, 1, {0, 1, 0});
    br.set(1, 2, {1, 0, 0});
    EXPECT_FALSE(br.axiom_report().passed("jacobi"));
    UEA h(br, 3);
    auto r = hopf_axiom_report(h);
    EXPECT_TRUE(r.passed("coassociativity"));
    EXPECT_FALSE(r.passed("associativity"));
}

namespace {

LieAction rotation(const AlgebraPtr& L) {
    return LieAction(L, LieBrackets::abelian(1), {Derivation::from_generator_image(L, Element::basis(L, 1, I))});
}

}  // namespace

TEST(ExtendAction, IteratedDerivation) {
    auto L = build_model(laurent_model());
    auto act = UEAAction::extend(rotation(L), 4);
    for (int k = -3; k <= 3; ++k) {
        Element uk = Element::basis(L, k);
        Scalar ik(Rational(0), Rational(k));
        EXPECT_EQ(act.act(mono({2}), uk), uk * (ik * ik));
        EXPECT_EQ(act.act(mono({0}), uk), uk);
    }
}

TEST(ExtendAction, MonomialOrderIsRightmostFirst) {
    auto P = build_model(truncated_poly(5));
    LieAction lie(P, solvable2(),
                  {Derivation::from_generator_image(P, Element::basis(P, 1)),
                   Derivation::from_generator_image(P, Element::basis(P, 2))});
    auto act = UEAAction::extend(lie, 3);
    Element x = Element::basis(P, 1);
    EXPECT_EQ(act.act(mono({1, 1}), x), lie.apply(0, lie.apply(1, x)));
}

TEST(StarActionReport, RotationOnLaurent) {
    auto L = build_model(laurent_model());
    auto r = star_action_report(UEAAction::extend(rotation(L), 3), 3);
    EXPECT_TRUE(r.passed()) << r.to_json().dump(2);
}

TEST(StarActionReport, SolvableOnTruncatedPoly) {
    auto P = build_model(truncated_poly(4));
    LieAction lie(P, solvable2(),
                  {Derivation::from_generator_image(P, Element::basis(P, 1)),
                   Derivation::from_generator_image(P, Element::basis(P, 2))});
    auto r = star_action_report(UEAAction::extend(lie, 3));
    EXPECT_TRUE(r.passed()) << r.to_json().dump(2);
}

TEST(StarActionReport, FlipOnTwoPoints) {
    auto A = build_model(finite_functions({"p", "q"}));
    auto G = std::make_shared<const GroupHopf>(GroupHopf::cyclic(2));
    auto act = GroupAction::from_permutations(G, A, {{0, 1}, {1, 0}});
    auto r = star_action_report(act);
    EXPECT_TRUE(r.passed()) << r.to_json().dump(2);
}

TEST(StarActionReport, NotStarCompatibleHasWitness) {
    auto P = build_model(truncated_poly(3));
    LieAction lie(P, LieBrackets::abelian(1), {Derivation::from_generator_image(P, Element::scalar(P, I))});
    auto r = star_action_report(UEAAction::extend(lie, 2));
    const Check* c = r.find("star");
    ASSERT_NE(c, nullptr);
    EXPECT_FALSE(c->passed());
    EXPECT_FALSE(c->witnesses.empty());
    EXPECT_EQ(c->witnesses.front(), "xi1 on x");
}

TEST(StarActionReport, NonAutomorphismFails) {
    auto A = build_model(finite_functions({"p", "q"}));
    auto G = std::make_shared<const GroupHopf>(GroupHopf::cyclic(2));
    // the nontrivial element sends e_p to e_p + e_q: not multiplicative
    GroupAction act(G, A, {{BasisVec(0), BasisVec(1)}, {BasisVec(0) + BasisVec(1), BasisVec(1)}});
    EXPECT_FALSE(star_action_report(act).passed("module-algebra"));
}

// Delta(ab) = Delta(a) Delta(b) on random combinations in U(su(2)) up to degree 3.
TEST(UEA, CoproductMultiplicativeRandom) {
    UEA h(su2(), 3);
    std::mt19937 rng(13);
    std::uniform_int_distribution<int> coef(-2, 2);
    auto basis = h.basis();
    std::vector<Monomial> low;
    for (const auto& m : basis)
        if (h.degree(m) <= 1) low.push_back(m);
    std::vector<Monomial> mid;
    for (const auto& m : basis)
        if (h.degree(m) <= 2) mid.push_back(m);
    for (int t = 0; t < 30; ++t) {
        Linear<Monomial> a, b;
        for (const auto& m : low) a.add(m, Scalar(Rational(coef(rng)), Rational(coef(rng))));
        for (const auto& m : mid) b.add(m, Scalar(Rational(coef(rng))));
        Tensor2<UEA> da = coproduct_tensor(h, a), db = coproduct_tensor(h, b), prod;
        for (const auto& [s, cs] : da)
            for (const auto& [u, cu] : db)
                for (const auto& [l, cl] : h.mul(std::get<0>(s), std::get<0>(u)))
                    for (const auto& [r, cr] : h.mul(std::get<1>(s), std::get<1>(u)))
                        prod.add({l, r}, cs * cu * cl * cr);
        EXPECT_EQ(coproduct_tensor(h, h.mul(a, b)), prod);
    }
}
