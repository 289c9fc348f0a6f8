#include <gtest/gtest.h>

#include <random>

#include "hopfmorita/convolution.hpp"

using namespace hopfmorita;

namespace {

const Scalar I = Scalar::i();

Monomial mono(std::initializer_list<int> k) { return Monomial(k); }

struct Circle {
    AlgebraPtr L = build_model(laurent_model());
    UEAAction action = UEAAction::extend(
        LieAction(L, LieBrackets::abelian(1), {Derivation::from_generator_image(L, Element::basis(L, 1, I))}), 4);
};

// a(xi^k) = i^k: the extension of the constant cocycle alpha(xi) = i.
ConvolutionMap<UEA> constant_twist(const UEAAction& act, const Scalar& z) {
    ConvolutionMap<UEA> a(act.hopf_ptr(), act.algebra());
    for (const auto& m : act.hopf().basis()) {
        Scalar p(1);
        for (int k = 0; k < m[0]; ++k) p *= z;
        a.set(m, Element::scalar(act.algebra(), p));
    }
    return a;
}

struct Flip {
    AlgebraPtr A = build_model(finite_functions({"p", "q"}));
    GroupHopfPtr G = std::make_shared<const GroupHopf>(GroupHopf::cyclic(2));
    GroupAction action = GroupAction::from_permutations(G, A, {{0, 1}, {1, 0}});
};

}  // namespace

TEST(Convolve, UnitLaw) {
    Circle c;
    auto e = ConvolutionMap<UEA>::unit(c.action.hopf_ptr(), c.L);
    auto a = constant_twist(c.action, I);
    EXPECT_EQ(convolve(e, a), a);
    EXPECT_EQ(convolve(a, e), a);
}

TEST(Convolve, PrimitiveExpansion) {
    Circle c;
    ConvolutionMap<UEA> a(c.action.hopf_ptr(), c.L), b(c.action.hopf_ptr(), c.L);
    a.set(mono({0}), Element::basis(c.L, 1));
    a.set(mono({1}), Element::basis(c.L, 2));
    b.set(mono({0}), Element::basis(c.L, -1, 3));
    b.set(mono({1}), Element::basis(c.L, 5));
    Element expected = a.value(mono({1})) * b.value(mono({0})) + a.value(mono({0})) * b.value(mono({1}));
    EXPECT_EQ(convolve(a, b).value(mono({1})), expected);
}

TEST(Convolve, GrouplikeIsPointwise) {
    Flip f;
    ConvolutionMap<GroupHopf> a(f.G, f.A), b(f.G, f.A);
    a.set(0, Element::basis(f.A, 0, 2));
    a.set(1, Element::basis(f.A, 1, I));
    b.set(0, Element::one(f.A));
    b.set(1, Element::basis(f.A, 1, 3));
    auto ab = convolve(a, b);
    for (int g = 0; g < 2; ++g) EXPECT_EQ(ab.value(g), a.value(g) * b.value(g));
}

TEST(Convolve, MismatchedInputs) {
    Circle c, d;
    auto a = ConvolutionMap<UEA>::unit(c.action.hopf_ptr(), c.L);
    auto b = ConvolutionMap<UEA>::unit(d.action.hopf_ptr(), d.L);
    EXPECT_THROW(convolve(a, b), DomainError);
}

TEST(Membership, UnitAndConstantTwist) {
    Circle c;
    auto e = ConvolutionMap<UEA>::unit(c.action.hopf_ptr(), c.L);
    EXPECT_TRUE(u_membership(e, c.action).passed());
    auto a = constant_twist(c.action, I);
    auto r = u_membership(a, c.action);
    EXPECT_TRUE(r.passed()) << r.to_json().dump(2);
    EXPECT_EQ(r.info()["verified_to_order"], 4);
}

TEST(Membership, FailuresNameTheCondition) {
    Circle c;
    auto a = constant_twist(c.action, I);
    a.set(mono({0}), Element::zero(c.L));
    auto r = u_membership(a, c.action);
    EXPECT_FALSE(r.passed("normalization"));

    // Hermitian constant violates unitarity: a(xi) = 1
    auto b = constant_twist(c.action, Scalar(1));
    auto rb = u_membership(b, c.action);
    EXPECT_TRUE(rb.passed("cocycle"));
    EXPECT_FALSE(rb.passed("unitarity"));
    EXPECT_EQ(rb.find("unitarity")->witnesses.front(), "xi1");
}

TEST(Inverse, Examples) {
    Circle c;
    auto e = ConvolutionMap<UEA>::unit(c.action.hopf_ptr(), c.L);
    EXPECT_EQ(convolution_inverse(e, c.action), e);
    auto a = constant_twist(c.action, I);
    auto ainv = convolution_inverse(a, c.action);
    EXPECT_EQ(ainv.value(mono({1})), Element::scalar(c.L, -I));
    EXPECT_EQ(convolve(a, ainv), e);
    EXPECT_EQ(convolve(ainv, a), e);

    Flip f;
    ConvolutionMap<GroupHopf> g(f.G, f.A);
    g.set(0, Element::one(f.A));
    // hat(e_p + i e_q): a(1) = c (flip c^*) = (e_p + i e_q)(e_q - i e_p) = -i e_p + i e_q
    g.set(1, Element::basis(f.A, 0, -I) + Element::basis(f.A, 1, I));
    ASSERT_TRUE(u_membership(g, f.action).passed());
    auto ginv = convolution_inverse(g, f.action);
    for (int k = 0; k < 2; ++k) EXPECT_EQ(ginv.value(k), g.value(k).star());
}

TEST(Inverse, RefusesNonMembers) {
    Circle c;
    auto b = constant_twist(c.action, Scalar(1));
    EXPECT_THROW(convolution_inverse(b, c.action), DomainError);
}

TEST(Hat, Examples) {
    Circle c;
    auto e = ConvolutionMap<UEA>::unit(c.action.hopf_ptr(), c.L);
    EXPECT_EQ(hat(Element::one(c.L), c.action), e);
    auto uhat = hat(Element::basis(c.L, 1), c.action);
    EXPECT_EQ(uhat.value(mono({1})), Element::scalar(c.L, -I));
    EXPECT_TRUE(u_membership(uhat, c.action).passed());
    EXPECT_THROW(hat(Element::basis(c.L, 1, 2), c.action), DomainError);
}

TEST(Hat, FormalExponentialCollapses) {
    Circle c;
    Element a = Element::basis(c.L, 1) - Element::basis(c.L, -1);
    auto h = hat(ExpSum::exp(a), c.action);
    EXPECT_TRUE(u_membership(h, c.action).passed());
    // hat(exp(a))(xi) = -D a
    EXPECT_EQ(h.value(mono({1})), -c.action.lie().apply(0, a));
}

TEST(ExactSequence, Examples) {
    Circle c;
    auto r = exact_sequence_check(c.action, {Element::one(c.L), Element::basis(c.L, 1), Element::scalar(c.L, I)});
    EXPECT_TRUE(r.passed()) << r.to_json().dump(2);
    EXPECT_FALSE(hat(Element::basis(c.L, 1), c.action) == ConvolutionMap<UEA>::unit(c.action.hopf_ptr(), c.L));

    auto A = build_model(finite_functions({"p", "q"}));
    auto G = std::make_shared<const GroupHopf>(GroupHopf::cyclic(2));
    auto triv = GroupAction::trivial(G, A);
    Element c1 = Element::basis(A, 0) - Element::basis(A, 1);
    EXPECT_EQ(hat(c1, triv), ConvolutionMap<GroupHopf>::unit(G, A));
    EXPECT_TRUE(exact_sequence_check(triv, {c1, Element::one(A)}).passed());
}

TEST(Centrality, MatrixValues) {
    auto M = build_model(matrix_model(2));
    auto G = std::make_shared<const GroupHopf>(GroupHopf::cyclic(2));
    auto triv = GroupAction::trivial(G, M);
    auto e = ConvolutionMap<GroupHopf>::unit(G, M);
    EXPECT_TRUE(centrality_of_values_check(e).passed());
    auto bad = e;
    bad.set(1, Element::basis(M, 1));  // E_12
    EXPECT_FALSE(centrality_of_values_check(bad).passed());
    EXPECT_FALSE(u_membership(bad, triv).passed("centrality"));

    auto P = build_model(matrix_model(2));
    LieAction zero = LieAction::trivial(P, LieBrackets::abelian(1));
    auto act = UEAAction::extend(zero, 2);
    auto m = ConvolutionMap<UEA>::unit(act.hopf_ptr(), P);
    m.set(mono({1}), Element::basis(P, 1));
    EXPECT_FALSE(centrality_of_values_check(m).passed());
    EXPECT_FALSE(u_membership(m, act).passed("centrality"));
}

namespace {

// Members over the circle: constant twists i*t for rational t, times hats of
// unitaries u^k.
std::vector<ConvolutionMap<UEA>> circle_members(const Circle& c) {
    std::vector<ConvolutionMap<UEA>> out;
    for (int t : {-1, 0, 2})
        for (int k : {-1, 0, 1}) {
            auto a = constant_twist(c.action, Scalar(Rational(0), Rational(t, 2)));
            out.push_back(convolve(a, hat(Element::basis(c.L, k), c.action)));
        }
    return out;
}

}  // namespace

TEST(GroupProperties, ClosureAssociativityCommutativityCentralHat) {
    Circle c;
    auto members = circle_members(c);
    auto uhat = hat(Element::basis(c.L, 2), c.action);
    for (const auto& a : members) {
        ASSERT_TRUE(u_membership(a, c.action).passed());
        EXPECT_TRUE(u_membership(convolution_inverse(a, c.action), c.action).passed());
        EXPECT_EQ(convolve(uhat, a), convolve(a, uhat));
        EXPECT_TRUE(centrality_of_values_check(a).passed());
        for (const auto& b : members) {
            auto ab = convolve(a, b);
            EXPECT_TRUE(u_membership(ab, c.action).passed());
            EXPECT_EQ(ab, convolve(b, a));
        }
    }
    for (std::size_t i = 0; i + 2 < members.size(); ++i)
        EXPECT_EQ(convolve(convolve(members[i], members[i + 1]), members[i + 2]),
                  convolve(members[i], convolve(members[i + 1], members[i + 2])));
}

// Per-group-element oracle: with Delta(g) = g (x) g and S(g^*) = g the four
// conditions read a(e) = 1, a(gh) = a(g) (g |> a(h)), a(g) central and
// a(g) a(g)^* = 1.
TEST(GroupOracle, MembershipAgreesWithPointwiseConditions) {
    auto A = build_model(finite_functions(3));
    auto G = std::make_shared<const GroupHopf>(GroupHopf::cyclic(3));
    auto act = GroupAction::from_permutations(G, A, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
    std::mt19937 rng(17);
    const std::vector<Scalar> units{Scalar(1), Scalar(-1), I, -I, Scalar(2)};
    std::uniform_int_distribution<std::size_t> pick(0, units.size() - 1);
    auto random_fn = [&]() {
        BasisVec v;
        for (long x = 0; x < 3; ++x) v.add(x, units[pick(rng)]);
        return Element(A, v);
    };
    int members = 0;
    for (int trial = 0; trial < 200; ++trial) {
        ConvolutionMap<GroupHopf> a(G, A);
        if (trial % 2 == 0) {
            Element c = random_fn();
            for (int g = 0; g < 3; ++g) a.set(g, c * act.act(g, c.star()));
            if (!is_unitary(c)) a.set(1, random_fn());
        } else {
            for (int g = 0; g < 3; ++g) a.set(g, g == 0 ? Element::one(A) : random_fn());
        }
        bool oracle = a.value(0) == Element::one(A);
        for (int g = 0; g < 3; ++g) {
            oracle = oracle && a.value(g) * a.value(g).star() == Element::one(A);
            for (int h = 0; h < 3; ++h) oracle = oracle && a.value(G->at(g, h)) == a.value(g) * act.act(g, a.value(h));
        }
        bool got = u_membership(a, act).passed();
        EXPECT_EQ(got, oracle);
        members += got;
    }
    EXPECT_GT(members, 10);
}
