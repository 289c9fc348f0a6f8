#include <gtest/gtest.h>

#include <random>

#include "hopfmorita/algebra.hpp"
#include "hopfmorita/exp.hpp"
#include "hopfmorita/lie_action.hpp"
#include "hopfmorita/positivity.hpp"

using namespace hopfmorita;

namespace {

Element el(const AlgebraPtr& A, std::initializer_list<std::pair<BasisIndex, Scalar>> terms) {
    BasisVec v;
    for (const auto& [k, c] : terms) v.add(k, c);
    return Element(A, v);
}

const Scalar I = Scalar::i();

}  // namespace

TEST(BuildModel, FiniteFunctionsUnitIsSumOfIdempotents) {
    auto A = build_model(finite_functions({"p", "q"}));
    EXPECT_EQ(A->dim(), 2u);
    EXPECT_EQ(Element::basis(A, 0) + Element::basis(A, 1), Element::one(A));
    EXPECT_EQ(Element::basis(A, 0) * Element::basis(A, 0), Element::basis(A, 0));
    EXPECT_TRUE((Element::basis(A, 0) * Element::basis(A, 1)).is_zero());
}

TEST(BuildModel, TruncatedPolyIsNilpotent) {
    auto A = build_model(truncated_poly(3));
    Element x = Element::basis(A, 1), x2 = Element::basis(A, 2);
    EXPECT_EQ(x * x, x2);
    EXPECT_TRUE((x * x2).is_zero());
    EXPECT_EQ(A->label(2), "x^2");
}

TEST(BuildModel, LaurentInvolution) {
    auto A = build_model(laurent_model());
    Element u = Element::basis(A, 1), uinv = Element::basis(A, -1);
    EXPECT_EQ(u * uinv, Element::one(A));
    EXPECT_EQ(u.star(), uinv);
    EXPECT_TRUE(is_unitary(u));
}

TEST(BuildModel, InvalidParameters) {
    EXPECT_THROW(build_model(truncated_poly(0)), ConstructionError);
    EXPECT_THROW(build_model(finite_functions(std::vector<std::string>{})), ConstructionError);
    EXPECT_THROW(build_model(matrix_model(0)), ConstructionError);
    EXPECT_THROW(build_model(product_model({laurent_model()})), ConstructionError);
}

// Associativity and star antimultiplicativity, re-checked from the outside
// on products and matrix algebras (build_model also asserts them).
TEST(BuildModel, StructureInvariantsOnAllFiniteModels) {
    std::vector<ModelSpec> specs{finite_functions(3), truncated_poly(4), matrix_model(2),
                                 product_model({finite_functions(1), matrix_model(2)}),
                                 matrix_over(2, finite_functions(2))};
    for (const auto& s : specs) {
        auto A = build_model(s);
        for (auto a : A->basis_window(0))
            for (auto b : A->basis_window(0)) {
                Element ea = Element::basis(A, a), eb = Element::basis(A, b);
                EXPECT_EQ((ea * eb).star(), eb.star() * ea.star()) << A->name();
                for (auto c : A->basis_window(0)) {
                    Element ec = Element::basis(A, c);
                    EXPECT_EQ((ea * eb) * ec, ea * (eb * ec)) << A->name();
                }
            }
        EXPECT_EQ(Element::one(A).star(), Element::one(A));
    }
}

TEST(Center, MatrixTwoIsScalars) {
    auto A = build_model(matrix_model(2));
    auto z = center_basis(A);
    ASSERT_EQ(z.size(), 1u);
    EXPECT_EQ(z[0], Element::one(A));
}

TEST(Center, CommutativeModelIsWholeAlgebra) {
    auto A = build_model(truncated_poly(4));
    EXPECT_EQ(center_basis(A).size(), 4u);
    auto L = build_model(laurent_model());
    EXPECT_EQ(center_basis(L, 2).size(), 5u);
}

TEST(Center, ProductIsBlockwise) {
    auto A = build_model(product_model({finite_functions({"p"}), matrix_model(2)}));
    auto z = center_basis(A);
    EXPECT_EQ(z.size(), 2u);
    for (const auto& c : z) {
        EXPECT_TRUE(is_central(c));
        EXPECT_TRUE(is_central(c.star()));
    }
    // star-closure of the span: star of each basis vector is again in the span
    std::vector<SparseVec<Scalar>> cols;
    for (const auto& c : z) {
        SparseVec<Scalar> v;
        coords::append(v, c.coeffs());
        cols.push_back(v);
    }
    for (const auto& c : z) {
        SparseVec<Scalar> v;
        coords::append(v, c.star().coeffs());
        EXPECT_TRUE(solve_in_span(cols, v).has_value());
    }
}

TEST(Predicates, UnitaryAndAntiHermitian) {
    auto P = build_model(truncated_poly(2));
    Element one_plus_x = Element::one(P) + Element::basis(P, 1);
    EXPECT_FALSE(is_unitary(one_plus_x));
    EXPECT_EQ(one_plus_x * one_plus_x, Element::one(P) + Element::basis(P, 1) * Scalar(2));
    EXPECT_TRUE(is_anti_hermitian(Element::scalar(P, I)));
    EXPECT_FALSE(is_anti_hermitian(Element::one(P)));
}

TEST(Positivity, FiniteFunctions) {
    auto A = build_model(finite_functions({"p", "q"}));
    EXPECT_TRUE(is_positive_element(el(A, {{0, 2}, {1, 3}})));
    EXPECT_FALSE(is_positive_element(el(A, {{0, 1}, {1, -1}})));
    EXPECT_FALSE(is_positive_element(el(A, {{0, I}})));
    EXPECT_THROW(is_positive_element(Element::one(build_model(truncated_poly(2)))), UnsupportedModelError);
}

// Oracle: f is positive iff every functional f -> sum_x w_x f(x) with w_x >= 0
// takes a nonnegative real value on it. The cone of such functionals is spanned
// by the weight vectors in {0,1,2}^X, which is what we enumerate.
TEST(Positivity, AgreesWithPositiveFunctionalOracle) {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> v(-2, 3), im(0, 4);
    for (int n = 1; n <= 4; ++n) {
        auto A = build_model(finite_functions(n));
        for (int trial = 0; trial < 60; ++trial) {
            BasisVec f;
            for (int x = 0; x < n; ++x)
                f.add(x, Scalar(Rational(v(rng)), im(rng) == 0 ? Rational(1) : Rational(0)));
            Element e(A, f);
            bool oracle = true;
            int total = 1;
            for (int x = 0; x < n; ++x) total *= 3;
            for (int code = 0; code < total; ++code) {
                Scalar s;
                int c = code;
                for (int x = 0; x < n; ++x, c /= 3) s += f.coeff(x) * Scalar(c % 3);
                if (!s.is_real() || sgn(s.re()) < 0) oracle = false;
            }
            EXPECT_EQ(is_positive_element(e), oracle) << e.str();
        }
    }
}

TEST(Positivity, PsdDecisions) {
    DenseMatrix id{{1, 0}, {0, 1}};
    EXPECT_TRUE(is_psd(id));
    DenseMatrix rank1{{1, I}, {-I, 1}};  // v v* with v = (1, -i)
    EXPECT_TRUE(is_psd(rank1));
    DenseMatrix indefinite{{1, 2}, {2, 1}};
    EXPECT_FALSE(is_psd(indefinite));
    DenseMatrix zero_pivot{{0, 1}, {1, 0}};
    EXPECT_FALSE(is_psd(zero_pivot));
    DenseMatrix not_hermitian{{1, I}, {I, 1}};
    EXPECT_FALSE(is_psd(not_hermitian));
}

namespace {

LieAction rotation(const AlgebraPtr& L) {
    return LieAction(L, LieBrackets::abelian(1), {Derivation::from_generator_image(L, Element::basis(L, 1, I))});
}

// [xi1, xi2] = xi2 on TruncatedPoly(n): D1 = x d/dx, D2 = x^2 d/dx.
LieAction solvable(const AlgebraPtr& P) {
    LieBrackets br(2);
    br.set(0, 1, {0, 1});
    return LieAction(P, br,
                     {Derivation::from_generator_image(P, Element::basis(P, 1)),
                      Derivation::from_generator_image(P, Element::basis(P, 2))});
}

}  // namespace

TEST(LieActionCheck, RotationOnLaurentPasses) {
    auto L = build_model(laurent_model());
    auto act = rotation(L);
    EXPECT_EQ(act.apply(0, Element::basis(L, 3)), Element::basis(L, 3, Scalar(Rational(0), Rational(3))));
    auto r = check_lie_action(act, 3);
    EXPECT_TRUE(r.passed()) << r.to_json().dump(2);
}

TEST(LieActionCheck, SolvableOnTruncatedPolyPasses) {
    auto P = build_model(truncated_poly(4));
    auto r = check_lie_action(solvable(P));
    EXPECT_TRUE(r.passed()) << r.to_json().dump(2);
}

// d/dx is not a derivation of K[x]/(x^n): D(x * x^(n-1)) = 0 but Leibniz gives n x^(n-1).
TEST(LieActionCheck, PlainDdxOnTruncatedPolyFailsLeibniz) {
    auto P = build_model(truncated_poly(4));
    LieAction act(P, LieBrackets::abelian(1), {Derivation::from_generator_image(P, Element::one(P))});
    auto r = check_lie_action(act);
    EXPECT_FALSE(r.passed("leibniz"));
}

TEST(LieActionCheck, BrokenLeibnizReportsWitness) {
    auto P = build_model(truncated_poly(3));
    // D(1) = 0, D(x) = 1, D(x^2) = 0 (should be 2x)
    auto D = Derivation::from_table(P, {BasisVec{}, BasisVec(0), BasisVec{}});
    LieAction act(P, LieBrackets::abelian(1), {D});
    auto r = check_lie_action(act);
    const Check* c = r.find("leibniz");
    ASSERT_NE(c, nullptr);
    EXPECT_FALSE(c->passed());
    EXPECT_NE(std::find(c->witnesses.begin(), c->witnesses.end(), "xi1 at (x,x)"), c->witnesses.end());
}

TEST(LieActionCheck, WrongBracketSignDetected) {
    auto P = build_model(truncated_poly(4));
    LieBrackets br(2);
    br.set(0, 1, {0, -1});
    LieAction act(P, br,
                  {Derivation::from_generator_image(P, Element::basis(P, 1)),
                   Derivation::from_generator_image(P, Element::basis(P, 2))});
    EXPECT_FALSE(check_lie_action(act).passed("bracket-representation"));
}

TEST(Exp, ZeroGivesUnit) {
    auto P = build_model(truncated_poly(3));
    auto e = exp_central(Element::zero(P));
    EXPECT_EQ(e.value(), Element::one(P));
}

TEST(Exp, FiniteSeriesInTruncatedPoly) {
    auto P = build_model(truncated_poly(3));
    auto e = exp_central(Element::basis(P, 1));
    EXPECT_EQ(*e.value(), el(P, {{0, 1}, {1, 1}, {2, Scalar(Rational(1, 2))}}));
}

TEST(Exp, DerivationRule) {
    auto P = build_model(truncated_poly(4));
    auto D = Derivation::from_generator_image(P, Element::basis(P, 1));  // x d/dx
    Element x = Element::basis(P, 1);
    Element ex = *exp_central(x).value();
    // frozen expansion: D exp(x) = x + x^2 + x^3/2
    EXPECT_EQ(D.apply(ex), el(P, {{1, 1}, {2, 1}, {3, Scalar(Rational(1, 2))}}));
    EXPECT_EQ(D.apply(ex), ex * D.apply(x));
}

TEST(Exp, PhaseMarker) {
    auto P = build_model(truncated_poly(2));
    auto half = exp_central(Element::zero(P), Rational(1, 2));
    EXPECT_EQ(*half.value(), Element::scalar(P, -1));
    auto third = exp_central(Element::zero(P), Rational(4, 3));
    EXPECT_EQ(third.phase, Rational(1, 3));
    EXPECT_FALSE(third.value().has_value());
    EXPECT_EQ((third * third * third).value(), Element::one(P));
}

TEST(Exp, DomainErrors) {
    auto M = build_model(matrix_model(2));
    EXPECT_THROW(exp_central(Element::basis(M, 1)), DomainError);  // E_12 not central
    auto P = build_model(truncated_poly(3));
    EXPECT_THROW(exp_central(Element::one(P)), DomainError);  // scalar part not a declared phase
    auto L = build_model(laurent_model());
    EXPECT_THROW(exp_central(Element::basis(L, 1)), DomainError);
}

// exp(a + b) = exp(a) exp(b), exp(a*) = exp(a)*, D exp(a) = exp(a) D a on the
// nilpotent domain, sampled over random real/imaginary combinations.
TEST(Exp, DefinitionAxiomsRandom) {
    auto P = build_model(truncated_poly(4));
    auto D = Derivation::from_generator_image(P, Element::basis(P, 2));  // x^2 d/dx
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> v(-3, 3);
    auto rnd = [&]() {
        BasisVec c;
        for (int k = 1; k < 4; ++k) c.add(k, Scalar(Rational(v(rng), 2), Rational(v(rng), 3)));
        return Element(P, c);
    };
    for (int t = 0; t < 40; ++t) {
        Element a = rnd(), b = rnd();
        EXPECT_EQ(exp_central(a + b), exp_central(a) * exp_central(b));
        EXPECT_EQ(exp_central(a.star()), exp_central(a).star());
        EXPECT_EQ(D.apply(*exp_central(a).value()), *exp_central(a).value() * D.apply(a));
    }
}

TEST(ExpSum, FormalExponentialCancels) {
    auto L = build_model(laurent_model());
    Element a = Element::basis(L, 1) - Element::basis(L, -1);  // anti-Hermitian
    auto e = ExpSum::exp(a);
    EXPECT_FALSE(e.to_element().has_value());
    EXPECT_EQ((e * ExpSum::exp(-a)).to_element(), Element::one(L));
    EXPECT_EQ((e * e.star()).to_element(), Element::one(L));  // exp of anti-Hermitian is unitary
    auto D = Derivation::from_generator_image(L, Element::basis(L, 1, I));
    EXPECT_EQ(e.apply(D), e * ExpSum(D.apply(a)));
}
