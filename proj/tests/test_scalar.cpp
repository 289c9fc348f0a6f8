#include <gtest/gtest.h>

#include <random>

#include "hopfmorita/scalar.hpp"
#include "hopfmorita/sparse_linalg.hpp"

using namespace hopfmorita;

TEST(Scalar, ParseForms) {
    EXPECT_EQ(Scalar::parse("3/6"), Scalar(Rational(1, 2)));
    EXPECT_EQ(Scalar::parse(" -2 / 4 + 1/3 * i "), Scalar(Rational(-1, 2), Rational(1, 3)));
    EXPECT_EQ(Scalar::parse("i"), Scalar::i());
    EXPECT_EQ(Scalar::parse("-i"), -Scalar::i());
    EXPECT_EQ(Scalar::parse("5/2*i"), Scalar(Rational(0), Rational(5, 2)));
    EXPECT_EQ(Scalar::parse("1-i"), Scalar(Rational(1), Rational(-1)));
    EXPECT_EQ(Scalar::parse("-4/2").re(), Rational(-2));
}

TEST(Scalar, ParseRejectsGarbage) {
    EXPECT_THROW(Scalar::parse(""), ParseError);
    EXPECT_THROW(Scalar::parse("1/0"), ParseError);
    EXPECT_THROW(Scalar::parse("abc"), ParseError);
    EXPECT_THROW(Scalar::parse("1++2"), ParseError);
    EXPECT_THROW(Scalar::parse("2*j"), ParseError);
}

TEST(Scalar, Format) {
    EXPECT_EQ(Scalar(Rational(1, 2)).str(), "1/2");
    EXPECT_EQ(Scalar(Rational(1, 2), Rational(-3, 4)).str(), "1/2-3/4*i");
    EXPECT_EQ(Scalar(Rational(0), Rational(1)).str(), "1*i");
    EXPECT_EQ(Scalar().str(), "0");
}

namespace {
Scalar random_scalar(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
    return Scalar(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
}
}  // namespace

// Field axioms and text round trip on random Gaussian rationals.
TEST(Scalar, FieldPropertiesRandom) {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        Scalar a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
        EXPECT_EQ(Scalar::parse(a.str()), a);
        EXPECT_EQ(a.conj().conj(), a);
        EXPECT_GE(sgn(a.norm2()), 0);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ((a * b).conj(), a.conj() * b.conj());
        if (!b.is_zero()) EXPECT_EQ((a / b) * b, a);
    }
    EXPECT_THROW(Scalar(1) / Scalar(), ArithmeticError);
}

TEST(SparseLinalg, KernelAndSolve) {
    // columns (1,0,1), (0,1,1), (1,1,2): third = first + second
    std::vector<SparseVec<Rational>> cols{{{0, 1}, {2, 1}}, {{1, 1}, {2, 1}}, {{0, 1}, {1, 1}, {2, 2}}};
    auto ker = kernel_of(cols);
    ASSERT_EQ(ker.size(), 1u);
    EXPECT_EQ(ker[0].at(0), Rational(1));
    EXPECT_EQ(ker[0].at(1), Rational(1));
    EXPECT_EQ(ker[0].at(2), Rational(-1));
    EXPECT_EQ(rank_of(cols), 2u);
    auto sol = solve_in_span(cols, SparseVec<Rational>{{0, 2}, {1, 3}, {2, 5}});
    ASSERT_TRUE(sol.has_value());
    SparseVec<Rational> back;
    for (const auto& [j, c] : *sol) axpy(back, c, cols[j]);
    EXPECT_EQ(back, (SparseVec<Rational>{{0, 2}, {1, 3}, {2, 5}}));
    EXPECT_FALSE(solve_in_span(cols, SparseVec<Rational>{{0, 1}}).has_value());
}

// RREF basis does not depend on the order the spanning vectors arrive in.
TEST(SparseLinalg, CanonicalUnderPermutation) {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> v(-3, 3);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<SparseVec<Scalar>> vecs;
        for (int i = 0; i < 5; ++i) {
            SparseVec<Scalar> x;
            for (std::size_t k = 0; k < 6; ++k) {
                Scalar c(Rational(v(rng)), Rational(v(rng)));
                if (!c.is_zero()) x[k] = c;
            }
            vecs.push_back(x);
        }
        auto a = rref_basis(vecs);
        std::shuffle(vecs.begin(), vecs.end(), rng);
        EXPECT_EQ(a, rref_basis(vecs));
    }
}
