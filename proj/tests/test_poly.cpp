#include "eigsch/poly.hpp"
#include "eigsch/random.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace eigsch;

namespace {

Poly P(const char* s, int nv = 3) { return Poly::parse(s, nv); }

}  // namespace

TEST(Poly, AdditiveInverseIsEmpty) {
    Poly z = P("x0") + P("-x0");
    EXPECT_TRUE(z.is_zero());
    EXPECT_EQ(z.size(), 0u);
    EXPECT_EQ(z.nvars(), 3);
    EXPECT_EQ(z.to_string(), "0");
}

TEST(Poly, AddAndCancel) {
    EXPECT_EQ(P("x0^2") + P("x1^2"), P("x0^2 + x1^2"));
    EXPECT_TRUE((P("x0*x1") - P("x1*x0*1")).is_zero());
}

TEST(Poly, Multiply) {
    EXPECT_EQ(P("x0") * P("x1"), P("x0*x1"));
    EXPECT_EQ(P("x0+x1") * P("x0-x1"), P("x0^2 - x1^2"));
    EXPECT_TRUE((Poly(3) * P("x0^3 + 2/3*x2")).is_zero());
    auto prod = P("x0^2 + x1*x2") * P("x2^3 - x0^3");
    EXPECT_TRUE(prod.is_homogeneous_of_degree(5));
}

TEST(Poly, MismatchedVariableCountThrows) {
    EXPECT_THROW(P("x0", 2) + P("x0", 3), std::invalid_argument);
    EXPECT_THROW(P("x0", 2) * P("x0", 3), std::invalid_argument);
}

TEST(Poly, PartialDerivative) {
    EXPECT_EQ(partial_derivative(P("x0^2*x1"), 0), P("2*x0*x1"));
    EXPECT_TRUE(partial_derivative(P("x0^3"), 1).is_zero());
    EXPECT_EQ(partial_derivative(P("x0*x1*x2"), 2), P("x0*x1"));
    EXPECT_THROW(partial_derivative(P("x0"), 3), std::out_of_range);
}

TEST(Poly, Evaluate) {
    EXPECT_EQ(evaluate(P("x0^2+x1^2", 2), std::vector<Rational>{1, 1}), 2);
    EXPECT_EQ(evaluate(P("x0*x1*x2"), std::vector<Rational>{1, 0, 5}), 0);
    EXPECT_EQ(evaluate(P("x0^3+x1^3+x2^3"), std::vector<Rational>{1, 1, 0}), 2);
    auto c = evaluate(P("x0^2 + x1^2", 2), std::vector<Complex>{{0, 1}, {1, 0}});
    EXPECT_NEAR(std::abs(c), 0.0, 1e-15);
    EXPECT_THROW(evaluate(P("x0"), std::vector<Rational>{1, 2}), std::invalid_argument);
}

TEST(Poly, MonomialBasis) {
    auto b = monomial_basis(2, 3);
    ASSERT_EQ(b.size(), 4u);
    EXPECT_EQ(b[0], Monomial({3, 0}));
    EXPECT_EQ(b[1], Monomial({2, 1}));
    EXPECT_EQ(b[2], Monomial({1, 2}));
    EXPECT_EQ(b[3], Monomial({0, 3}));
    EXPECT_EQ(monomial_basis(3, 2).size(), 6u);
    auto one = monomial_basis(3, 0);
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0], Monomial::one(3));
}

TEST(Poly, MonomialBasisIsGrevlex) {
    // x0^2 > x0x1 > x1^2 > x0x2 > x1x2 > x2^2 in grevlex.
    auto b = monomial_basis(3, 2);
    std::vector<Monomial> expect{Monomial({2, 0, 0}), Monomial({1, 1, 0}), Monomial({0, 2, 0}),
                                 Monomial({1, 0, 1}), Monomial({0, 1, 1}), Monomial({0, 0, 2})};
    EXPECT_EQ(b, expect);
}

TEST(Poly, MonomialBasisCountsAndDistinct) {
    for (int nv = 1; nv <= 5; ++nv)
        for (int e = 0; e <= 6; ++e) {
            auto b = monomial_basis(nv, e);
            EXPECT_EQ(b.size(), binom(nv - 1 + e, e));
            std::set<std::vector<int>> seen;
            for (const auto& m : b) {
                EXPECT_EQ(m.degree(), e);
                seen.insert(m.exponents());
            }
            EXPECT_EQ(seen.size(), b.size());
        }
}

TEST(Poly, TextRoundTrip) {
    auto p = P("3/2*x0^2*x1 - x2^3 + x0 x1 x2");
    EXPECT_EQ(p.to_string(), "3/2*x0^2*x1 + x0*x1*x2 - x2^3");
    EXPECT_EQ(Poly::parse(p.to_string(), 3), p);
    EXPECT_EQ(P("x0^1*x1"), P("x0x1"));
    EXPECT_EQ(P("-x0 + 2"), Poly::constant(3, 2) - Poly::variable(3, 0));
    EXPECT_TRUE(P("0").is_zero());
}

TEST(Poly, ParseRejectsGarbage) {
    EXPECT_THROW(P("x3"), std::invalid_argument);
    EXPECT_THROW(P("x0^"), std::invalid_argument);
    EXPECT_THROW(P("2/0*x0"), std::invalid_argument);
    EXPECT_THROW(P("y0"), std::invalid_argument);
    EXPECT_THROW(P(""), std::invalid_argument);
}

TEST(PolyProperty, EulerIdentity) {
    TensorSampler s(11);
    for (int trial = 0; trial < 30; ++trial) {
        int nv = 2 + trial % 3, d = 1 + trial % 5;
        Poly p = s.form(nv, d);
        Poly sum(nv);
        for (int i = 0; i < nv; ++i) sum += Poly::variable(nv, i) * partial_derivative(p, i);
        EXPECT_EQ(sum, Rational(d) * p);
    }
}

TEST(PolyProperty, MixedPartialsCommute) {
    TensorSampler s(12);
    for (int trial = 0; trial < 20; ++trial) {
        Poly p = s.form(3, 4);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                EXPECT_EQ(partial_derivative(partial_derivative(p, i), j), partial_derivative(partial_derivative(p, j), i));
    }
}

TEST(PolyProperty, EvaluationIsMultiplicative) {
    TensorSampler s(13);
    for (int trial = 0; trial < 30; ++trial) {
        Poly p = s.form(3, 2), q = s.form(3, 3);
        auto pt = s.point(2);
        EXPECT_EQ(evaluate(p * q, pt), evaluate(p, pt) * evaluate(q, pt));
        EXPECT_EQ(evaluate(p + p, pt), 2 * evaluate(p, pt));
    }
}

TEST(PolyProperty, CoefficientVectorRoundTrip) {
    TensorSampler s(14);
    auto basis = monomial_basis(3, 3);
    for (int trial = 0; trial < 10; ++trial) {
        Poly p = s.form(3, 3);
        auto v = to_coefficients(p, basis);
        EXPECT_EQ(from_coefficients(3, basis, v), p);
    }
}
