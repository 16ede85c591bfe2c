#include "eigsch/geometry.hpp"
#include "eigsch/random.hpp"

#include <gtest/gtest.h>

using namespace eigsch;

namespace {

PluckerVector omega(int n, std::vector<std::pair<std::pair<int, int>, int>> terms) {
    PluckerVector w{n, std::vector<Rational>(pair_count(n), Rational(0))};
    for (auto [ij, c] : terms) w.coords[pair_index(n, ij.first, ij.second)] += c;
    return w;
}

std::vector<RatPoint> fermat_cubic_points() {
    std::vector<RatPoint> pts;
    for (int mask = 1; mask < 8; ++mask) pts.push_back(RatPoint{{mask & 1, (mask >> 1) & 1, (mask >> 2) & 1}});
    return pts;
}

bool satisfies(const RatMatrix& a, const std::vector<Rational>& v) {
    for (const auto& x : a.apply(v))
        if (x != 0) return false;
    return true;
}

}  // namespace

TEST(Laguerre, Evaluation) {
    auto t = gradient_tensor(SymTensor::make(2, 3, Poly::parse("x0^3+x1^3+x2^3", 3)));
    auto w = laguerre(t, RatPoint{{1, 2, 0}});
    // g(P) = (3, 12, 0): p01 = 1*12 - 2*3, p02 = 0, p12 = 0.
    EXPECT_EQ(w.coords, (std::vector<Rational>{6, 0, 0}));
    EXPECT_THROW(laguerre(t, RatPoint{{1, 1, 1}}), Indeterminacy);
    auto u = PSTensor::make(1, 3, {Poly::parse("x1^2", 2), Poly::parse("x0^2", 2)});
    auto v = laguerre(u, RatPoint{{1, 2}});
    ASSERT_EQ(v.coords.size(), 1u);
    EXPECT_EQ(v.coords[0], -7);
}

TEST(Plucker, RankOfWedgeMap) {
    auto e01 = omega(3, {{{0, 1}, 1}});
    EXPECT_EQ(rank_A_omega(e01), 2u);
    EXPECT_TRUE(is_decomposable(e01));
    auto nd = omega(3, {{{0, 1}, 1}, {{2, 3}, 1}});
    EXPECT_EQ(rank_A_omega(nd), 4u);
    EXPECT_FALSE(is_decomposable(nd));
    EXPECT_THROW(fiber_line(nd), std::invalid_argument);
    TensorSampler s(51);
    for (int k = 0; k < 10; ++k) {
        PluckerVector w{2, {Rational(s.coefficient()), Rational(s.coefficient()), Rational(1 + k)}};
        EXPECT_EQ(rank_A_omega(w), 1u);
    }
    EXPECT_THROW(rank_A_omega(omega(2, {})), std::invalid_argument);
}

TEST(Plucker, FiberLines) {
    auto a = fiber_line(omega(3, {{{0, 1}, 1}}));
    EXPECT_EQ(rank(a), 2u);
    EXPECT_TRUE(satisfies(a, {1, 0, 0, 0}));
    EXPECT_TRUE(satisfies(a, {0, 1, 0, 0}));
    EXPECT_FALSE(satisfies(a, {0, 0, 1, 0}));
    EXPECT_FALSE(satisfies(a, {0, 0, 0, 1}));
    auto b = fiber_line(omega(2, {{{0, 1}, 1}}));
    ASSERT_EQ(b.rows(), 1u);
    EXPECT_EQ(b(0, 0), 0);
    EXPECT_EQ(b(0, 1), 0);
    EXPECT_EQ(b(0, 2), 1);
}

TEST(PluckerProperty, KernelIsSpanOfFactors) {
    TensorSampler s(52);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 2 + trial % 3;
        auto v = s.point(n), u = s.point(n);
        auto w = wedge(v, u);
        if (w.is_zero()) continue;
        auto kb = kernel_basis(wedge_matrix(w));
        ASSERT_EQ(kb.dim, 2u);
        Echelon span(static_cast<std::size_t>(n + 1));
        span.insert(v);
        span.insert(u);
        for (const auto& k : kb.vectors) EXPECT_TRUE(span.in_span(k));
    }
}

TEST(LaguerreProperty, FiberContainsPointAndImage) {
    TensorSampler s(53);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 2 + trial % 2;
        auto t = s.partially_symmetric(n, 3);
        RatPoint p{s.point(n)};
        auto w = laguerre(t, p);
        EXPECT_EQ(rank_A_omega(w), static_cast<std::size_t>(n - 1));
        auto a = fiber_line(w);
        std::vector<Rational> g;
        for (const auto& f : t.forms) g.push_back(evaluate(f, p.coords));
        EXPECT_TRUE(satisfies(a, p.coords));
        EXPECT_TRUE(satisfies(a, g));
    }
}

TEST(Collinearity, FermatCubicIsSharp) {
    auto r = collinearity_report(fermat_cubic_points(), 3);
    EXPECT_TRUE(r.collinear_violations.empty());
    // Lines x_i = 0 and x_i = x_j each carry three of the seven points.
    EXPECT_EQ(r.sharp_lines.size(), 6u);
    for (const auto& l : r.sharp_lines) EXPECT_EQ(l.points.size(), 3u);
}

TEST(Collinearity, FourPointsOnALine) {
    std::vector<RatPoint> pts;
    for (int t = 0; t < 4; ++t) pts.push_back(RatPoint{{1, t, 0}});
    auto r = collinearity_report(pts, 3);
    ASSERT_EQ(r.collinear_violations.size(), 1u);
    EXPECT_EQ(r.collinear_violations[0].points, (std::vector<std::size_t>{0, 1, 2, 3}));
}

TEST(Collinearity, GenericPointsEmpty) {
    auto r = collinearity_report({RatPoint{{1, 0, 0}}, RatPoint{{0, 1, 0}}, RatPoint{{0, 0, 1}}}, 3);
    EXPECT_TRUE(r.collinear_violations.empty());
    EXPECT_TRUE(r.sharp_lines.empty());
    EXPECT_THROW(collinearity_report({RatPoint{{1, 0, 0}}}, 3), std::invalid_argument);
    EXPECT_THROW(collinearity_report({RatPoint{{1, 0, 0}}, RatPoint{{2, 0, 0}}}, 3), std::invalid_argument);
}

TEST(Collinearity, ComplexPoints) {
    std::vector<ComplexPoint> pts;
    for (int t = 0; t < 4; ++t) pts.push_back(ComplexPoint{{Complex(1), Complex(t, 1), Complex(0)}});
    auto r = collinearity_report(pts, 3);
    EXPECT_EQ(r.collinear_violations.size(), 1u);
}

TEST(Curves, SixPointsOnAConic) {
    // (t^2 : 1 : t) lies on x0 x1 - x2^2.
    std::vector<RatPoint> pts;
    for (int t = -2; t <= 3; ++t) pts.push_back(RatPoint{{t * t, 1, t}});
    auto r = curve_incidence_report(pts, 3);
    ASSERT_EQ(r.curve_candidates.size(), 1u);
    EXPECT_EQ(r.curve_candidates[0].k, 2);
    auto conic = Poly::parse(r.curve_candidates[0].curve, 3);
    for (const auto& p : pts) EXPECT_EQ(evaluate(conic, p.coords), 0);
    auto target = Poly::parse("x0*x1 - x2^2", 3);
    const auto& [m, c] = *target.terms().begin();
    EXPECT_EQ(conic * (c / conic.coefficient(m)), target);
}

TEST(Curves, FermatCubicHasNoConicSextuple) {
    auto r = curve_incidence_report(fermat_cubic_points(), 3);
    EXPECT_TRUE(r.curve_candidates.empty());
    EXPECT_TRUE(r.curve_search_complete);
    auto all = fermat_cubic_points();
    std::vector<RatPoint> few(all.begin(), all.begin() + 5);
    EXPECT_TRUE(curve_incidence_report(few, 3).curve_candidates.empty());
}

TEST(Curves, RequiresPlane) {
    EXPECT_THROW(curve_incidence_report({RatPoint{{1, 0, 0, 0}}, RatPoint{{0, 1, 0, 0}}}, 3), std::invalid_argument);
}
