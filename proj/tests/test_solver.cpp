#include "eigsch/geometry.hpp"
#include "eigsch/random.hpp"
#include "eigsch/solver.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace eigsch;

namespace {

Poly fermat(int n, int d) {
    Poly f(n + 1);
    for (int i = 0; i <= n; ++i) f += Poly::variable(n + 1, i).pow(d);
    return f;
}

// Direct check of v_i^(d-1) = lambda v_i, independent of the minors.
bool fermat_eigenvector(const ComplexPoint& p, int d, double tol) {
    std::size_t lead = 0;
    for (std::size_t k = 0; k < p.coords.size(); ++k)
        if (std::abs(p.coords[k]) > std::abs(p.coords[lead])) lead = k;
    Complex lambda = std::pow(p.coords[lead], d - 1) / p.coords[lead];
    for (const auto& v : p.coords)
        if (std::abs(std::pow(v, d - 1) - lambda * v) > tol) return false;
    return true;
}

double nearest(const ComplexPoint& p, const EigenpointSet& s) {
    double best = 1e9;
    for (const auto& q : s.points) best = std::min(best, chordal_distance(p, as_complex(q)));
    return best;
}

}  // namespace

TEST(Fermat, SmallCases) {
    auto a = fermat_eigenpoints(1, 3);
    ASSERT_EQ(a.size(), 3u);
    std::set<std::vector<Rational>> got;
    for (const auto& p : a.points) got.insert(std::get<RatPoint>(p).coords);
    EXPECT_EQ(got, (std::set<std::vector<Rational>>{{1, 0}, {0, 1}, {1, 1}}));

    auto b = fermat_eigenpoints(2, 3);
    ASSERT_EQ(b.size(), 7u);
    for (const auto& p : b.points)
        for (const auto& c : std::get<RatPoint>(p).coords) EXPECT_TRUE(c == 0 || c == 1);

    auto c = fermat_eigenpoints(2, 4);
    ASSERT_EQ(c.size(), 13u);
    for (const auto& p : c.points) {
        const auto& v = std::get<RatPoint>(p).coords;
        EXPECT_EQ(normalized(std::get<RatPoint>(p)).coords, v);
        for (const auto& x : v) EXPECT_TRUE(x == 0 || x == 1 || x == -1);
    }
    EXPECT_THROW(fermat_eigenpoints(2, 2), std::invalid_argument);
}

TEST(FermatProperty, CountsAndMembership) {
    for (int n = 1; n <= 4; ++n)
        for (int d = 3; d <= 6; ++d) {
            auto s = fermat_eigenpoints(n, d);
            EXPECT_EQ(s.size(), w_count(n, d)) << n << " " << d;
            for (const auto& p : s.points) EXPECT_TRUE(fermat_eigenvector(as_complex(p), d, 1e-12));
            for (std::size_t i = 0; i < s.size(); ++i)
                for (std::size_t j = i + 1; j < s.size(); ++j)
                    EXPECT_GT(chordal_distance(as_complex(s.points[i]), as_complex(s.points[j])), 1e-6);
        }
}

TEST(BinarySolver, FermatCubic) {
    auto s = solve_eigenpoints_p1(gradient_tensor(SymTensor::make(1, 3, fermat(1, 3))));
    ASSERT_EQ(s.size(), 3u);
    std::set<std::vector<Rational>> got;
    for (const auto& p : s.points) got.insert(std::get<RatPoint>(p).coords);
    EXPECT_EQ(got, (std::set<std::vector<Rational>>{{1, 0}, {0, 1}, {1, 1}}));
}

TEST(BinarySolver, CubeRootsOfUnity) {
    auto t = PSTensor::make(1, 3, {Poly::parse("x1^2", 2), Poly::parse("x0^2", 2)});
    auto s = solve_eigenpoints_p1(t);
    ASSERT_EQ(s.size(), 3u);
    EXPECT_EQ(std::get<RatPoint>(s.points[0]).coords, (std::vector<Rational>{1, 1}));
    for (std::size_t k = 1; k < 3; ++k) {
        auto p = std::get<ComplexPoint>(s.points[k]);
        EXPECT_NEAR(std::abs(std::pow(p.coords[1] / p.coords[0], 3) - 1.0), 0, 1e-12);
        EXPECT_GT(std::abs(p.coords[1].imag()), 0.5);
        EXPECT_TRUE(is_eigenpoint(t, p).is_eigenpoint);
    }
}

TEST(BinarySolver, MultiplicitiesAndErrors) {
    auto t = PSTensor::make(1, 4, {Poly::parse("0", 2), Poly::parse("x1^3 - 2*x0*x1^2 + x0^2*x1", 2)});
    // f_01 = x0 x1 (x1 - x0)^2.
    auto s = solve_eigenpoints_p1(t);
    int total = 0;
    for (std::size_t k = 0; k < s.size(); ++k) total += s.multiplicity[k];
    EXPECT_EQ(total, 4);
    EXPECT_EQ(s.size(), 3u);
    auto id = PSTensor::make(1, 2, {Poly::parse("x0", 2), Poly::parse("x1", 2)});
    EXPECT_THROW(solve_eigenpoints_p1(id), std::domain_error);
}

TEST(BinarySolverProperty, RandomTensorsHaveDRoots) {
    TensorSampler smp(61);
    for (int trial = 0; trial < 20; ++trial) {
        int d = 2 + trial % 5;
        auto t = smp.partially_symmetric(1, d);
        auto s = solve_eigenpoints_p1(t);
        int total = 0;
        for (std::size_t k = 0; k < s.size(); ++k) {
            total += s.multiplicity[k];
            if (const auto* r = std::get_if<RatPoint>(&s.points[k]))
                EXPECT_TRUE(is_eigenpoint(t, *r));
            else
                EXPECT_LT(s.residual[k], 1e-8);
        }
        EXPECT_EQ(total, d);
    }
}

TEST(TernarySolver, FermatCubic) {
    auto s = solve_eigenpoints_p2(gradient_tensor(SymTensor::make(2, 3, fermat(2, 3))));
    auto exact = fermat_eigenpoints(2, 3);
    ASSERT_EQ(s.size(), 7u);
    for (const auto& p : exact.points) EXPECT_LT(nearest(as_complex(p), s), 1e-10);
}

TEST(TernarySolver, FermatQuartic) {
    auto s = solve_eigenpoints_p2(gradient_tensor(SymTensor::make(2, 4, fermat(2, 4))));
    auto exact = fermat_eigenpoints(2, 4);
    ASSERT_EQ(s.size(), 13u);
    for (const auto& p : exact.points) EXPECT_LT(nearest(as_complex(p), s), 1e-10);
}

TEST(TernarySolver, PositiveDimensionalRejected) {
    EXPECT_THROW(solve_eigenpoints_p2(gradient_tensor(SymTensor::make(2, 3, Poly::parse("x0^3", 3)))), std::domain_error);
}

TEST(TernarySolverProperty, RandomTensors) {
    TensorSampler smp(62);
    for (int trial = 0; trial < 6; ++trial) {
        int d = 3 + trial % 2;
        auto t = trial < 4 ? smp.partially_symmetric(2, d) : gradient_tensor(smp.symmetric(2, d));
        auto s = solve_eigenpoints_p2(t);
        ASSERT_EQ(s.size(), w_count(2, d));
        for (std::size_t k = 0; k < s.size(); ++k) {
            EXPECT_TRUE(s.polished[k]);
            EXPECT_TRUE(is_eigenpoint(t, as_complex(s.points[k]), 1e-8).is_eigenpoint);
        }
        std::vector<ComplexPoint> pts;
        for (const auto& p : s.points) pts.push_back(as_complex(p));
        EXPECT_TRUE(collinearity_report(pts, d).collinear_violations.empty());
    }
}

TEST(TernarySolverProperty, InvariantUnderTrivialFamilyAndScaling) {
    TensorSampler smp(63);
    auto t = smp.partially_symmetric(2, 3);
    auto base = solve_eigenpoints_p2(t);
    PSTensor u = scaled(t, ratio(-7, 3));
    Poly h = smp.form(3, 1);
    for (int k = 0; k <= 2; ++k) u.forms[static_cast<std::size_t>(k)] += Poly::variable(3, k) * h;
    auto moved = solve_eigenpoints_p2(u);
    ASSERT_EQ(base.size(), moved.size());
    for (const auto& p : base.points) EXPECT_LT(nearest(as_complex(p), moved), 1e-8);
}
