#include <cmath>

#include <gtest/gtest.h>

#include "linsup/proximity.hpp"
#include "test_support.hpp"

using namespace linsup;

TEST(Proximity, ZeroOnFeasibleNonnegativePoints)
{
    Engine rng(3);
    const Vector m{1, 0.5, 2};
    const Problem p = test::random_feasible(rng, 7, 3, m);
    EXPECT_EQ(proximity(m, p), 0.0);
}

TEST(Proximity, HandEvaluatedRowTerm)
{
    // (1/2)(2^2 / 1) + 0
    const Problem p(1, 1, {1}, {0}, {1});
    EXPECT_DOUBLE_EQ(proximity(Vector{2}, p), 2.0);
}

TEST(Proximity, HandEvaluatedOrthantTerm)
{
    // row satisfied; (1/2)(3^2)
    const Problem p(1, 1, {1}, {5}, {1});
    EXPECT_DOUBLE_EQ(proximity(Vector{-3}, p), 4.5);
}

TEST(Proximity, ZeroIffFeasible)
{
    Engine rng(10);
    const Problem p(3, 2, {1, 1, -1, 2, 0.5, -1}, {4, 3, 1}, {1, 1});
    for (int trial = 0; trial < 2000; ++trial) {
        const Vector x = test::random_vector(rng, 2, -3.0, 6.0);
        bool feasible = x[0] >= 0 && x[1] >= 0;
        for (std::size_t i = 0; i < 3; ++i)
            feasible = feasible && dot(p.row(i), x) <= p.b()[i];
        if (feasible)
            EXPECT_EQ(proximity(x, p), 0.0);
        else
            EXPECT_GT(proximity(x, p), 0.0);
    }
}

TEST(Proximity, RowScalingInvariance)
{
    const Problem p(2, 2, {1, 2, -1, 1}, {0.5, 0.25}, {1, 1});
    const Problem scaled(2, 2, {7, 14, -1, 1}, {3.5, 0.25}, {1, 1});
    const Vector x{3, 4}; // violates row 0
    EXPECT_NEAR(proximity(x, p), proximity(x, scaled), 1e-12);
}

TEST(Proximity, GradientMatchesFiniteDifferences)
{
    Engine rng(44);
    GeneratorSpec g;
    g.pair_count = 8;
    g.cols = 6;
    g.seed = 5;
    const Problem p = generate_infeasible(g);
    int checked = 0;
    while (checked < 50) {
        const Vector x = test::random_vector(rng, 6, -40.0, 40.0);
        bool near_kink = false;
        for (std::size_t i = 0; i < p.rows(); ++i)
            near_kink = near_kink || std::abs(dot(p.row(i), x) - p.b()[i]) < 1e-6;
        for (double v : x)
            near_kink = near_kink || std::abs(v) < 1e-6;
        if (near_kink)
            continue;
        const Vector g_an = proximity_gradient(x, p);
        for (std::size_t j = 0; j < 6; ++j) {
            const double h = 1e-6;
            Vector xp = x, xm = x;
            xp[j] += h;
            xm[j] -= h;
            const double fd = (proximity(xp, p) - proximity(xm, p)) / (2 * h);
            EXPECT_NEAR(g_an[j], fd, 1e-5 * std::max(1.0, std::abs(fd)));
        }
        ++checked;
    }
}

TEST(Objective, Examples)
{
    EXPECT_EQ(objective(Vector{1, 2, 3}, Vector{0, 0, 0}), 0.0);
    EXPECT_EQ(objective(Vector{4, -5, 6}, Vector{0, 1, 0}), -5.0);
    Engine rng(1);
    for (int trial = 0; trial < 20; ++trial) {
        const Vector x = test::random_vector(rng, 5, -1.0, 1.0);
        const Vector c = test::random_vector(rng, 5, -1.0, 1.0);
        double s = 0.0;
        for (int j = 4; j >= 0; --j)
            s += c[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
        EXPECT_NEAR(objective(x, c), s, 1e-14);
    }
}

TEST(Evaluate, BundlesBoth)
{
    const Problem p(1, 2, {1, 0}, {0}, {2, 3});
    const Evaluation e = evaluate(Vector{1, 1}, p);
    EXPECT_DOUBLE_EQ(e.proximity, 0.5);
    EXPECT_DOUBLE_EQ(e.objective, 5.0);
}
