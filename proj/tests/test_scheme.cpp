#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "tsmac/scheme.hpp"

using namespace tsmac;

namespace {

Problem constant_problem(double c, Reaction f) {
    return Problem("constant", 1.0, std::move(f), [c](double, double) { return c; },
                   [c](double, double, double) { return c; },
                   SpaceTimeFunction([c](double, double, double) { return c; }));
}

Problem pure_diffusion(double a, SpaceTimeFunction phi) {
    return Problem("diffusion", a, [](double) { return 0.0; },
                   [phi](double x, double y) { return phi(x, y, 0.0); }, phi);
}

ScalarField random_interior(const Grid& g, std::mt19937_64& rng, const Problem& p, double t) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    ScalarField f(g);
    for (double& v : f.values()) v = dist(rng);
    fill_boundary(f, p, t);
    return f;
}

void expect_boundary_matches(const ScalarField& u, const Problem& p, double t) {
    const Grid& g = u.grid();
    for (int j = 0; j <= g.M(); ++j) {
        for (int i = 0; i <= g.M(); ++i) {
            if (g.on_boundary(i, j)) EXPECT_EQ(u(i, j), p.boundary(g.x(i), g.y(j), t));
        }
    }
}

std::pair<double, double> min_max(const ScalarField& f) {
    const auto [lo, hi] = std::minmax_element(f.values().begin(), f.values().end());
    return {*lo, *hi};
}

}  // namespace

TEST(CflMargin, Values) {
    EXPECT_DOUBLE_EQ(cfl_margin(1.0, 0.125, 0.5), 1.0);
    const double h = 1.0 / 8;
    EXPECT_DOUBLE_EQ(cfl_margin(1.0, h * h, h), 2.0);
    const double h32 = 1.0 / 32;
    EXPECT_DOUBLE_EQ(cfl_margin(1.0, h32 * h32 / 2, h32), 1.0);
}

TEST(Stages, TwoCellHandExample) {
    // M=2, k=1/8, a=1, f=0, phi=0, single interior value 1.
    const Grid g(2, 8, 1.0);
    ASSERT_EQ(g.k(), 0.125);
    const Problem p = pure_diffusion(1.0, [](double, double, double) { return 0.0; });
    ScalarField u(g, 0.0);
    u(1, 1) = 1.0;

    const ScalarField star = stage_y_half(u, p, g.t(1));
    EXPECT_EQ(star(1, 1), 0.5);
    const ScalarField dstar = stage_x_full(star, p, g.t(1));
    EXPECT_EQ(dstar(1, 1), 0.0);
    const ScalarField next = stage_y_half_final(dstar, p, g.t(1));
    EXPECT_EQ(next(1, 1), 0.0);

    const StepStages s = step(u, p, 0);
    EXPECT_EQ(s.u_star, star);
    EXPECT_EQ(s.u_dstar, dstar);
    EXPECT_EQ(s.u_next(1, 1), 0.0);
}

TEST(Stages, XStageLeavesLinearInXUnchanged) {
    const Grid g(8, 20, 1.0);
    const SpaceTimeFunction phi = [](double x, double, double) { return 2.0 - 3.0 * x; };
    const Problem p = pure_diffusion(1.0, phi);
    const ScalarField u(g, [&](double x, double y) { return phi(x, y, 0.0); });
    const ScalarField out = stage_x_full(u, p, g.t(1));
    for (int j = 1; j < 8; ++j) {
        for (int i = 1; i < 8; ++i) EXPECT_NEAR(out(i, j), u(i, j), 1e-14);
    }
}

TEST(Stages, YStagesShareOneKernel) {
    std::mt19937_64 rng(8);
    const Problem p = problem_by_id(3);
    const Grid g(16, 512, 1.0);
    const ScalarField u = random_interior(g, rng, p, 0.0);
    EXPECT_EQ(stage_y_half(u, p, 0.25), stage_y_half_final(u, p, 0.25));
}

TEST(Stages, BoundariesComeFromNextTimeLevel) {
    const Problem p = problem_by_id(2);
    const Grid g(8, 128, 1.0);
    const ScalarField u0(g, [&](double x, double y) { return p.initial(x, y); });
    const StepStages s = step(u0, p, 5);
    const double t_next = g.t(6);
    expect_boundary_matches(s.u_star, p, t_next);
    expect_boundary_matches(s.u_dstar, p, t_next);
    expect_boundary_matches(s.u_next, p, t_next);
}

TEST(Step, ConstantEquilibriumIsBitwiseFixed) {
    const Problem logistic = problem_by_id(1);
    for (double c : {0.0, 1.0}) {
        const Problem p = constant_problem(c, [&](double u) { return logistic.reaction(u); });
        const Grid g(8, 128, 1.0);
        const ScalarField u(g, c);
        const StepStages s = step(u, p, 3);
        EXPECT_EQ(s.u_star, u);
        EXPECT_EQ(s.u_dstar, u);
        EXPECT_EQ(s.u_next, u);
    }
    const Problem flat = constant_problem(0.37, [](double) { return 0.0; });
    const ScalarField u(Grid(5, 50, 1.0), 0.37);
    EXPECT_EQ(step(u, flat, 0).u_next, u);
}

TEST(Step, LinearWithoutReactionAndZeroBoundary) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    const Problem p = pure_diffusion(1.0, [](double, double, double) { return 0.0; });
    for (int trial = 0; trial < 200; ++trial) {
        const int M = 2 + trial % 15;
        const Grid g(M, 2 * M * M, 1.0);
        const ScalarField u = random_interior(g, rng, p, 0.0);
        const ScalarField v = random_interior(g, rng, p, 0.0);
        const double alpha = coef(rng), beta = coef(rng);
        ScalarField combo(g);
        for (std::size_t n = 0; n < combo.size(); ++n) {
            combo.values()[n] = alpha * u.values()[n] + beta * v.values()[n];
        }
        const ScalarField lhs = step(combo, p, 0).u_next;
        const ScalarField su = step(u, p, 0).u_next;
        const ScalarField sv = step(v, p, 0).u_next;
        const double scale = std::max(1.0, lhs.max_abs());
        for (std::size_t n = 0; n < lhs.size(); ++n) {
            const double rhs = alpha * su.values()[n] + beta * sv.values()[n];
            EXPECT_LE(std::abs(lhs.values()[n] - rhs), 1e-13 * scale);
        }
    }
}

TEST(Step, DiscreteMaximumPrincipleUnderCfl) {
    std::mt19937_64 rng(123);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const int M = 2 + trial % 19;
        const double a = 0.1 + 2.0 * unit(rng);
        const double h = 1.0 / M;
        // Largest N keeping 2ak/h^2 <= 1 for T = 1, then maybe a few more steps.
        const int n_min = static_cast<int>(std::ceil(2.0 * a / (h * h)));
        const Grid g(M, n_min + static_cast<int>(5 * unit(rng)), 1.0);
        ASSERT_LE(cfl_margin(a, g.k(), g.h()), 1.0);
        const double phase = unit(rng);
        const Problem p = pure_diffusion(a, [phase](double x, double y, double t) {
            return std::sin(3.0 * x + 2.0 * y + 5.0 * t + 6.0 * phase);
        });
        const int n = trial % g.N();
        const ScalarField u = random_interior(g, rng, p, g.t(n));
        const StepStages s = step(u, p, n);

        auto check = [&](const ScalarField& in, const ScalarField& out) {
            const auto [lo, hi] = min_max(in);
            for (int j = 1; j < M; ++j) {
                for (int i = 1; i < M; ++i) {
                    EXPECT_GE(out(i, j), lo - 1e-14);
                    EXPECT_LE(out(i, j), hi + 1e-14);
                }
            }
        };
        check(u, s.u_star);
        check(s.u_star, s.u_dstar);
        check(s.u_dstar, s.u_next);
    }
}

TEST(Solve, EquilibriumHasZeroError) {
    const Problem logistic = problem_by_id(1);
    const Problem p = constant_problem(1.0, [&](double u) { return logistic.reaction(u); });
    const Grid g(6, 72, 1.0);
    const RunResult r = solve(p, g);
    EXPECT_FALSE(r.blew_up);
    ASSERT_EQ(r.error_trace.size(), 73u);
    for (double e : r.error_trace) EXPECT_EQ(e, 0.0);
    EXPECT_EQ(r.final, ScalarField(g, 1.0));
}

TEST(Solve, TraceLengthsAndNoExact) {
    const Problem p = problem_by_id(3);
    const Grid g(4, 32, 1.0);
    const RunResult with = solve(p, g, true);
    EXPECT_EQ(with.error_trace.size(), 33u);
    EXPECT_EQ(with.norm_trace.size(), 33u);
    EXPECT_EQ(with.error_trace[0], 0.0);
    const RunResult without = solve(p, g, false);
    EXPECT_TRUE(without.error_trace.empty());
    EXPECT_EQ(without.norm_trace, with.norm_trace);
}

TEST(Solve, Test1ErrorAtEighthMatchesTable) {
    const Grid g(8, 128, 1.0);
    const RunResult r = solve(problem_by_id(1), g);
    ASSERT_FALSE(r.blew_up);
    const double linf = *std::max_element(r.error_trace.begin(), r.error_trace.end());
    // Reference 0.3849e-3; +-20% band.
    EXPECT_NEAR(linf, 3.849e-4, 0.2 * 3.849e-4);
    // Independent numpy implementation of the same three sweeps gives 3.3399825515e-4.
    EXPECT_NEAR(linf, 3.3399825515e-4, 1e-12);
}

TEST(Solve, Test1DivergesWhenKEqualsHSquared) {
    const Grid g(8, 64, 1.0);
    const RunResult r = solve(problem_by_id(1), g);
    EXPECT_TRUE(r.blew_up);
    ASSERT_TRUE(r.blowup_step.has_value());
    EXPECT_LT(*r.blowup_step, 64);
    EXPECT_EQ(r.error_trace.size(), static_cast<std::size_t>(*r.blowup_step) + 1);
    EXPECT_TRUE(is_diverged(r.final));
}

TEST(Solve, BitwiseDeterministic) {
    const Problem p = problem_by_id(2);
    const Grid g(16, 512, 1.0);
    const RunResult a = solve(p, g);
    const RunResult b = solve(p, g);
    EXPECT_EQ(a.final, b.final);
    EXPECT_EQ(a.error_trace, b.error_trace);
    EXPECT_EQ(a.norm_trace, b.norm_trace);
}

TEST(Solve, ErrorsShrinkAlongTheLadder) {
    for (int id : {1, 2, 3}) {
        const Problem p = problem_by_id(id);
        double prev = INFINITY;
        for (int M : {2, 4, 8, 16, 32}) {
            const RunResult r = solve(p, Grid(M, 2 * M * M, 1.0));
            ASSERT_FALSE(r.blew_up);
            const double worst = *std::max_element(r.error_trace.begin(), r.error_trace.end());
            EXPECT_LT(worst, prev) << "test" << id << " M=" << M;
            prev = worst;
        }
    }
}

TEST(Divergence, GuardCatchesOverflowAndNonFinite) {
    ScalarField f(Grid(3, 1, 1.0), 1.0);
    EXPECT_FALSE(is_diverged(f));
    f(1, 1) = 0.99e15;
    EXPECT_FALSE(is_diverged(f));
    f(1, 1) = -1.01e15;
    EXPECT_TRUE(is_diverged(f));
    f(1, 1) = NAN;
    EXPECT_TRUE(is_diverged(f));
}
