#include "tsmac/scheme.hpp"

#include <cassert>
#include <chrono>
#include <cmath>
#include <iostream>

#include <fmt/format.h>

namespace tsmac {

namespace {

// Shared by both y-sweeps: out = u + (dt) (a delta2_y u + f(u)) with dt = k/2.
ScalarField y_sweep(const ScalarField& u, const Problem& p, double t_next) {
    const Grid& g = u.grid();
    const int M = g.M();
    const double half_k = 0.5 * g.k();
    const double coef = p.a() / (g.h() * g.h());
    ScalarField out(g);
    for (int j = 1; j < M; ++j) {
        for (int i = 1; i < M; ++i) {
            const double c = u(i, j);
            const double diffusion = coef * (u(i, j + 1) - 2.0 * c + u(i, j - 1));
            out(i, j) = c + half_k * (diffusion + p.reaction(c));
        }
    }
    fill_boundary(out, p, t_next);
    return out;
}

ScalarField error_field(const ScalarField& u, const Problem& p, double t) {
    const Grid& g = u.grid();
    ScalarField exact(g, [&](double x, double y) { return p.exact(x, y, t); });
    return u - exact;
}

}  // namespace

double cfl_margin(double a, double k, double h) { return 2.0 * a * k / (h * h); }

bool is_diverged(const ScalarField& u) {
    for (double v : u.values()) {
        if (!std::isfinite(v) || std::abs(v) > kOverflowGuard) return true;
    }
    return false;
}

void fill_boundary(ScalarField& u, const Problem& p, double t) {
    const Grid& g = u.grid();
    const int M = g.M();
    for (int i = 0; i <= M; ++i) {
        u(i, 0) = p.boundary(g.x(i), g.y(0), t);
        u(i, M) = p.boundary(g.x(i), g.y(M), t);
    }
    for (int j = 1; j < M; ++j) {
        u(0, j) = p.boundary(g.x(0), g.y(j), t);
        u(M, j) = p.boundary(g.x(M), g.y(j), t);
    }
}

ScalarField stage_y_half(const ScalarField& u, const Problem& p, double t_next) {
    return y_sweep(u, p, t_next);
}

ScalarField stage_x_full(const ScalarField& u, const Problem& p, double t_next) {
    const Grid& g = u.grid();
    const int M = g.M();
    const double coef = p.a() * g.k() / (g.h() * g.h());
    ScalarField out(g);
    for (int j = 1; j < M; ++j) {
        for (int i = 1; i < M; ++i) {
            const double c = u(i, j);
            out(i, j) = c + coef * (u(i + 1, j) - 2.0 * c + u(i - 1, j));
        }
    }
    fill_boundary(out, p, t_next);
    return out;
}

ScalarField stage_y_half_final(const ScalarField& u, const Problem& p, double t_next) {
    return y_sweep(u, p, t_next);
}

StepStages step(const ScalarField& u, const Problem& p, int n) {
    const Grid& g = u.grid();
    assert(n >= 0 && n < g.N());
    const double t_next = g.t(n + 1);
    ScalarField star = stage_y_half(u, p, t_next);
    ScalarField dstar = stage_x_full(star, p, t_next);
    ScalarField next = stage_y_half_final(dstar, p, t_next);
    return {std::move(star), std::move(dstar), std::move(next)};
}

RunResult solve(const Problem& p, const Grid& g, bool record_errors) {
    p.check_compatibility(g);
    const double margin = cfl_margin(p.a(), g.k(), g.h());
    if (margin > 1.0) {
        std::cerr << fmt::format(
            "warning: CFL margin 2ak/h^2 = {:.4g} > 1 for '{}' (M={}, N={}); run may diverge\n",
            margin, p.label(), g.M(), g.N());
    }
    const bool track_errors = record_errors && p.has_exact();
    const auto start = std::chrono::steady_clock::now();

    RunResult result{ScalarField(g, [&](double x, double y) { return p.initial(x, y); }),
                     {}, {}, false, std::nullopt, 0.0};
    result.norm_trace.reserve(static_cast<std::size_t>(g.N()) + 1);
    if (track_errors) result.error_trace.reserve(static_cast<std::size_t>(g.N()) + 1);

    auto record = [&](const ScalarField& u, int n) {
        result.norm_trace.push_back(l2_norm_interior(u));
        if (track_errors) result.error_trace.push_back(l2_norm_interior(error_field(u, p, g.t(n))));
    };

    record(result.final, 0);
    for (int n = 0; n < g.N(); ++n) {
        result.final = step(result.final, p, n).u_next;
        record(result.final, n + 1);
        if (is_diverged(result.final)) {
            result.blew_up = true;
            result.blowup_step = n + 1;
            break;
        }
    }
    result.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace tsmac
