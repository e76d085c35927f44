#include "tsmac/problem.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include <fmt/format.h>

namespace tsmac {

namespace {

constexpr double kCompatibilityTol = 1e-12;

// Van der Corput radical inverse; successive indices in bases 2, 3, 5 give a
// Halton point set.
double radical_inverse(unsigned index, unsigned base) {
    double result = 0.0;
    double scale = 1.0 / base;
    while (index > 0) {
        result += scale * static_cast<double>(index % base);
        index /= base;
        scale /= base;
    }
    return result;
}

}  // namespace

Problem::Problem(std::string label, double a, Reaction reaction, InitialData initial,
                 SpaceTimeFunction boundary, std::optional<SpaceTimeFunction> exact)
    : label_(std::move(label)),
      a_(a),
      reaction_(std::move(reaction)),
      initial_(std::move(initial)),
      boundary_(std::move(boundary)),
      exact_(std::move(exact)) {
    if (!(a_ > 0.0) || !std::isfinite(a_)) {
        throw std::invalid_argument(fmt::format("diffusivity must be positive, got {}", a_));
    }
    if (!reaction_ || !initial_ || !boundary_ || (exact_ && !*exact_)) {
        throw std::invalid_argument("problem '" + label_ + "' has an empty callable");
    }
}

double Problem::exact(double x, double y, double t) const {
    if (!exact_) {
        throw std::logic_error("no exact solution to check");
    }
    return (*exact_)(x, y, t);
}

void Problem::check_compatibility(const Grid& grid) const {
    auto fail = [&](const char* what, int i, int j, double lhs, double rhs) {
        throw std::invalid_argument(fmt::format("problem '{}': {} at node ({}, {}): {} vs {}",
                                                label_, what, i, j, lhs, rhs));
    };
    for (int j = 0; j <= grid.M(); ++j) {
        for (int i = 0; i <= grid.M(); ++i) {
            const double x = grid.x(i);
            const double y = grid.y(j);
            const double u0 = initial_(x, y);
            if (grid.on_boundary(i, j)) {
                const double phi0 = boundary_(x, y, 0.0);
                if (std::abs(phi0 - u0) > kCompatibilityTol) {
                    fail("phi(x,y,0) != u0(x,y)", i, j, phi0, u0);
                }
            }
            if (exact_) {
                const double e0 = (*exact_)(x, y, 0.0);
                if (std::abs(e0 - u0) > kCompatibilityTol) {
                    fail("u0 != exact(.,0)", i, j, u0, e0);
                }
                if (grid.on_boundary(i, j)) {
                    const double t = grid.T();
                    const double phi = boundary_(x, y, t);
                    const double e = (*exact_)(x, y, t);
                    if (std::abs(phi - e) > kCompatibilityTol) {
                        fail("phi != exact at final time", i, j, phi, e);
                    }
                }
            }
        }
    }
}

Problem Problem::relabeled(std::string label) const {
    Problem out = *this;
    out.label_ = std::move(label);
    return out;
}

Problem Problem::with_reaction(Reaction reaction, std::string label) const {
    return Problem(std::move(label), a_, std::move(reaction), initial_, boundary_, exact_);
}

Problem manufactured_exponential(int n_exp, double d, double b) {
    if (n_exp != 1 && n_exp != -1) {
        throw std::invalid_argument(fmt::format("exponent must be 1 or -1, got {}", n_exp));
    }
    if (d == 0.0 || b == 0.0) {
        throw std::invalid_argument("manufactured exponential needs nonzero d and b");
    }
    const double s = d * d + b * b;
    if (std::abs(2.0 * s - 1.0) > 1e-12) {
        throw std::invalid_argument(fmt::format(
            "manufactured exponential needs 2(d^2 + b^2) = 1, got 2({}^2 + {}^2) = {}", d, b,
            2.0 * s));
    }
    const double c = -s;
    SpaceTimeFunction exact;
    Reaction reaction;
    std::string label;
    if (n_exp == 1) {
        exact = [c, d, b](double x, double y, double t) {
            return 1.0 / (1.0 + std::exp(c * t + d * x + b * y));
        };
        reaction = [](double u) { return (1.0 - u) * u * u; };
        label = fmt::format("logistic front, d={:.6g}, b={:.6g}", d, b);
    } else {
        exact = [c, d, b](double x, double y, double t) {
            return 1.0 + std::exp(c * t + d * x + b * y);
        };
        reaction = [](double u) { return 1.0 - u; };
        label = fmt::format("exponential growth, d={:.6g}, b={:.6g}", d, b);
    }
    InitialData initial = [exact](double x, double y) { return exact(x, y, 0.0); };
    return Problem(std::move(label), 1.0, std::move(reaction), std::move(initial), exact, exact);
}

Problem manufactured_tanh() {
    SpaceTimeFunction exact = [](double x, double y, double t) {
        return 0.5 + 0.5 * std::tanh(0.75 * t + 0.25 * x + 0.25 * y);
    };
    Reaction reaction = [](double u) { return (1.0 - u * u) * u; };
    InitialData initial = [exact](double x, double y) { return exact(x, y, 0.0); };
    return Problem("tanh front", 1.0, std::move(reaction), std::move(initial), exact, exact);
}

Problem problem_by_id(int id) {
    switch (id) {
        case 1:
            return manufactured_exponential(1, std::sqrt(3.0) / 3.0, std::sqrt(6.0) / 6.0)
                .relabeled("test1");
        case 2:
            return manufactured_exponential(-1, std::sqrt(3.0) / 3.0, std::sqrt(6.0) / 6.0)
                .relabeled("test2");
        case 3:
            return manufactured_tanh().relabeled("test3");
        default:
            throw std::invalid_argument(
                fmt::format("unknown test id {}; valid ids are 1, 2, 3", id));
    }
}

Problem problem_by_id(std::string_view id) {
    if (id == "test1" || id == "1") return problem_by_id(1);
    if (id == "test2" || id == "2") return problem_by_id(2);
    if (id == "test3" || id == "3") return problem_by_id(3);
    throw std::invalid_argument(
        fmt::format("unknown test id '{}'; valid ids are test1, test2, test3", id));
}

double residual_check(const Problem& problem, int sample_count, double fd_step) {
    if (!problem.has_exact()) {
        throw std::invalid_argument("no exact solution to check");
    }
    if (!(fd_step > 1e-6 && fd_step < 1e-2)) {
        throw std::invalid_argument(
            fmt::format("finite-difference step must lie in (1e-6, 1e-2), got {}", fd_step));
    }
    if (sample_count < 1) {
        throw std::invalid_argument("residual check needs at least one sample");
    }
    const double s = fd_step;
    auto u = [&](double x, double y, double t) { return problem.exact(x, y, t); };
    double worst = 0.0;
    for (int n = 1; n <= sample_count; ++n) {
        const auto idx = static_cast<unsigned>(n);
        // Keep the stencil inside (0,1)^2 x (0,1].
        const double x = s + (1.0 - 2.0 * s) * radical_inverse(idx, 2);
        const double y = s + (1.0 - 2.0 * s) * radical_inverse(idx, 3);
        const double t = s + (1.0 - 2.0 * s) * radical_inverse(idx, 5);
        const double c = u(x, y, t);
        const double u_t = (u(x, y, t + s) - u(x, y, t - s)) / (2.0 * s);
        const double u_xx = (u(x + s, y, t) - 2.0 * c + u(x - s, y, t)) / (s * s);
        const double u_yy = (u(x, y + s, t) - 2.0 * c + u(x, y - s, t)) / (s * s);
        const double r = u_t - problem.a() * (u_xx + u_yy) - problem.reaction(c);
        if (std::isnan(r)) return r;
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

}  // namespace tsmac
