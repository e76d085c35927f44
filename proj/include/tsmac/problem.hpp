#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "tsmac/grid.hpp"

namespace tsmac {

using Reaction = std::function<double(double)>;
using InitialData = std::function<double(double, double)>;
using SpaceTimeFunction = std::function<double(double, double, double)>;

/// u_t - a (u_xx + u_yy) = f(u) on (0,1)^2 x (0,T], u = u0 at t = 0 and
/// u = phi on the boundary.
///
/// Immutable after construction. All callables must be pure.
class Problem {
public:
    /// Throws std::invalid_argument if a is not positive or a callable is empty.
    Problem(std::string label, double a, Reaction reaction, InitialData initial,
            SpaceTimeFunction boundary, std::optional<SpaceTimeFunction> exact = std::nullopt);

    const std::string& label() const { return label_; }
    double a() const { return a_; }

    double reaction(double u) const { return reaction_(u); }
    double initial(double x, double y) const { return initial_(x, y); }
    double boundary(double x, double y, double t) const { return boundary_(x, y, t); }

    bool has_exact() const { return exact_.has_value(); }
    /// Throws std::logic_error when the problem carries no exact solution.
    double exact(double x, double y, double t) const;

    /// Checks phi(.,0) = u0 on boundary nodes and, when an exact solution is
    /// present, phi = exact and u0 = exact(.,0) on the grid's nodes (1e-12).
    /// Throws std::invalid_argument naming the first mismatch.
    void check_compatibility(const Grid& grid) const;

    Problem relabeled(std::string label) const;

    /// Same problem with f replaced; the exact solution is kept so the
    /// residual oracle can detect the mismatch.
    Problem with_reaction(Reaction reaction, std::string label) const;

private:
    std::string label_;
    double a_;
    Reaction reaction_;
    InitialData initial_;
    SpaceTimeFunction boundary_;
    std::optional<SpaceTimeFunction> exact_;
};

/// u(x,y,t) = [1 + exp(c t + d x + b y)]^(-n_exp), c = -(d^2 + b^2), a = 1.
///
/// n_exp = 1 pairs with f(u) = (1 - u) u^2, n_exp = -1 with f(u) = 1 - u.
/// Both need 2 (d^2 + b^2) = 1; violations throw std::invalid_argument.
Problem manufactured_exponential(int n_exp, double d, double b);

/// u(x,y,t) = 1/2 + tanh(3t/4 + x/4 + y/4)/2 with f(u) = (1 - u^2) u, a = 1.
Problem manufactured_tanh();

/// "test1", "test2", "test3" (or 1, 2, 3). Unknown ids throw
/// std::invalid_argument listing the valid ones.
Problem problem_by_id(std::string_view id);
Problem problem_by_id(int id);

/// Max of |u_t - a (u_xx + u_yy) - f(u)| over sample_count quasi-random
/// interior space-time points, all derivatives by centered differences of
/// the exact solution with step fd_step. fd_step must lie in (1e-6, 1e-2).
double residual_check(const Problem& problem, int sample_count, double fd_step);

}  // namespace tsmac
