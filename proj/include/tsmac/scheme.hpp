#pragma once

#include <optional>
#include <vector>

#include "tsmac/grid.hpp"
#include "tsmac/problem.hpp"

namespace tsmac {

/// Entries beyond this magnitude count as divergence.
inline constexpr double kOverflowGuard = 1e15;

/// 2 a k / h^2. The split scheme is stable when this is <= 1.
double cfl_margin(double a, double k, double h);

/// Intermediate and final fields of one time step.
struct StepStages {
    ScalarField u_star;   // after the first half y-sweep
    ScalarField u_dstar;  // after the full x-sweep
    ScalarField u_next;   // after the second half y-sweep
};

struct RunResult {
    ScalarField final;
    /// Interior L2 error against the exact solution at each level n = 0, 1, ...
    /// Empty when the problem has no exact solution or errors were not requested.
    std::vector<double> error_trace;
    /// Interior L2 norm of the solution at each level.
    std::vector<double> norm_trace;
    bool blew_up = false;
    /// Level at which divergence was detected. The traces end with this level.
    std::optional<int> blowup_step;
    double wall_time = 0.0;
};

/// True if any entry is non-finite or exceeds kOverflowGuard in magnitude.
bool is_diverged(const ScalarField& u);

/// Sets every boundary node (corners included) to phi(x, y, t).
void fill_boundary(ScalarField& u, const Problem& p, double t);

/// u* = u + (k/2) (a delta2_y u + f(u)) on interior nodes, boundary from phi(t_next).
ScalarField stage_y_half(const ScalarField& u, const Problem& p, double t_next);

/// u** = u* + a k delta2_x u* on interior nodes, boundary from phi(t_next).
ScalarField stage_x_full(const ScalarField& u, const Problem& p, double t_next);

/// Closing half y-sweep; the same kernel as stage_y_half.
ScalarField stage_y_half_final(const ScalarField& u, const Problem& p, double t_next);

/// One step u^n -> u^{n+1} = L_y(k/2) L_x(k) L_y(k/2) u^n. Every boundary
/// fill uses t^{n+1}. Requires 0 <= n <= N-1.
StepStages step(const ScalarField& u, const Problem& p, int n);

/// Integrates from u0 over all N steps, stopping early on divergence.
///
/// A CFL margin above 1 is reported on stderr but still run: the unstable
/// regime is part of what the harness measures. Throws std::invalid_argument
/// if the problem data is inconsistent on this grid.
RunResult solve(const Problem& p, const Grid& g, bool record_errors = true);

}  // namespace tsmac
