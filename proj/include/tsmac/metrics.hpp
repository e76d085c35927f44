#pragma once

#include <optional>
#include <span>

#include "tsmac/grid.hpp"

namespace tsmac {

/// Time aggregates of the per-level spatial L2 error.
struct ErrorSummary {
    double linf_l2 = 0.0;  // max_n ||e^n||
    double l2_l2 = 0.0;    // sqrt(k sum_n ||e^n||^2)
    double l1_l2 = 0.0;    // k sum_n ||e^n||
};

/// Sums run over n = 0..N in ascending order. Throws std::domain_error
/// ("diverged run has no summary") unless the trace has N+1 finite entries.
ErrorSummary summarize_errors(std::span<const double> trace, const Grid& grid);

/// coarse / fine, or nullopt when coarse is non-finite/non-positive or fine <= 0.
std::optional<double> convergence_ratio(double coarse, double fine);
std::optional<double> convergence_ratio(std::optional<double> coarse, std::optional<double> fine);

/// log2(ratio), or nullopt for a non-positive or non-finite ratio.
std::optional<double> observed_order(double ratio);
std::optional<double> observed_order(std::optional<double> ratio);

}  // namespace tsmac
