#include "tsmac/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tsmac {

ErrorSummary summarize_errors(std::span<const double> trace, const Grid& grid) {
    const auto expected = static_cast<std::size_t>(grid.N()) + 1;
    if (trace.size() != expected ||
        !std::all_of(trace.begin(), trace.end(), [](double e) { return std::isfinite(e); })) {
        throw std::domain_error("diverged run has no summary");
    }
    const double k = grid.k();
    ErrorSummary s;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (double e : trace) {
        s.linf_l2 = std::max(s.linf_l2, e);
        sum += e;
        sum_sq += e * e;
    }
    s.l2_l2 = std::sqrt(k * sum_sq);
    s.l1_l2 = k * sum;
    return s;
}

std::optional<double> convergence_ratio(double coarse, double fine) {
    if (!std::isfinite(coarse) || !(coarse > 0.0) || !std::isfinite(fine) || !(fine > 0.0)) {
        return std::nullopt;
    }
    return coarse / fine;
}

std::optional<double> convergence_ratio(std::optional<double> coarse, std::optional<double> fine) {
    if (!coarse || !fine) return std::nullopt;
    return convergence_ratio(*coarse, *fine);
}

std::optional<double> observed_order(double ratio) {
    if (!std::isfinite(ratio) || !(ratio > 0.0)) return std::nullopt;
    return std::log2(ratio);
}

std::optional<double> observed_order(std::optional<double> ratio) {
    if (!ratio) return std::nullopt;
    return observed_order(*ratio);
}

}  // namespace tsmac
