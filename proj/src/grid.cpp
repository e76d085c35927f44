#include "tsmac/grid.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace tsmac {

Grid::Grid(int M, int N, double T) : M_(M), N_(N), T_(T), h_(1.0 / M), k_(T / N) {
    if (M < 2) {
        throw std::invalid_argument(fmt::format("grid needs M >= 2 cells per side, got {}", M));
    }
    if (N < 1) {
        throw std::invalid_argument(fmt::format("grid needs N >= 1 time steps, got {}", N));
    }
    if (!(T > 0.0) || !std::isfinite(T)) {
        throw std::invalid_argument(fmt::format("final time must be positive, got {}", T));
    }
}

ScalarField::ScalarField(const Grid& grid, double value)
    : grid_(grid),
      values_(static_cast<std::size_t>(grid.nodes()) * static_cast<std::size_t>(grid.nodes()),
              value) {}

ScalarField::ScalarField(const Grid& grid, const std::function<double(double, double)>& fn)
    : ScalarField(grid) {
    for (int j = 0; j <= grid.M(); ++j) {
        for (int i = 0; i <= grid.M(); ++i) {
            (*this)(i, j) = fn(grid.x(i), grid.y(j));
        }
    }
}

bool ScalarField::all_finite() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

double ScalarField::max_abs() const {
    double m = 0.0;
    for (double v : values_) {
        // NaN must win so that callers comparing against a threshold see it.
        if (std::isnan(v)) return v;
        m = std::max(m, std::abs(v));
    }
    return m;
}

ScalarField ScalarField::transposed() const {
    ScalarField out(grid_);
    for (int j = 0; j <= grid_.M(); ++j) {
        for (int i = 0; i <= grid_.M(); ++i) {
            out(j, i) = (*this)(i, j);
        }
    }
    return out;
}

ScalarField operator-(const ScalarField& lhs, const ScalarField& rhs) {
    if (!(lhs.grid_ == rhs.grid_)) {
        throw std::invalid_argument("cannot subtract fields on different grids");
    }
    ScalarField out(lhs.grid_);
    for (std::size_t n = 0; n < out.values_.size(); ++n) {
        out.values_[n] = lhs.values_[n] - rhs.values_[n];
    }
    return out;
}

double delta2_y(const ScalarField& field, int i, int j) {
    const Grid& g = field.grid();
    assert(i >= 0 && i <= g.M() && j >= 1 && j <= g.M() - 1);
    const double h = g.h();
    return (field(i, j + 1) - 2.0 * field(i, j) + field(i, j - 1)) / (h * h);
}

double delta2_x(const ScalarField& field, int i, int j) {
    const Grid& g = field.grid();
    assert(i >= 1 && i <= g.M() - 1 && j >= 0 && j <= g.M());
    const double h = g.h();
    return (field(i + 1, j) - 2.0 * field(i, j) + field(i - 1, j)) / (h * h);
}

double l2_norm_interior(const ScalarField& field) {
    const Grid& g = field.grid();
    double sum = 0.0;
    for (int j = 1; j < g.M(); ++j) {
        for (int i = 1; i < g.M(); ++i) {
            const double v = field(i, j);
            sum += v * v;
        }
    }
    return g.h() * std::sqrt(sum);
}

double forward_difference_x_norm_squared(const ScalarField& e) {
    const Grid& g = e.grid();
    const double h = g.h();
    double sum = 0.0;
    for (int j = 1; j < g.M(); ++j) {
        for (int i = 0; i < g.M(); ++i) {
            const double d = (e(i + 1, j) - e(i, j)) / h;
            sum += d * d;
        }
    }
    return h * h * sum;
}

double sbp_identity_residual(const ScalarField& e) {
    const Grid& g = e.grid();
    for (int j = 0; j <= g.M(); ++j) {
        for (int i = 0; i <= g.M(); ++i) {
            if (g.on_boundary(i, j) && e(i, j) != 0.0) {
                throw std::invalid_argument(fmt::format(
                    "summation-by-parts identity needs a zero-boundary field; e({}, {}) = {}", i, j,
                    e(i, j)));
            }
        }
    }
    const double h = g.h();
    double inner = 0.0;
    for (int j = 1; j < g.M(); ++j) {
        for (int i = 1; i < g.M(); ++i) {
            inner += delta2_x(e, i, j) * e(i, j);
        }
    }
    return std::abs(h * h * inner + forward_difference_x_norm_squared(e));
}

std::vector<ProbeLevel> truncation_order_probe(const std::function<double(double)>& v,
                                               const std::function<double(double)>& v_xx,
                                               std::span<const double> h_levels) {
    if (h_levels.size() < 2) {
        throw std::invalid_argument("truncation probe needs at least two spacings to form a ratio");
    }
    std::vector<ProbeLevel> out;
    out.reserve(h_levels.size());
    for (std::size_t l = 0; l < h_levels.size(); ++l) {
        const double h = h_levels[l];
        if (!(h > 0.0 && h < 1.0)) {
            throw std::invalid_argument(fmt::format("probe spacing must lie in (0, 1), got {}", h));
        }
        if (l > 0 && !(h < h_levels[l - 1])) {
            throw std::invalid_argument("probe spacings must be strictly decreasing");
        }
        const long cells = std::lround(1.0 / h);
        if (std::abs(cells * h - 1.0) > 1e-12) {
            throw std::invalid_argument(fmt::format("probe spacing {} does not divide [0, 1]", h));
        }
        double worst = 0.0;
        for (long i = 1; i < cells; ++i) {
            const double x = static_cast<double>(i) * h;
            const double fd = (v(x + h) - 2.0 * v(x) + v(x - h)) / (h * h);
            worst = std::max(worst, std::abs(fd - v_xx(x)));
        }
        out.push_back({h, worst});
    }
    return out;
}

}  // namespace tsmac
