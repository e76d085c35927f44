#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace tsmac {

/// Uniform space-time discretization of [0,1]^2 x [0,T].
///
/// M cells per side (spacing h = 1/M) and N time steps (k = T/N). Node
/// coordinates are always recomputed from indices, never accumulated.
class Grid {
public:
    /// Throws std::invalid_argument unless M >= 2, N >= 1 and T > 0.
    Grid(int M, int N, double T);

    int M() const { return M_; }
    int N() const { return N_; }
    double T() const { return T_; }
    double h() const { return h_; }
    double k() const { return k_; }

    double x(int i) const { return i * h_; }
    double y(int j) const { return j * h_; }
    double t(int n) const { return n * k_; }

    /// Nodes per side, M + 1.
    int nodes() const { return M_ + 1; }
    bool on_boundary(int i, int j) const { return i == 0 || j == 0 || i == M_ || j == M_; }

    bool operator==(const Grid&) const = default;

private:
    int M_;
    int N_;
    double T_;
    double h_;
    double k_;
};

/// Real values on the (M+1) x (M+1) node lattice at one time level.
///
/// Storage is row-major with j as the outer index: entry (i, j) lives at
/// j * (M + 1) + i.
class ScalarField {
public:
    explicit ScalarField(const Grid& grid, double value = 0.0);
    ScalarField(const Grid& grid, const std::function<double(double, double)>& fn);

    const Grid& grid() const { return grid_; }

    double& operator()(int i, int j) { return values_[index(i, j)]; }
    double operator()(int i, int j) const { return values_[index(i, j)]; }

    std::span<double> values() { return values_; }
    std::span<const double> values() const { return values_; }
    std::size_t size() const { return values_.size(); }

    bool all_finite() const;
    double max_abs() const;

    ScalarField transposed() const;

    friend ScalarField operator-(const ScalarField& lhs, const ScalarField& rhs);

    bool operator==(const ScalarField&) const = default;

private:
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(j) * static_cast<std::size_t>(grid_.nodes()) +
               static_cast<std::size_t>(i);
    }

    Grid grid_;
    std::vector<double> values_;
};

/// Second difference in y, (F[i,j+1] - 2F[i,j] + F[i,j-1]) / h^2.
/// Requires 1 <= j <= M-1 and 0 <= i <= M.
double delta2_y(const ScalarField& field, int i, int j);

/// Second difference in x. Requires 1 <= i <= M-1 and 0 <= j <= M.
double delta2_x(const ScalarField& field, int i, int j);

/// h * sqrt(sum of squares over interior nodes), accumulated j-outer/i-inner.
double l2_norm_interior(const ScalarField& field);

/// Residual of the discrete summation-by-parts identity
///
///   h^2 sum_{interior} (delta2_x e) e  =  -||delta_x e||^2
///
/// for a field vanishing on the boundary. Throws std::invalid_argument if
/// any boundary entry is nonzero.
double sbp_identity_residual(const ScalarField& e);

/// ||delta_x e||^2 = h^2 sum_{j=1}^{M-1} sum_{i=0}^{M-1} ((e[i+1,j]-e[i,j])/h)^2.
double forward_difference_x_norm_squared(const ScalarField& e);

struct ProbeLevel {
    double h;
    double max_residual;
};

/// For each spacing h (which must divide [0,1] evenly), the max over interior
/// nodes of |(v(x+h) - 2v(x) + v(x-h))/h^2 - v''(x)|. Needs at least two
/// strictly decreasing spacings.
std::vector<ProbeLevel> truncation_order_probe(const std::function<double(double)>& v,
                                               const std::function<double(double)>& v_xx,
                                               std::span<const double> h_levels);

}  // namespace tsmac
