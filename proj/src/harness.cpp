#include "tsmac/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

namespace tsmac {

namespace {

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

std::string superscript(int v) {
    static const char* const digits[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
    std::string out;
    for (char c : std::to_string(v)) out += digits[c - '0'];
    return out;
}

std::string format_h(int M) {
    if (is_power_of_two(M)) {
        int e = 0;
        while ((1 << e) < M) ++e;
        return "2⁻" + superscript(e);
    }
    return fmt::format("1/{}", M);
}

std::string csv_error(const std::optional<double>& v) {
    return v ? fmt::format("{:.6e}", *v) : std::string("NAN");
}

std::string csv_optional(const std::optional<double>& v) {
    return v ? fmt::format("{:.4f}", *v) : std::string();
}

std::string md_error(const std::optional<double>& v) {
    return v ? fmt::format("{:.4e}", *v) : std::string("NAN");
}

std::string md_optional(const std::optional<double>& v) {
    return v ? fmt::format("{:.4f}", *v) : std::string("----");
}

}  // namespace

std::string_view to_string(Coupling c) { return c == Coupling::Half ? "half" : "full"; }

Coupling parse_coupling(std::string_view s) {
    if (s == "half") return Coupling::Half;
    if (s == "full") return Coupling::Full;
    throw std::invalid_argument(fmt::format("coupling must be 'half' or 'full', got '{}'", s));
}

Grid make_study_grid(int M, Coupling coupling, double T) {
    if (M < 2) throw std::invalid_argument(fmt::format("M must be >= 2, got {}", M));
    if (!(T > 0.0) || !std::isfinite(T)) {
        throw std::invalid_argument(fmt::format("T must be positive, got {}", T));
    }
    const double h = 1.0 / M;
    const double k = coupling == Coupling::Half ? 0.5 * h * h : h * h;
    const double steps = std::round(T / k);
    if (steps < 1.0 || steps > 1e9 || std::abs(k * steps - T) > 1e-12 * std::max(1.0, T)) {
        throw std::invalid_argument(
            fmt::format("T = {} is not a whole number of steps of k = {}", T, k));
    }
    return Grid(M, static_cast<int>(steps), T);
}

StudyRow make_row(const Grid& grid, double a, const RunResult& run) {
    StudyRow row;
    row.M = grid.M();
    row.h = grid.h();
    row.k = grid.k();
    row.cfl = cfl_margin(a, grid.k(), grid.h());
    row.diverged = run.blew_up;
    for (double e : run.error_trace) {
        if (std::isnan(e) || std::isnan(row.peak_error)) {
            row.peak_error = std::numeric_limits<double>::quiet_NaN();
        } else {
            row.peak_error = std::max(row.peak_error, std::abs(e));
        }
    }
    if (!run.blew_up) {
        const ErrorSummary s = summarize_errors(run.error_trace, grid);
        row.l2 = s.l2_l2;
        row.linf = s.linf_l2;
        row.l1 = s.l1_l2;
    }
    return row;
}

void fill_ratios(std::vector<StudyRow>& rows) {
    for (std::size_t n = 1; n < rows.size(); ++n) {
        const StudyRow& prev = rows[n - 1];
        StudyRow& row = rows[n];
        row.r2 = convergence_ratio(prev.l2, row.l2);
        row.rinf = convergence_ratio(prev.linf, row.linf);
        row.r1 = convergence_ratio(prev.l1, row.l1);
        row.order2 = observed_order(row.r2);
        row.orderinf = observed_order(row.rinf);
        row.order1 = observed_order(row.r1);
    }
}

StudyTable run_study(int test_id, Coupling coupling, std::span<const int> levels, double T) {
    const Problem problem = problem_by_id(test_id);
    for (std::size_t n = 0; n < levels.size(); ++n) {
        if (!is_power_of_two(levels[n]) || levels[n] < 2) {
            throw std::invalid_argument(
                fmt::format("study levels must be powers of two >= 2, got {}", levels[n]));
        }
        if (n > 0 && levels[n] != 2 * levels[n - 1]) {
            throw std::invalid_argument("study levels must double from one level to the next");
        }
    }
    std::vector<Grid> grids;
    grids.reserve(levels.size());
    for (int M : levels) grids.push_back(make_study_grid(M, coupling, T));

    std::vector<std::future<RunResult>> pending;
    pending.reserve(grids.size());
    for (const Grid& g : grids) {
        pending.push_back(std::async(std::launch::async,
                                     [&problem, g] { return solve(problem, g, true); }));
    }

    StudyTable table{test_id, coupling, T, {}};
    for (std::size_t n = 0; n < grids.size(); ++n) {
        table.rows.push_back(make_row(grids[n], problem.a(), pending[n].get()));
    }
    fill_ratios(table.rows);
    return table;
}

RunResult ftcs_oracle_solve(const Problem& p, const Grid& g) {
    p.check_compatibility(g);
    const auto start = std::chrono::steady_clock::now();
    const int M = g.M();
    const double k = g.k();
    const double coef = p.a() / (g.h() * g.h());

    RunResult result{ScalarField(g, [&](double x, double y) { return p.initial(x, y); }),
                     {}, {}, false, std::nullopt, 0.0};
    auto record = [&](const ScalarField& u, int n) {
        result.norm_trace.push_back(l2_norm_interior(u));
        if (p.has_exact()) {
            const double t = g.t(n);
            ScalarField exact(g, [&](double x, double y) { return p.exact(x, y, t); });
            result.error_trace.push_back(l2_norm_interior(u - exact));
        }
    };

    record(result.final, 0);
    for (int n = 0; n < g.N(); ++n) {
        const ScalarField& u = result.final;
        ScalarField next(g);
        for (int j = 1; j < M; ++j) {
            for (int i = 1; i < M; ++i) {
                const double c = u(i, j);
                const double lap =
                    u(i + 1, j) + u(i - 1, j) + u(i, j + 1) + u(i, j - 1) - 4.0 * c;
                next(i, j) = c + k * (coef * lap + p.reaction(c));
            }
        }
        fill_boundary(next, p, g.t(n + 1));
        result.final = std::move(next);
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

std::string render_table(const StudyTable& table, TableFormat format) {
    std::string out;
    if (format == TableFormat::Csv) {
        out += kCsvHeader;
        out += '\n';
        for (const StudyRow& r : table.rows) {
            out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", table.test_id,
                               to_string(table.coupling), r.h, r.k, r.cfl, csv_error(r.l2),
                               csv_error(r.linf), csv_error(r.l1), csv_optional(r.r2),
                               csv_optional(r.rinf), csv_optional(r.r1), csv_optional(r.order2),
                               csv_optional(r.orderinf), csv_optional(r.order1));
        }
        return out;
    }

    out += fmt::format("Test {}, k = {}, T = {}\n\n", table.test_id,
                       table.coupling == Coupling::Half ? "h²/2" : "h²", table.T);
    out += "| h | ‖E‖ L² | r² | ‖E‖ L∞ | r∞ | ‖E‖ L¹ | r¹ | θ² | θ∞ | θ¹ |\n";
    out += "|---|---|---|---|---|---|---|---|---|---|\n";
    for (const StudyRow& r : table.rows) {
        out += fmt::format("| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |\n", format_h(r.M),
                           md_error(r.l2), md_optional(r.r2), md_error(r.linf),
                           md_optional(r.rinf), md_error(r.l1), md_optional(r.r1),
                           md_optional(r.order2), md_optional(r.orderinf),
                           md_optional(r.order1));
    }
    return out;
}

}  // namespace tsmac
