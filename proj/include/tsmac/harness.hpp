#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tsmac/grid.hpp"
#include "tsmac/metrics.hpp"
#include "tsmac/problem.hpp"
#include "tsmac/scheme.hpp"

namespace tsmac {

/// Time step coupled to the spacing: k = h^2/2 (stable edge) or k = h^2.
enum class Coupling { Half, Full };

std::string_view to_string(Coupling c);
/// Accepts "half" or "full"; anything else throws std::invalid_argument.
Coupling parse_coupling(std::string_view s);

/// Grid with M cells, k from the coupling rule and N = round(T/k).
/// Throws std::invalid_argument if k does not divide T to 1e-12.
Grid make_study_grid(int M, Coupling coupling, double T);

/// One refinement level. Error and ratio slots are empty when undefined:
/// errors on a diverged row, ratios on the first row or next to a diverged one.
struct StudyRow {
    int M = 0;
    double h = 0.0;
    double k = 0.0;
    double cfl = 0.0;
    bool diverged = false;
    /// Largest |error trace entry| seen, including a diverged final level.
    double peak_error = 0.0;
    std::optional<double> l2, linf, l1;
    std::optional<double> r2, rinf, r1;
    std::optional<double> order2, orderinf, order1;
};

struct StudyTable {
    int test_id = 0;
    Coupling coupling = Coupling::Half;
    double T = 1.0;
    std::vector<StudyRow> rows;  // decreasing h
};

enum class TableFormat { Csv, Markdown };

inline const std::vector<int> kDefaultLevels{2, 4, 8, 16, 32};

/// Runs the split scheme on every level of a power-of-two ladder (each M
/// doubling the previous). Levels run concurrently; rows are assembled in
/// ladder order so the table does not depend on scheduling.
StudyTable run_study(int test_id, Coupling coupling, std::span<const int> levels = kDefaultLevels,
                     double T = 1.0);

/// Builds rows from already computed runs. Exposed for tests.
StudyRow make_row(const Grid& grid, double a, const RunResult& run);
void fill_ratios(std::vector<StudyRow>& rows);

/// Unsplit forward-time centered-space reference solver:
/// u^{n+1} = u^n + k (a (delta2_x + delta2_y) u^n + f(u^n)) on interior nodes,
/// boundary from phi(t^{n+1}). Stable for 4 a k / h^2 <= 1.
RunResult ftcs_oracle_solve(const Problem& p, const Grid& g);

/// CSV or a markdown table laid out like a convergence table (h, L2, r2,
/// Linf, rinf, L1, r1, orders). Diverged errors print as NAN; undefined
/// ratios are empty in CSV and "----" in markdown.
std::string render_table(const StudyTable& table, TableFormat format);

inline constexpr std::string_view kCsvHeader =
    "test,coupling,h,k,cfl,l2,linf,l1,r2,rinf,r1,order2,orderinf,order1";

}  // namespace tsmac
