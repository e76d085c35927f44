#include "tsmac/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"

namespace tsmac::cli {

namespace {

using nlohmann::json;

// Flag values, set only when the flag was given.
struct FlagValues {
    std::optional<int> test;
    std::optional<int> M;
    std::optional<double> T;
    std::optional<std::string> coupling;
    std::optional<std::vector<int>> levels;
    std::optional<std::string> format;
    std::optional<std::string> out;
    std::optional<std::string> config;
};

TableFormat parse_format(const std::string& s) {
    if (s == "csv") return TableFormat::Csv;
    if (s == "markdown") return TableFormat::Markdown;
    throw std::invalid_argument(fmt::format("format must be 'csv' or 'markdown', got '{}'", s));
}

Command parse_command(const std::string& s) {
    if (s == "run") return Command::Run;
    if (s == "study") return Command::Study;
    if (s == "residual") return Command::Residual;
    throw std::invalid_argument(fmt::format("unknown command '{}'", s));
}

void apply_json(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument(fmt::format("cannot read config file '{}'", path));
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(fmt::format("malformed JSON in '{}': {}", path, e.what()));
    }
    if (!doc.is_object()) {
        throw std::invalid_argument(fmt::format("config '{}' must hold a JSON object", path));
    }
    try {
        for (const auto& [key, value] : doc.items()) {
            if (key == "command") {
                cfg.command = parse_command(value.get<std::string>());
            } else if (key == "test") {
                cfg.test = value.get<int>();
            } else if (key == "M") {
                cfg.M = value.get<int>();
            } else if (key == "T") {
                cfg.T = value.get<double>();
            } else if (key == "coupling") {
                cfg.coupling = parse_coupling(value.get<std::string>());
            } else if (key == "levels") {
                cfg.levels = value.get<std::vector<int>>();
            } else if (key == "format") {
                cfg.format = parse_format(value.get<std::string>());
            } else if (key == "out") {
                cfg.out = value.get<std::string>();
            } else if (key == "record_errors") {
                cfg.record_errors = value.get<bool>();
            } else {
                throw std::invalid_argument(
                    fmt::format("unknown key '{}' in config '{}'", key, path));
            }
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(fmt::format("bad value in config '{}': {}", path, e.what()));
    }
}

void validate(const RunConfig& cfg) {
    if (cfg.test < 1 || cfg.test > 3) {
        throw std::invalid_argument(fmt::format("--test must be 1, 2 or 3, got {}", cfg.test));
    }
    if (cfg.M < 2) throw std::invalid_argument(fmt::format("--M must be >= 2, got {}", cfg.M));
    if (!(cfg.T > 0.0) || !std::isfinite(cfg.T)) {
        throw std::invalid_argument(fmt::format("--T must be positive, got {}", cfg.T));
    }
    if (cfg.command == Command::Study) {
        if (cfg.levels.empty()) throw std::invalid_argument("--levels must not be empty");
        for (std::size_t n = 0; n < cfg.levels.size(); ++n) {
            const int M = cfg.levels[n];
            if (M < 2 || (M & (M - 1)) != 0) {
                throw std::invalid_argument(
                    fmt::format("--levels entries must be powers of two >= 2, got {}", M));
            }
            if (n > 0 && M != 2 * cfg.levels[n - 1]) {
                throw std::invalid_argument("--levels must double from one entry to the next");
            }
            make_study_grid(M, cfg.coupling, cfg.T);
        }
    } else if (cfg.command == Command::Run) {
        make_study_grid(cfg.M, cfg.coupling, cfg.T);
    }
}

void add_common(CLI::App* sub, FlagValues& flags) {
    sub->add_option("--test", flags.test, "Test problem id (1, 2 or 3)");
    sub->add_option("--T", flags.T, "Final time");
    sub->add_option("--out", flags.out, "Write output to this path instead of stdout");
    sub->add_option("--config", flags.config, "JSON config file; flags override its values");
}

void write_output(const RunConfig& cfg, const std::string& text, std::ostream& out) {
    if (!cfg.out) {
        out << text;
        return;
    }
    std::ofstream file(*cfg.out, std::ios::binary);
    file << text;
    file.flush();
    if (!file) throw std::ios_base::failure(fmt::format("cannot write to '{}'", *cfg.out));
}

int do_run(const RunConfig& cfg, std::ostream& out) {
    const Problem problem = problem_by_id(cfg.test);
    const Grid grid = make_study_grid(cfg.M, cfg.coupling, cfg.T);
    const RunResult result = solve(problem, grid, cfg.record_errors);

    std::string text = fmt::format(
        "problem: {}\ngrid: M={} N={} h={} k={} T={}\ncfl margin (2ak/h^2): {}\n", problem.label(),
        grid.M(), grid.N(), grid.h(), grid.k(), grid.T(), cfl_margin(problem.a(), grid.k(), grid.h()));
    if (result.blew_up) {
        text += fmt::format("status: diverged at step {} (t = {})\n", *result.blowup_step,
                            grid.t(*result.blowup_step));
        if (!result.error_trace.empty()) {
            text += fmt::format("error at divergence: {:.6e}\n", result.error_trace.back());
        }
    } else {
        text += "status: ok\n";
        if (!result.error_trace.empty()) {
            const ErrorSummary s = summarize_errors(result.error_trace, grid);
            text += fmt::format("error L2(0,T;L2):   {:.6e}\n", s.l2_l2);
            text += fmt::format("error Linf(0,T;L2): {:.6e}\n", s.linf_l2);
            text += fmt::format("error L1(0,T;L2):   {:.6e}\n", s.l1_l2);
            text += fmt::format("final-time L2 error: {:.6e}\n", result.error_trace.back());
        }
    }
    text += fmt::format("final-time L2 norm: {:.6e}\nwall time: {:.3f} s\n",
                        result.norm_trace.back(), result.wall_time);
    write_output(cfg, text, out);

    if (result.blew_up && cfg.coupling == Coupling::Half) return 2;
    return 0;
}

int do_study(const RunConfig& cfg, std::ostream& out) {
    const StudyTable table = run_study(cfg.test, cfg.coupling, cfg.levels, cfg.T);
    write_output(cfg, render_table(table, cfg.format), out);
    return 0;
}

int do_residual(const RunConfig& cfg, std::ostream& out) {
    constexpr int kSamples = 100;
    constexpr double kStep = 1e-4;
    const Problem problem = problem_by_id(cfg.test);
    const double r = residual_check(problem, kSamples, kStep);
    write_output(cfg,
                 fmt::format("max residual for {} ({} samples, fd step {:g}): {:.6e}\n",
                             problem.label(), kSamples, kStep, r),
                 out);
    return 0;
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
    CLI::App app{"Time-split MacCormack solver for 2D reaction-diffusion problems", "tsmac"};
    app.require_subcommand(1, 1);
    FlagValues flags;

    auto* run_cmd = app.add_subcommand("run", "Run one simulation and report its errors");
    add_common(run_cmd, flags);
    run_cmd->add_option("--M", flags.M, "Cells per side");
    run_cmd->add_option("--coupling", flags.coupling, "half (k=h^2/2) or full (k=h^2)");

    auto* study_cmd = app.add_subcommand("study", "Run a mesh-refinement study");
    add_common(study_cmd, flags);
    study_cmd->add_option("--coupling", flags.coupling, "half (k=h^2/2) or full (k=h^2)");
    study_cmd->add_option("--levels", flags.levels, "Comma-separated ladder of M values")
        ->delimiter(',');
    study_cmd->add_option("--format", flags.format, "csv or markdown");

    auto* residual_cmd =
        app.add_subcommand("residual", "Check that the exact solution satisfies the PDE");
    add_common(residual_cmd, flags);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        const CLI::App* target = app.get_subcommands().empty() ? &app : app.get_subcommands()[0];
        throw UsageError(target->help(), 0);
    } catch (const CLI::ParseError& e) {
        throw UsageError(fmt::format("error: {}\n\n{}", e.what(), app.help()), 1);
    }

    RunConfig cfg;
    try {
        if (flags.config) apply_json(cfg, *flags.config);
        const auto* chosen = app.get_subcommands().front();
        cfg.command = parse_command(chosen->get_name());
        if (flags.test) cfg.test = *flags.test;
        if (flags.M) cfg.M = *flags.M;
        if (flags.T) cfg.T = *flags.T;
        if (flags.coupling) cfg.coupling = parse_coupling(*flags.coupling);
        if (flags.levels) cfg.levels = *flags.levels;
        if (flags.format) cfg.format = parse_format(*flags.format);
        if (flags.out) cfg.out = *flags.out;
        validate(cfg);
    } catch (const std::invalid_argument& e) {
        throw UsageError(fmt::format("error: {}\n\n{}", e.what(), app.help()), 1);
    }
    return cfg;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        switch (config.command) {
            case Command::Run:
                return do_run(config, out);
            case Command::Study:
                return do_study(config, out);
            case Command::Residual:
                return do_residual(config, out);
        }
    } catch (const std::ios_base::failure& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

}  // namespace tsmac::cli
