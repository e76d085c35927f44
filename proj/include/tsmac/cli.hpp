#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsmac/harness.hpp"

namespace tsmac::cli {

enum class Command { Run, Study, Residual };

struct RunConfig {
    Command command = Command::Run;
    int test = 1;
    int M = 8;
    double T = 1.0;
    Coupling coupling = Coupling::Half;
    std::vector<int> levels = kDefaultLevels;
    TableFormat format = TableFormat::Markdown;
    std::optional<std::string> out;
    bool record_errors = true;

    bool operator==(const RunConfig&) const = default;
};

/// Carries the text to print and the process exit status (0 for --help).
class UsageError : public std::runtime_error {
public:
    UsageError(const std::string& message, int exit_code)
        : std::runtime_error(message), exit_code_(exit_code) {}
    int exit_code() const { return exit_code_; }

private:
    int exit_code_;
};

/// argv without the program name. Precedence: defaults, then the JSON file
/// given by --config, then individual flags. Throws UsageError on unknown
/// flags, malformed JSON or out-of-range values.
RunConfig parse_args(const std::vector<std::string>& args);

/// Executes a validated config. Returns 0 on success, 1 on I/O failure and
/// 2 when a `run` with coupling=half diverges.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace tsmac::cli
