#include <iostream>
#include <string>
#include <vector>

#include "tsmac/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    tsmac::cli::RunConfig config;
    try {
        config = tsmac::cli::parse_args(args);
    } catch (const tsmac::cli::UsageError& e) {
        (e.exit_code() == 0 ? std::cout : std::cerr) << e.what();
        return e.exit_code();
    }
    return tsmac::cli::run(config, std::cout, std::cerr);
}
