#pragma once

#include "json.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace shearwave::app {

enum ExitCode : int {
    ExitOk = 0,
    ExitVerificationFailure = 1,
    ExitConfigError = 2,
    ExitSolverError = 3,
};

struct Options {
    std::filesystem::path out = ".";
    int threads = 1;
    bool quiet = false;
};

const std::vector<std::string>& command_names();

/// Runs one command on a parsed configuration document and writes its
/// artifacts (always including manifest.json) into options.out.
int run_command(const std::string& command, const nlohmann::json& config, const Options& options);

/// Reads the configuration from a file first; unreadable or malformed files exit 2.
int run_command_file(const std::string& command, const std::filesystem::path& config, const Options& options);

}  // namespace shearwave::app
