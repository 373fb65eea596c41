#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "wavetrap_cli/config.hpp"

namespace wavetrap::cli {

struct OutputFile {
    std::string name;
    std::string content;
};

struct RunResult {
    std::vector<OutputFile> files;
    /// Summary numbers; echoed to stdout and stored in each sidecar.
    nlohmann::json result = nlohmann::json::object();
    std::vector<std::string> notes;
};

const std::vector<std::string>& subcommands();

/// Runs one subcommand entirely in memory. Library errors propagate.
RunResult run_command(const std::string& name, const RunConfig& config);

/// Writes every file and its `.meta.json` sidecar through temp-and-rename.
void write_outputs(const std::string& dir, const std::string& command, const RunConfig& config,
                   const RunResult& result, double wall_seconds);

/// Full command-line entry point. Returns 0, 1 (library error) or 2 (bad
/// configuration or arguments).
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wavetrap::cli
