#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace lpdo {

inline constexpr const char* kLibraryVersion = "0.1.0";

enum ExitCode : int { exit_ok = 0, exit_config_error = 2, exit_numeric_error = 3 };

struct RunOptions {
    std::optional<std::filesystem::path> out_dir;  // overrides output.directory
    std::optional<int> threads;                    // recorded; the caller sets the pool size
    std::optional<std::uint64_t> seed;             // recorded only
};

struct RunOutcome {
    int exit_code = exit_ok;
    std::filesystem::path directory;
    std::vector<std::string> files;  // relative to directory, manifest.json last
    std::string error_line;          // empty on success
};

// One experiment. Never throws for config or numeric problems; those become
// an exit code plus a one-line error.
RunOutcome run_experiment(const nlohmann::ordered_json& config, const RunOptions& options);
RunOutcome run_config_file(const std::filesystem::path& path, const RunOptions& options);

std::string sha256_hex(const std::string& bytes);

}  // namespace lpdo
