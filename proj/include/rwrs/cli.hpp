#pragma once

#include <string>
#include <vector>

namespace rwrs {

/// Exit codes of the rwrs-lab front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfigError = 2;

/// Runs `rwrs-lab <subcommand> [flags]` and returns the process exit code.
int run(int argc, const char* const* argv);

/// Expands `--config file.json` into flag tokens placed ahead of the
/// command-line flags, so explicit flags take precedence. The document has
/// the shape {"command": "...", "options": {"flag-name": value, ...}}.
/// Throws ConfigError on unreadable or malformed documents.
std::vector<std::string> expand_config(const std::vector<std::string>& args);

}  // namespace rwrs
