#pragma once

#include "sigfed/config.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace sigfed::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2 };

/// Runs the command line `args` (without the program name). Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Config snapshot as written into manifests and accepted by --config.
nlohmann::json config_to_json(const MiningConfig& config);
MiningConfig config_from_json(const nlohmann::json& j);

/// min-conf text with at most two decimals. Throws ConfigError.
Percent parse_min_conf(const std::string& text);

}  // namespace sigfed::cli
