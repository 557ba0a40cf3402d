#pragma once

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace convexrelax::cli {

enum class Command { project, complexity, risk, tradeoff, bounds };
enum class Format { csv, json };

/// What a stochastic or file-driven subcommand runs on, after flags and the
/// config file have been merged.
struct RunConfig {
  Command command = Command::project;
  nlohmann::ordered_json parameters;
  std::optional<std::int64_t> seed;
  std::string output_path;  // empty = standard output
  Format format = Format::json;
};

/// Exit codes: 0 success, 1 domain error, 2 usage / parse / config error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace convexrelax::cli
