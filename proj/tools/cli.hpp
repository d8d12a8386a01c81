#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace dunkl::cli {

enum ExitCode : int { ok = 0, numerical_failure = 1, inadmissible = 2, bad_config = 64 };

/// Malformed or inconsistent run configuration.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunOptions {
  std::filesystem::path out_dir = ".";
  bool quiet = false;
};

/// Executes one config document, writing report.json, metadata.json and CSV
/// tables into opt.out_dir. Errors go to `err`; the return value is the exit code.
int run(const nlohmann::json& config, const RunOptions& opt, std::ostream& err);

/// Parses a config file and calls run(). Unreadable or invalid JSON exits 64.
int run_file(const std::filesystem::path& config_path, const RunOptions& opt, std::ostream& err);

}  // namespace dunkl::cli
