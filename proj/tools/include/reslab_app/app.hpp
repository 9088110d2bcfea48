#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "reslab/rootfind.hpp"

namespace reslab::app {

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kConfigError = 2,
  kInconsistent = 3,
  kOverflow = 4,
  kIncomplete = 5,
};

struct Options {
  std::filesystem::path config;
  std::optional<Window> window;
  int grid_w = 600;
  int grid_h = 300;
  std::optional<std::filesystem::path> out;
  std::string format;  // empty: command default
  double gamma_tol = 0.05;
  int max_depth = 40;
  unsigned threads = 0;
};

/// "600x300" -> {600, 300}; throws std::invalid_argument.
std::pair<int, int> parse_grid(const std::string& text);

struct RunManifest {
  std::string config_hash;
  std::string command;
  nlohmann::json options;
  std::string tool_version;
  std::string timestamp;
  std::vector<std::string> outputs;

  nlohmann::json to_json() const;
};

/// Writes through a temporary sibling and a rename.
void write_atomic(const std::filesystem::path& path, const std::string& data);

/// FNV-1a over the canonical config JSON, hex.
std::string config_hash(const PotentialConfig& config);

int cmd_predict(const Options& opts, std::ostream& out);
int cmd_solve(const Options& opts, std::ostream& out);
int cmd_phase(const Options& opts, std::ostream& out);
int cmd_verify(const Options& opts, std::ostream& out);

/// Full command line entry point, including error-to-exit-code mapping.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Exit code for a library error.
int exit_code_for(Errc code);

}  // namespace reslab::app
