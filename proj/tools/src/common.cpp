#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <unistd.h>

#include "internal.hpp"
#include "reslab/json_io.hpp"

#ifndef RESLAB_VERSION
#define RESLAB_VERSION "0.0.0"
#endif

namespace reslab::app {

std::pair<int, int> parse_grid(const std::string& text) {
  const auto x = text.find_first_of("xX");
  if (x == std::string::npos) throw std::invalid_argument("grid must look like WxH");
  std::size_t used_w = 0, used_h = 0;
  int w = 0, h = 0;
  try {
    w = std::stoi(text.substr(0, x), &used_w);
    h = std::stoi(text.substr(x + 1), &used_h);
  } catch (const std::exception&) {
    throw std::invalid_argument("grid must look like WxH");
  }
  if (used_w != x || used_h != text.size() - x - 1) {
    throw std::invalid_argument("grid must look like WxH");
  }
  if (w < 1 || h < 1 || w > 4096 || h > 4096) {
    throw std::invalid_argument("grid dimensions must be in 1..4096");
  }
  return {w, h};
}

nlohmann::json RunManifest::to_json() const {
  return {{"config_hash", config_hash},
          {"command", command},
          {"options", options},
          {"tool_version", tool_version},
          {"timestamp", timestamp},
          {"outputs", outputs}};
}

void write_atomic(const std::filesystem::path& path, const std::string& data) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + tmp.string());
    f.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!f) throw std::runtime_error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string config_hash(const PotentialConfig& config) {
  const std::string canon = reslab::to_json(config).dump();
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : canon) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::TooFewPoles:
    case Errc::DuplicatePosition:
    case Errc::ZeroCoupling:
    case Errc::NonpositiveBeta:
    case Errc::BadH:
    case Errc::NonFinite:
    case Errc::Parse:
    case Errc::InvalidWindow:
    case Errc::TooManyPoles:
      return kConfigError;
    case Errc::OverflowGuard:
      return kOverflow;
    case Errc::BoundaryZero:
    case Errc::MaxDepthExceeded:
    case Errc::NoConvergence:
      return kIncomplete;
    default:
      return kInconsistent;
  }
}

namespace detail {

Window resolve_window(const Options& opts, double h) {
  return opts.window ? *opts.window : default_window(h);
}

std::optional<double> k_spacing(const PotentialConfig& config) {
  const double h = config.h();
  if (config.size() == 2) return std::numbers::pi * h / config.lengths()[0];
  if (equal_spacing(config)) return std::numbers::pi * h / config.lengths()[0];
  return std::nullopt;
}

bool equal_spacing(const PotentialConfig& config) {
  if (config.size() != 3) return false;
  const double l1 = config.lengths()[0];
  return std::abs(l1 - config.lengths()[1]) <= 1e-12 * l1;
}

json options_json(const Options& opts) {
  json j = {{"config", opts.config.string()},
            {"grid", std::to_string(opts.grid_w) + "x" + std::to_string(opts.grid_h)},
            {"format", opts.format},
            {"gamma_tol", opts.gamma_tol},
            {"max_depth", opts.max_depth},
            {"threads", opts.threads}};
  j["window"] = opts.window ? reslab::to_json(*opts.window) : json(nullptr);
  j["out"] = opts.out ? json(opts.out->string()) : json(nullptr);
  return j;
}

std::filesystem::path with_suffix(const std::filesystem::path& p, const std::string& suffix) {
  auto out = p;
  out.replace_extension();
  out += suffix;
  return out;
}

void write_manifest(const std::filesystem::path& primary, const std::string& command,
                    const PotentialConfig& config, const Options& opts,
                    std::vector<std::string> outputs) {
  RunManifest m;
  m.config_hash = config_hash(config);
  m.command = command;
  m.options = options_json(opts);
  m.tool_version = RESLAB_VERSION;
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  m.timestamp = buf;
  m.outputs = std::move(outputs);
  write_atomic(with_suffix(primary, ".manifest.json"), m.to_json().dump(2) + "\n");
}

}  // namespace detail

}  // namespace reslab::app
