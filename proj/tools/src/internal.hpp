#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "reslab/asymptotics.hpp"
#include "reslab/polygon.hpp"
#include "reslab/rootfind.hpp"
#include "reslab_app/app.hpp"

namespace reslab::app::detail {

using nlohmann::json;

Window resolve_window(const Options& opts, double h);

struct Prediction {
  json doc;
  std::vector<GammaCandidate> candidates;  // polygon
  std::vector<std::string> warnings;
  bool consistent = true;
  // closed-form per-k predictions strictly inside the window (N=2, N=3 equal)
  std::optional<std::vector<cplx>> per_k_in_window;
  std::optional<ThreeDeltaGammas> three;
};

Prediction build_prediction(const PotentialConfig& config, const Window& window);

struct Solution {
  Window window;
  ResonanceSet set;
  std::optional<StringReport> report;
  std::optional<double> spacing;
};

Solution solve(const PotentialConfig& config, const Window& window, const Options& opts);

/// Spacing pi h / l of the k index, when a single length governs it.
std::optional<double> k_spacing(const PotentialConfig& config);

bool equal_spacing(const PotentialConfig& config);

json options_json(const Options& opts);

/// Writes a manifest next to `primary` listing `outputs`.
void write_manifest(const std::filesystem::path& primary, const std::string& command,
                    const PotentialConfig& config, const Options& opts,
                    std::vector<std::string> outputs);

std::filesystem::path with_suffix(const std::filesystem::path& p, const std::string& suffix);

}  // namespace reslab::app::detail
