#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "reslab/asymptotics.hpp"
#include "reslab/polygon.hpp"
#include "reslab/potential.hpp"
#include "reslab/rootfind.hpp"
#include "reslab/secular.hpp"

namespace reslab {

using json = nlohmann::json;

/// {"h": number, "deltas": [{"x": number, "C": number, "beta": number}]}.
/// "C" defaults to 1; unknown or mistyped fields throw Error(Parse).
PotentialConfig config_from_json(const json& doc);
PotentialConfig load_config(const std::filesystem::path& path);
json to_json(const PotentialConfig& config);

/// [{"alpha": "01", "monomials": [{"m": [..], "coeff": c}]}], bit j of alpha
/// is character j.
json to_json(const SecularExpansion& expansion);
std::string alpha_bits(std::uint32_t alpha, std::size_t n_lengths);

json to_json(const NewtonPolygon& polygon, std::size_t n_lengths);
/// from_nu,from_lambda,to_nu,to_lambda,slope,gamma
std::string polygon_edges_csv(const NewtonPolygon& polygon);

json to_json(const GammaCandidate& candidate, std::size_t n_lengths);
json to_json(const StringPrediction& prediction);

/// Columns: k_index, re, im, residual, gamma_est, cluster_id. k_index is
/// round(Re z / spacing) when a spacing is given, else empty.
std::string resonances_csv(const ResonanceSet& set, std::optional<double> spacing);
json to_json(const ResonanceSet& set, std::optional<double> spacing);
json to_json(const StringReport& report);
json to_json(const Window& w);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

}  // namespace reslab
