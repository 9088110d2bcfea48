#include <algorithm>
#include <cmath>
#include <ostream>

#include "internal.hpp"
#include "reslab/json_io.hpp"
#include "reslab/secular.hpp"

namespace reslab::app {

namespace detail {

namespace {

constexpr double kSetTol = 1e-9;

std::vector<double> unique_sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::vector<double> out;
  for (double g : v) {
    if (out.empty() || std::abs(g - out.back()) > kSetTol) out.push_back(g);
  }
  return out;
}

bool same_set(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > kSetTol) return false;
  }
  return true;
}

void keep_in_window(const StringPrediction& p, const Window& w, std::vector<cplx>& out) {
  for (const auto& k : p.per_k) {
    if (w.contains_strictly(k.z_pred)) out.push_back(k.z_pred);
  }
}

}  // namespace

Prediction build_prediction(const PotentialConfig& config, const Window& window) {
  Prediction pred;
  const std::size_t n = config.size();
  const std::size_t n_len = n - 1;
  json& doc = pred.doc;
  doc["config"] = reslab::to_json(config);
  doc["n_poles"] = n;

  const SecularExpansion expansion = expand_terms(config);
  const auto points = exponent_points(expansion, config);
  const NewtonPolygon polygon = build_polygon(points);
  pred.candidates = gamma_candidates(polygon);
  doc["polygon"] = reslab::to_json(polygon, n_len);
  json cands = json::array();
  std::vector<double> poly_set;
  for (const auto& c : pred.candidates) {
    cands.push_back(reslab::to_json(c, n_len));
    poly_set.push_back(c.gamma);
  }
  poly_set = unique_sorted(poly_set);
  doc["gamma_candidates"] = cands;
  doc["candidate_count"] = poly_set.size();
  doc["candidate_bound"] = (std::size_t{1} << n_len) - 1;

  std::optional<std::vector<double>> closed_set;
  const auto spacing = k_spacing(config);
  if (n == 2) {
    const KRange ks = k_range_for(*spacing, window.re_min, window.re_max);
    const StringPrediction s = two_delta_string(config, ks);
    doc["closed_form"] = {reslab::to_json(s)};
    closed_set = std::vector<double>{s.gamma};
    pred.per_k_in_window.emplace();
    keep_in_window(s, window, *pred.per_k_in_window);
    if (ks.k_max >= ks.k_min) {
      const long k_mid = (ks.k_min + ks.k_max) / 2;
      const TwoDeltaRefined r = two_delta_refined(config, k_mid);
      doc["refined"] = {{"k", k_mid},
                        {"re", r.re},
                        {"im", r.im},
                        {"re_printed", r.re_printed},
                        {"im_printed", r.im_printed},
                        {"im_leading", r.im_leading}};
    }
  } else if (n == 3) {
    const ThreeDeltaGammas g = three_delta_gammas(config);
    pred.three = g;
    doc["case_id"] = g.case_id;
    doc["three_delta_gammas"] = {{"gamma_plus", g.gamma_plus}, {"gamma_minus", g.gamma_minus}};
    closed_set = unique_sorted({g.gamma_plus, g.gamma_minus});
    if (equal_spacing(config)) {
      const KRange ks = k_range_for(*spacing, window.re_min, window.re_max);
      const auto [plus, minus] = three_delta_equal_strings(config, ks);
      doc["closed_form"] = {reslab::to_json(plus), reslab::to_json(minus)};
      pred.per_k_in_window.emplace();
      keep_in_window(plus, window, *pred.per_k_in_window);
      keep_in_window(minus, window, *pred.per_k_in_window);
    }
  }
  if (pred.per_k_in_window) doc["predicted_in_window"] = pred.per_k_in_window->size();

  if (closed_set) {
    doc["closed_form_gammas"] = *closed_set;
    if (!same_set(poly_set, *closed_set)) {
      pred.consistent = false;
      pred.warnings.push_back("polygon and closed-form gamma sets disagree beyond 1e-9");
    }
  }
  doc["consistent"] = pred.consistent;
  doc["warnings"] = pred.warnings;
  return pred;
}

}  // namespace detail

int cmd_predict(const Options& opts, std::ostream& out) {
  const PotentialConfig config = load_config(opts.config);
  const Window window = detail::resolve_window(opts, config.h());
  validate_window(window, config);
  const detail::Prediction pred = detail::build_prediction(config, window);
  const std::string text = pred.doc.dump(2) + "\n";
  out << text;
  for (const auto& w : pred.warnings) out << "warning: " << w << '\n';
  if (opts.out) {
    write_atomic(*opts.out, text);
    detail::write_manifest(*opts.out, "predict", config, opts, {opts.out->string()});
  }
  return pred.consistent ? kOk : kInconsistent;
}

}  // namespace reslab::app
