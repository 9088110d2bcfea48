#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "internal.hpp"
#include "reslab/json_io.hpp"

namespace reslab::app {

namespace {

using detail::json;

constexpr double kMatchTol = 1e-8;

struct QuotedLevel {
  std::vector<double> x;
  std::vector<double> beta;
  double h;
  double im;
};

// Leading Im levels quoted alongside published figures.
const std::vector<QuotedLevel>& quoted_levels() {
  static const std::vector<QuotedLevel> table = {
      {{-5.0, 0.0, 3.0 * std::numbers::sqrt2}, {1.0, 1.0, 1.0}, 1e-6, -3e-7},
  };
  return table;
}

std::optional<double> quoted_level_for(const PotentialConfig& config) {
  for (const auto& q : quoted_levels()) {
    if (q.x.size() != config.size() || std::abs(q.h - config.h()) > 1e-12 * q.h) continue;
    bool match = true;
    for (std::size_t j = 0; j < q.x.size() && match; ++j) {
      match = std::abs(config.pole(j).x - q.x[j]) <= 1e-9 &&
              std::abs(config.pole(j).beta - q.beta[j]) <= 1e-12;
    }
    if (match) return q.im;
  }
  return std::nullopt;
}

json check(const std::string& name, bool pass, json detail) {
  return {{"name", name}, {"pass", pass}, {"detail", std::move(detail)}};
}

json match_roots(const std::vector<cplx>& predicted, const ResonanceSet& set, bool& pass) {
  std::vector<bool> used(predicted.size(), false);
  double worst = 0.0;
  std::size_t unmatched = 0;
  for (const auto& r : set.roots) {
    std::size_t best = predicted.size();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < predicted.size(); ++i) {
      const double d = std::abs(r.z - predicted[i]);
      if (!used[i] && d < best_d) {
        best_d = d;
        best = i;
      }
    }
    if (best == predicted.size() || best_d > kMatchTol) {
      ++unmatched;
      continue;
    }
    used[best] = true;
    worst = std::max(worst, best_d);
  }
  const std::size_t missed =
      static_cast<std::size_t>(std::count(used.begin(), used.end(), false));
  pass = unmatched == 0 && missed == 0;
  return {{"predicted", predicted.size()},
          {"found", set.roots.size()},
          {"unmatched_roots", unmatched},
          {"missed_predictions", missed},
          {"max_abs_dz", worst},
          {"tolerance", kMatchTol}};
}

}  // namespace

int cmd_verify(const Options& opts, std::ostream& out) {
  const PotentialConfig config = load_config(opts.config);
  const Window window = detail::resolve_window(opts, config.h());
  validate_window(window, config);
  const detail::Prediction pred = detail::build_prediction(config, window);
  const detail::Solution sol = detail::solve(config, window, opts);

  json checks = json::array();
  bool all = true;
  auto add = [&](json c) {
    all = all && c["pass"].get<bool>();
    checks.push_back(std::move(c));
  };

  if (pred.doc.contains("closed_form_gammas")) {
    add(check("polygon_matches_closed_form", pred.consistent,
              {{"polygon", pred.doc["polygon"]["gammas"]},
               {"closed_form", pred.doc["closed_form_gammas"]}}));
  }

  if (pred.per_k_in_window) {
    bool pass = false;
    json d = match_roots(*pred.per_k_in_window, sol.set, pass);
    add(check("roots_match_per_k_predictions", pass, d));
  }

  {
    bool pass = true;
    json d = json::array();
    if (sol.report) {
      for (const auto& cl : sol.report->clusters) {
        if (cl.count == 0) continue;
        pass = pass && !cl.flagged;
        d.push_back({{"gamma", cl.gamma},
                     {"count", cl.count},
                     {"mean_gamma_est", cl.mean_gamma_est},
                     {"mean_im", cl.mean_im},
                     {"flagged", cl.flagged}});
      }
    }
    add(check("clusters_match_candidates", pass,
              {{"gamma_tol", opts.gamma_tol}, {"clusters", d}}));
  }

  {
    const bool pass = sol.set.complete() &&
                      sol.set.total_winding == static_cast<long>(sol.set.roots.size());
    add(check("winding_equals_root_count", pass,
              {{"total_winding", sol.set.total_winding},
               {"roots", sol.set.roots.size()},
               {"uncertified_boxes", sol.set.uncertified.size()}}));
  }

  json report = {{"config", reslab::to_json(config)},
                 {"window", reslab::to_json(window)},
                 {"checks", checks},
                 {"pass", all}};

  if (pred.three && pred.three->case_id == 1) {
    const double h = config.h();
    const double theorem = -pred.three->gamma_plus * h * std::log(1.0 / h);
    json note = {{"gamma", pred.three->gamma_plus}, {"theorem_leading_im", theorem}};
    if (sol.report && !sol.report->levels.empty()) {
      note["measured_mean_im"] = sol.report->levels.front().mean_im;
    }
    if (const auto quoted = quoted_level_for(config)) {
      const bool discrepant = std::abs(theorem - *quoted) > 0.5 * std::abs(*quoted);
      note["quoted_im"] = *quoted;
      note["discrepancy"] = discrepant;
      if (discrepant) {
        note["note"] = "quoted level is inconsistent with the theorem value; the theorem value is used";
      }
    }
    report["single_string_level"] = note;
  }

  const std::string text = report.dump(2) + "\n";
  out << text;
  for (const auto& c : checks) {
    out << (c["pass"].get<bool>() ? "PASS " : "FAIL ") << c["name"].get<std::string>() << '\n';
  }
  if (report.contains("single_string_level")) {
    const auto& n = report["single_string_level"];
    out << "theorem leading Im: " << format_double(n["theorem_leading_im"].get<double>()) << '\n';
    if (n.contains("quoted_im")) {
      out << "quoted Im: " << format_double(n["quoted_im"].get<double>())
          << (n["discrepancy"].get<bool>() ? "  [DISCREPANCY]" : "") << '\n';
    }
  }
  if (opts.out) {
    write_atomic(*opts.out, text);
    detail::write_manifest(*opts.out, "verify", config, opts, {opts.out->string()});
  }
  return all ? kOk : kVerifyFailed;
}

}  // namespace reslab::app
