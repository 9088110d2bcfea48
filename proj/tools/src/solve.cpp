#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "internal.hpp"
#include "reslab/json_io.hpp"
#include "reslab/parallel.hpp"
#include "reslab/secular.hpp"

namespace reslab::app {

namespace detail {

Solution solve(const PotentialConfig& config, const Window& window, const Options& opts) {
  validate_window(window, config);
  Solution sol;
  sol.window = window;
  sol.spacing = k_spacing(config);
  SearchOptions search;
  search.max_depth = opts.max_depth;
  search.threads = opts.threads;
  const SecularFunction f(config);
  sol.set = find_resonances(f, window, search);
  if (!sol.set.roots.empty() && f.expansion() != nullptr) {
    const auto points = exponent_points(*f.expansion(), config);
    const auto candidates = gamma_candidates(build_polygon(points));
    if (!candidates.empty()) {
      ClassifyOptions copts;
      copts.gamma_tol = opts.gamma_tol;
      sol.report = classify_strings(sol.set, candidates, config, copts);
    }
  }
  return sol;
}

}  // namespace detail

int cmd_solve(const Options& opts, std::ostream& out) {
  const PotentialConfig config = load_config(opts.config);
  const Window window = detail::resolve_window(opts, config.h());
  const detail::Solution sol = detail::solve(config, window, opts);

  out << "roots: " << sol.set.roots.size() << "  total winding: " << sol.set.total_winding
      << "  uncertified boxes: " << sol.set.uncertified.size() << '\n';
  if (sol.report) {
    for (std::size_t c = 0; c < sol.report->clusters.size(); ++c) {
      const auto& cl = sol.report->clusters[c];
      if (cl.count == 0) continue;
      out << "cluster " << c << ": gamma " << format_double(cl.gamma) << "  count " << cl.count
          << "  mean gamma_est " << format_double(cl.mean_gamma_est) << "  mean Im "
          << format_double(cl.mean_im) << (cl.flagged ? "  [flagged]" : "") << '\n';
    }
    for (const auto& l : sol.report->levels) {
      out << "level: Im " << format_double(l.mean_im) << "  count " << l.members.size()
          << "  spread " << format_double(l.im_spread) << '\n';
    }
  }

  if (opts.out) {
    const auto csv_path = detail::with_suffix(*opts.out, ".csv");
    const auto json_path = detail::with_suffix(*opts.out, ".json");
    json doc = reslab::to_json(sol.set, sol.spacing);
    doc["config"] = reslab::to_json(config);
    doc["strings"] = sol.report ? reslab::to_json(*sol.report) : json(nullptr);
    write_atomic(csv_path, resonances_csv(sol.set, sol.spacing));
    write_atomic(json_path, doc.dump(2) + "\n");
    detail::write_manifest(*opts.out, "solve", config, opts,
                           {csv_path.string(), json_path.string()});
  }
  return sol.set.complete() ? kOk : kIncomplete;
}

int cmd_phase(const Options& opts, std::ostream& out) {
  const PotentialConfig config = load_config(opts.config);
  const Window window = detail::resolve_window(opts, config.h());
  validate_window(window, config);
  if (!opts.out) throw Error(Errc::Parse, "phase requires --out");
  std::string format = opts.format;
  if (format.empty()) format = opts.out->extension() == ".csv" ? "csv" : "pgm";
  if (format != "csv" && format != "pgm") {
    throw Error(Errc::Parse, "phase supports --format pgm or csv");
  }

  const int gw = opts.grid_w;
  const int gh = opts.grid_h;
  const SecularFunction f(config);
  const double dre = window.width() / gw;
  const double dim = window.height() / gh;
  std::vector<double> args(static_cast<std::size_t>(gw) * gh);
  parallel_for(static_cast<std::size_t>(gh), opts.threads, [&](std::size_t row) {
    const double im = window.im_max - (static_cast<double>(row) + 0.5) * dim;
    for (int col = 0; col < gw; ++col) {
      const double re = window.re_min + (col + 0.5) * dre;
      args[row * gw + col] = std::arg(f(cplx(re, im)));
    }
  });

  std::string data;
  if (format == "pgm") {
    data = "P5\n" + std::to_string(gw) + " " + std::to_string(gh) + "\n255\n";
    data.reserve(data.size() + args.size());
    for (double a : args) {
      const long v = std::lround((a + std::numbers::pi) / (2.0 * std::numbers::pi) * 255.0);
      data.push_back(static_cast<char>(static_cast<unsigned char>(std::clamp(v, 0L, 255L))));
    }
  } else {
    std::ostringstream csv;
    csv << "re,im,arg\n";
    for (int row = 0; row < gh; ++row) {
      const double im = window.im_max - (row + 0.5) * dim;
      for (int col = 0; col < gw; ++col) {
        const double re = window.re_min + (col + 0.5) * dre;
        csv << format_double(re) << ',' << format_double(im) << ','
            << format_double(args[static_cast<std::size_t>(row) * gw + col]) << '\n';
      }
    }
    data = csv.str();
  }
  write_atomic(*opts.out, data);
  detail::write_manifest(*opts.out, "phase", config, opts, {opts.out->string()});
  out << "wrote " << opts.out->string() << " (" << gw << "x" << gh << ", " << format << ")\n";
  return kOk;
}

}  // namespace reslab::app
