#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

#include <ostream>

#include "reslab/error.hpp"
#include "reslab_app/app.hpp"

namespace reslab::app {

namespace {

struct RawFlags {
  std::string config;
  std::vector<double> window;
  std::string grid = "600x300";
  std::string out;
  std::string format;
  double gamma_tol = 0.05;
  int max_depth = 40;
  unsigned threads = 0;
};

void add_flags(CLI::App& sub, RawFlags& f) {
  sub.add_option("--config", f.config, "JSON potential config")->required();
  sub.add_option("--window", f.window, "RE_MIN RE_MAX IM_MIN IM_MAX")->expected(4);
  sub.add_option("--grid", f.grid, "phase grid WxH")->capture_default_str();
  sub.add_option("--out", f.out, "output path");
  sub.add_option("--format", f.format, "csv, json or pgm")
      ->check(CLI::IsMember({"csv", "json", "pgm"}));
  sub.add_option("--gamma-tol", f.gamma_tol, "cluster flag tolerance")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sub.add_option("--max-depth", f.max_depth, "subdivision depth limit")
      ->capture_default_str()
      ->check(CLI::Range(1, 200));
  sub.add_option("--threads", f.threads, "worker threads, 0 = auto")->capture_default_str();
}

Options resolve(const RawFlags& f) {
  Options o;
  o.config = f.config;
  if (!f.window.empty()) {
    o.window = Window{f.window[0], f.window[1], f.window[2], f.window[3]};
  }
  try {
    std::tie(o.grid_w, o.grid_h) = parse_grid(f.grid);
  } catch (const std::invalid_argument& e) {
    throw Error(Errc::Parse, std::string("--grid: ") + e.what());
  }
  if (!f.out.empty()) o.out = f.out;
  o.format = f.format;
  o.gamma_tol = f.gamma_tol;
  o.max_depth = f.max_depth;
  o.threads = f.threads;
  return o;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Resonances of semiclassical delta potentials"};
  app.require_subcommand(1);
  RawFlags flags;
  using Cmd = int (*)(const Options&, std::ostream&);
  const std::pair<const char*, Cmd> commands[] = {
      {"predict", cmd_predict}, {"solve", cmd_solve}, {"phase", cmd_phase}, {"verify", cmd_verify}};
  const char* descriptions[] = {"gamma candidates and closed-form strings",
                                "certified resonances in a window",
                                "phase portrait of the secular determinant",
                                "compare numerics against predictions"};
  std::vector<std::pair<CLI::App*, Cmd>> subs;
  for (std::size_t i = 0; i < std::size(commands); ++i) {
    CLI::App* sub = app.add_subcommand(commands[i].first, descriptions[i]);
    add_flags(*sub, flags);
    subs.emplace_back(sub, commands[i].second);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kConfigError;
  }

  try {
    const Options opts = resolve(flags);
    for (const auto& [sub, cmd] : subs) {
      if (sub->parsed()) return cmd(opts, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInconsistent;
  }
  return kConfigError;
}

}  // namespace reslab::app
