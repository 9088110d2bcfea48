#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "reslab/parallel.hpp"
#include "reslab/rootfind.hpp"

namespace reslab {

namespace {

constexpr std::array<double, 7> kSplitFractions = {0.5, 0.46, 0.54, 0.42, 0.58, 0.38, 0.62};

struct Task {
  Window box;
  long winding = 0;
  int depth = 0;
};

struct Outcome {
  std::vector<Task> children;
  std::optional<Resonance> root;
  std::optional<UncertifiedBox> uncertified;
};

struct Refined {
  std::optional<cplx> z;
  double residual = 0.0;
  std::string why;
};

class Searcher {
 public:
  Searcher(const SecularFunction& f, const SearchOptions& opts)
      : f_(f),
        opts_(opts),
        h_(f.config().h()),
        bandwidth_(secular_bandwidth(f.config())),
        sample_([this](cplx z) { return f_(z); }),
        scale_([this](cplx z) { return f_.scale(z); }) {}

  const SampleFn& sample() const { return sample_; }
  const ScaleFn& scale() const { return scale_; }
  double bandwidth() const { return bandwidth_; }

  Outcome process(const Task& t) const {
    Outcome out;
    if (t.winding == 1) {
      Refined r = refine(t.box);
      if (r.z) {
        Resonance res;
        res.z = *r.z;
        res.residual = r.residual;
        res.winding_cert = 1;
        res.gamma_est = gamma_estimate(*r.z, h_);
        res.box = t.box;
        res.depth = t.depth;
        out.root = res;
        return out;
      }
      if (t.depth >= opts_.max_depth) {
        out.uncertified = UncertifiedBox{t.box, t.winding, t.depth, Errc::NoConvergence, r.why};
        return out;
      }
    } else if (t.winding < 1) {
      out.uncertified = UncertifiedBox{t.box, t.winding, t.depth, Errc::BoundaryZero,
                                       "negative winding"};
      return out;
    } else if (t.depth >= opts_.max_depth) {
      out.uncertified = UncertifiedBox{t.box, t.winding, t.depth, Errc::MaxDepthExceeded,
                                       "winding >= 2 at max depth"};
      return out;
    }
    split(t, out);
    return out;
  }

 private:
  void split(const Task& t, Outcome& out) const {
    for (double frac : kSplitFractions) {
      const double xm = t.box.re_min + frac * t.box.width();
      const double ym = t.box.im_min + frac * t.box.height();
      const std::array<Window, 4> kids = {
          Window{t.box.re_min, xm, t.box.im_min, ym},
          Window{xm, t.box.re_max, t.box.im_min, ym},
          Window{t.box.re_min, xm, ym, t.box.im_max},
          Window{xm, t.box.re_max, ym, t.box.im_max}};
      std::array<long, 4> wn{};
      bool ok = true;
      long sum = 0;
      for (std::size_t i = 0; i < 4 && ok; ++i) {
        auto n = try_winding(sample_, scale_, kids[i], bandwidth_, opts_.winding);
        if (!n) {
          ok = false;
        } else {
          wn[i] = *n;
          sum += *n;
        }
      }
      if (!ok || sum != t.winding) continue;
      for (std::size_t i = 0; i < 4; ++i) {
        if (wn[i] != 0) out.children.push_back({kids[i], wn[i], t.depth + 1});
      }
      return;
    }
    out.uncertified = UncertifiedBox{t.box, t.winding, t.depth, Errc::BoundaryZero,
                                     "no admissible split line"};
  }

  // Muller iteration in u = (z - c) / h, then a polish over adjacent doubles.
  Refined refine(const Window& box) const {
    const cplx c = box.center();
    const double norm = f_.scale(c);
    auto g = [&](cplx u) { return f_(c + h_ * u) / norm; };

    const double rx = 0.5 * box.width() / h_;
    const double ry = 0.5 * box.height() / h_;
    const double tol = std::max(opts_.muller_tol, 4.0 * std::numeric_limits<double>::epsilon() *
                                                      std::abs(c) / h_);
    const double escape = 4.0 * std::max(rx, ry);

    cplx x0(-0.3 * rx, -0.2 * ry), x1(0.3 * rx, 0.2 * ry), x2(0.0, 0.0);
    cplx f0 = g(x0), f1 = g(x1), f2 = g(x2);
    Refined out;
    bool converged = false;
    for (int step = 0; step < opts_.muller_max_steps; ++step) {
      if (f2 == cplx(0.0, 0.0)) {
        converged = true;
        break;
      }
      const cplx h1 = x1 - x0, h2 = x2 - x1;
      const cplx d1 = (f1 - f0) / h1, d2 = (f2 - f1) / h2;
      const cplx a = (d2 - d1) / (h2 + h1);
      const cplx b = a * h2 + d2;
      const cplx disc = std::sqrt(b * b - 4.0 * f2 * a);
      const cplx den = std::abs(b + disc) >= std::abs(b - disc) ? b + disc : b - disc;
      cplx dx;
      if (den == cplx(0.0, 0.0) || !std::isfinite(den.real()) || !std::isfinite(den.imag())) {
        dx = cplx(0.1 * std::max(rx, ry), 0.0);
      } else {
        dx = -2.0 * f2 / den;
      }
      x0 = x1;
      f0 = f1;
      x1 = x2;
      f1 = f2;
      x2 = x2 + dx;
      if (!std::isfinite(x2.real()) || !std::isfinite(x2.imag()) || std::abs(x2) > escape) {
        out.why = "iteration left the box";
        return out;
      }
      f2 = g(x2);
      if (std::abs(dx) <= tol) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      out.why = "no convergence";
      return out;
    }

    cplx z = c + h_ * x2;
    double best = std::abs(f_(z));
    for (int pass = 0; pass < 4; ++pass) {
      cplx best_z = z;
      for (int dr = -1; dr <= 1; ++dr) {
        for (int di = -1; di <= 1; ++di) {
          if (dr == 0 && di == 0) continue;
          double re = z.real(), im = z.imag();
          if (dr) re = std::nextafter(re, dr > 0 ? INFINITY : -INFINITY);
          if (di) im = std::nextafter(im, di > 0 ? INFINITY : -INFINITY);
          const cplx cand(re, im);
          const double v = std::abs(f_(cand));
          if (v < best) {
            best = v;
            best_z = cand;
          }
        }
      }
      if (best_z == z) break;
      z = best_z;
    }

    if (!box.contains_strictly(z)) {
      out.why = "converged outside the certified box";
      return out;
    }
    out.residual = best / f_.scale(z);
    if (!(out.residual <= opts_.residual_tol)) {
      out.why = "residual " + std::to_string(out.residual) + " above tolerance";
      return out;
    }
    out.z = z;
    return out;
  }

  const SecularFunction& f_;
  SearchOptions opts_;
  double h_;
  double bandwidth_;
  SampleFn sample_;
  ScaleFn scale_;
};

}  // namespace

double gamma_estimate(cplx z, double h) { return -z.imag() / (h * std::log(1.0 / h)); }

ResonanceSet find_resonances(const SecularFunction& f, const Window& w,
                             const SearchOptions& opts) {
  validate_window(w, f.config());
  const Searcher searcher(f, opts);
  const WindingResult top = winding_number(searcher.sample(), searcher.scale(), w,
                                           searcher.bandwidth(), opts.winding);
  ResonanceSet set;
  set.window = top.window;
  set.total_winding = top.winding;

  std::vector<Task> level;
  if (top.winding != 0) level.push_back({top.window, top.winding, 0});
  const unsigned threads = resolve_threads(opts.threads);
  while (!level.empty()) {
    std::vector<Outcome> outcomes(level.size());
    parallel_for(level.size(), threads,
                 [&](std::size_t i) { outcomes[i] = searcher.process(level[i]); });
    std::vector<Task> next;
    for (Outcome& o : outcomes) {
      if (o.root) set.roots.push_back(*o.root);
      if (o.uncertified) set.uncertified.push_back(*o.uncertified);
      for (Task& t : o.children) next.push_back(t);
    }
    level = std::move(next);
  }

  auto by_position = [](cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  };
  std::sort(set.roots.begin(), set.roots.end(),
            [&](const Resonance& a, const Resonance& b) { return by_position(a.z, b.z); });
  std::sort(set.uncertified.begin(), set.uncertified.end(),
            [&](const UncertifiedBox& a, const UncertifiedBox& b) {
              return by_position(a.box.center(), b.box.center());
            });
  return set;
}

ResonanceSet find_resonances(const PotentialConfig& config, const Window& w,
                             const SearchOptions& opts) {
  return find_resonances(SecularFunction(config), w, opts);
}

}  // namespace reslab
