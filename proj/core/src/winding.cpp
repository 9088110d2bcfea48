#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "reslab/rootfind.hpp"

namespace reslab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kMaxInitialSamples = 1u << 22;
// Above this N the symbolic term model gets expensive; fall back to a
// cruder scale.
constexpr std::size_t kMaxScaleModelPoles = 10;

double phase_step(cplx from, cplx to) { return std::arg(to / from); }

bool canonical_order(cplx a, cplx b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

struct Sample {
  cplx z;
  cplx f;
};

}  // namespace

double Window::m_equiv(double h) const { return -im_min / (h * std::log(1.0 / h)); }

Window default_window(double h) { return {1.0 - 3.0 * h, 1.0 + 3.0 * h, -3.0 * h, 0.0}; }

void validate_window(const Window& w, const PotentialConfig& config) {
  for (double v : {w.re_min, w.re_max, w.im_min, w.im_max}) {
    if (!std::isfinite(v)) throw Error(Errc::InvalidWindow, "window bounds must be finite");
  }
  if (!(w.re_min < w.re_max)) throw Error(Errc::InvalidWindow, "need re_min < re_max");
  if (!(w.im_min < w.im_max)) throw Error(Errc::InvalidWindow, "need im_min < im_max");
  if (w.im_max > 0.0) {
    throw Error(Errc::InvalidWindow, "window must lie in Im z <= 0 (im_max > 0)");
  }
  check_overflow_guard(config, cplx(w.re_min, w.im_min));
}

Window inflate(const Window& w, double fraction) {
  const double dx = 0.5 * fraction * w.width();
  const double dy = 0.5 * fraction * w.height();
  return {w.re_min - dx, w.re_max + dx, w.im_min - dy, w.im_max + dy};
}

SecularFunction::SecularFunction(PotentialConfig config) : config_(std::move(config)) {
  if (config_.size() <= kMaxScaleModelPoles) {
    auto exp = std::make_shared<SecularExpansion>(expand_terms(config_));
    term_scale_ = std::make_shared<TermScale>(*exp, config_);
    expansion_ = std::move(exp);
  }
}

cplx SecularFunction::operator()(cplx z) const { return cleared_det(config_, z); }

double SecularFunction::scale(cplx z) const {
  if (term_scale_) return term_scale_->max_term(z);
  // leading term w^{2|l|} against the fully reflected constant term
  double prod = 1.0;
  for (const Pole& p : config_.poles()) {
    prod *= std::abs(vtilde(p, config_.h(), z));
  }
  return std::max(std::exp(2.0 * config_.total_length() * z.imag() / config_.h()), prod);
}

double secular_bandwidth(const PotentialConfig& config) {
  return 2.0 * config.total_length() / config.h();
}

std::optional<double> edge_turns(const SampleFn& f, const ScaleFn& scale, cplx a,
                                 cplx b, double bandwidth, const WindingOptions& opts) {
  if (!canonical_order(a, b)) {
    auto t = edge_turns(f, scale, b, a, bandwidth, opts);
    if (t) *t = -*t;
    return t;
  }
  const double len = std::abs(b - a);
  const double want = std::ceil(len * bandwidth / (kPi / 4.0));
  const std::size_t n0 = static_cast<std::size_t>(
      std::clamp(want, 4.0, static_cast<double>(kMaxInitialSamples)));

  auto sample = [&](cplx z) -> std::optional<Sample> {
    const cplx v = f(z);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return std::nullopt;
    if (std::abs(v) < opts.zero_rel_tol * scale(z)) return std::nullopt;
    return Sample{z, v};
  };

  auto point = [&](std::size_t i) {
    if (i == n0) return b;
    return a + (b - a) * (static_cast<double>(i) / static_cast<double>(n0));
  };

  auto first = sample(a);
  if (!first) return std::nullopt;
  double total = 0.0;
  Sample left = *first;
  std::vector<std::pair<Sample, int>> stack;  // pending right endpoints, depth
  for (std::size_t i = 1; i <= n0; ++i) {
    auto right = sample(point(i));
    if (!right) return std::nullopt;
    stack.clear();
    stack.emplace_back(*right, 0);
    while (!stack.empty()) {
      const auto [r, depth] = stack.back();
      const double step = phase_step(left.f, r.f);
      if (std::abs(step) < kPi / 2.0) {
        total += step;
        left = r;
        stack.pop_back();
        continue;
      }
      if (depth >= opts.max_bisections) return std::nullopt;
      auto mid = sample(0.5 * (left.z + r.z));
      if (!mid) return std::nullopt;
      stack.back().second = depth + 1;
      stack.emplace_back(*mid, depth + 1);
    }
  }
  return total / (2.0 * kPi);
}

std::optional<long> try_winding(const SampleFn& f, const ScaleFn& scale,
                                const Window& w, double bandwidth,
                                const WindingOptions& opts) {
  const cplx c[4] = {{w.re_min, w.im_min},
                     {w.re_max, w.im_min},
                     {w.re_max, w.im_max},
                     {w.re_min, w.im_max}};
  double total = 0.0;
  for (int e = 0; e < 4; ++e) {
    auto t = edge_turns(f, scale, c[e], c[(e + 1) % 4], bandwidth, opts);
    if (!t) return std::nullopt;
    total += *t;
  }
  const double rounded = std::round(total);
  if (std::abs(total - rounded) > 1e-6) return std::nullopt;
  return static_cast<long>(rounded);
}

WindingResult winding_number(const SampleFn& f, const ScaleFn& scale,
                             const Window& w, double bandwidth,
                             const WindingOptions& opts) {
  Window current = w;
  for (int attempt = 0; attempt <= opts.max_retries; ++attempt) {
    if (auto n = try_winding(f, scale, current, bandwidth, opts)) {
      return {*n, current, attempt};
    }
    current = inflate(current, opts.inflate_fraction);
  }
  std::ostringstream msg;
  msg << "zero on the window boundary after " << opts.max_retries << " inflations";
  throw Error(Errc::BoundaryZero, msg.str());
}

WindingResult winding_number(const PotentialConfig& config, const Window& w,
                             const WindingOptions& opts) {
  validate_window(w, config);
  const SecularFunction fn(config);
  return winding_number([&](cplx z) { return fn(z); },
                        [&](cplx z) { return fn.scale(z); }, w,
                        secular_bandwidth(config), opts);
}

}  // namespace reslab
