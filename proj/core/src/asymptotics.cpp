#include "reslab/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "reslab/error.hpp"

namespace reslab {

namespace {

constexpr double kPi = std::numbers::pi;

struct IterResult {
  std::optional<KPrediction> prediction;
  std::string reason;
};

// Iterates L_{n+1} = Log r(base + (ih/2l) L_n) on the principal branch.
template <class RootFn>
IterResult log_fixed_point(long k, double ell, double h, RootFn&& r_of_z,
                           const FixedPointOptions& opts) {
  const double base = kPi * h * static_cast<double>(k) / ell;
  const double factor = h / (2.0 * ell);
  const cplx i_factor(0.0, factor);

  IterResult out;
  cplx z(base, 0.0);
  cplx L = std::log(r_of_z(z));
  for (int it = 1; it <= opts.max_iterations; ++it) {
    z = base + i_factor * L;
    const cplx next = std::log(r_of_z(z));
    if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) {
      out.reason = "log argument vanished or overflowed";
      return out;
    }
    if (std::abs(next.imag() - L.imag()) > kPi) {
      out.reason = "log branch jump at iteration " + std::to_string(it);
      return out;
    }
    const double dz = factor * std::abs(next - L);
    const double floor_tol =
        factor * 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(next));
    L = next;
    if (dz <= std::max(opts.rel_tol * h, floor_tol)) {
      out.prediction = KPrediction{k, base + i_factor * L, it};
      return out;
    }
  }
  out.reason = "no convergence in " + std::to_string(opts.max_iterations) + " iterations";
  return out;
}

void require_size(const PotentialConfig& config, std::size_t n, Errc code,
                  const char* what) {
  if (config.size() != n) {
    throw Error(code, std::string(what) + ", got N=" + std::to_string(config.size()));
  }
}

}  // namespace

const char* to_string(Branch b) noexcept {
  switch (b) {
    case Branch::Single:
      return "single";
    case Branch::Plus:
      return "plus";
    case Branch::Minus:
      return "minus";
  }
  return "?";
}

KRange k_range_for(double spacing, double re_min, double re_max, long margin) {
  KRange r;
  r.k_min = std::max(1L, static_cast<long>(std::ceil(re_min / spacing)) - margin);
  r.k_max = static_cast<long>(std::floor(re_max / spacing)) + margin;
  return r;
}

StringPrediction two_delta_string(const PotentialConfig& config, KRange ks,
                                  const FixedPointOptions& opts) {
  require_size(config, 2, Errc::NotTwoDeltas, "two_delta_string needs N=2");
  const double ell = config.lengths()[0];
  const double h = config.h();

  StringPrediction out;
  out.branch = Branch::Single;
  out.provenance = Provenance::ClosedForm2Delta;
  out.gamma = (config.pole(0).beta + config.pole(1).beta) / (2.0 * ell);

  auto r12 = [&](cplx z) {
    const auto c = scattering_coefficients(config, z);
    return c.reflection[0] * c.reflection[1];
  };
  for (long k = ks.k_min; k <= ks.k_max; ++k) {
    IterResult res = log_fixed_point(k, ell, h, r12, opts);
    if (res.prediction) {
      out.per_k.push_back(*res.prediction);
    } else {
      out.failures.push_back({k, res.reason});
    }
  }
  return out;
}

TwoDeltaRefined two_delta_refined(const PotentialConfig& config, long k) {
  require_size(config, 2, Errc::NotTwoDeltas, "two_delta_refined needs N=2");
  const double ell = config.lengths()[0];
  const double h = config.h();
  const double b = config.pole(0).beta + config.pole(1).beta;
  const double c1c2 = config.pole(0).coupling * config.pole(1).coupling;
  const double heaviside = c1c2 > 0.0 ? 1.0 : 0.0;
  const double base = kPi * h * static_cast<double>(k) / ell;
  const double log_inv_h = std::log(1.0 / h);
  const double log_const = std::log(std::abs(c1c2) / (4.0 * base * base));

  TwoDeltaRefined r;
  r.re = (kPi * h / ell) * (static_cast<double>(k) - heaviside / 2.0);
  r.re_printed = (kPi * h / ell) * (static_cast<double>(k) + heaviside / 4.0);
  r.im = (h / (2.0 * ell)) * (-b * log_inv_h + log_const);
  r.im_printed = (h / (2.0 * ell)) * (b * log_inv_h + log_const);
  r.im_leading = -(b / (2.0 * ell)) * h * log_inv_h;
  return r;
}

std::pair<cplx, cplx> equal_spacing_roots(const PotentialConfig& config, cplx z) {
  require_size(config, 3, Errc::NotThreeDeltas, "equal_spacing_roots needs N=3");
  const auto c = scattering_coefficients(config, z);
  const cplx r1 = c.reflection[0], r2 = c.reflection[1], r3 = c.reflection[2];
  const cplx b = (r1 + r3) * r2;
  const cplx s = std::sqrt(b * b + 4.0 * r1 * (1.0 + 2.0 * r2) * r3);
  return {0.5 * (b + s), 0.5 * (b - s)};
}

std::pair<StringPrediction, StringPrediction> three_delta_equal_strings(
    const PotentialConfig& config, KRange ks, const FixedPointOptions& opts) {
  require_size(config, 3, Errc::NotThreeDeltas, "three_delta_equal_strings needs N=3");
  const double l1 = config.lengths()[0];
  const double l2 = config.lengths()[1];
  if (std::abs(l1 - l2) > 1e-12 * l1) {
    throw Error(Errc::NotEqualSpacing,
                "l1 = " + std::to_string(l1) + ", l2 = " + std::to_string(l2));
  }
  const double h = config.h();

  std::pair<StringPrediction, StringPrediction> out;
  out.first.branch = Branch::Plus;
  out.second.branch = Branch::Minus;
  out.first.provenance = out.second.provenance = Provenance::ClosedForm3Delta;

  // sqrt branch carried by continuity along z (within and across k)
  std::optional<cplx> s_prev;
  auto root_fn = [&](double sign) {
    return [&, sign](cplx z) {
      const auto c = scattering_coefficients(config, z);
      const cplx r1 = c.reflection[0], r2 = c.reflection[1], r3 = c.reflection[2];
      const cplx b = (r1 + r3) * r2;
      cplx s = std::sqrt(b * b + 4.0 * r1 * (1.0 + 2.0 * r2) * r3);
      if (s_prev && std::abs(s - *s_prev) > std::abs(s + *s_prev)) s = -s;
      s_prev = s;
      return 0.5 * (b + sign * s);
    };
  };

  std::optional<cplx> anchor;
  std::optional<cplx> r_fallback[2];
  for (long k = ks.k_min; k <= ks.k_max; ++k) {
    const cplx z0(kPi * h * static_cast<double>(k) / l1, 0.0);
    s_prev = anchor;
    const cplx r_plus0 = root_fn(1.0)(z0);
    anchor = s_prev;
    if (!r_fallback[0]) {
      r_fallback[0] = r_plus0;
      s_prev = anchor;
      r_fallback[1] = root_fn(-1.0)(z0);
    }
    for (int pass = 0; pass < 2; ++pass) {
      s_prev = anchor;
      StringPrediction& target = pass == 0 ? out.first : out.second;
      IterResult res = log_fixed_point(k, l1, h, root_fn(pass == 0 ? 1.0 : -1.0), opts);
      if (res.prediction) {
        target.per_k.push_back(*res.prediction);
      } else {
        target.failures.push_back({k, res.reason});
      }
    }
  }

  // gamma = log|r| / (2 l log h), which at a converged root is -Im z / (h log(1/h)).
  const double log_h = std::log(h);
  int idx = 0;
  for (StringPrediction* sp : {&out.first, &out.second}) {
    if (!sp->per_k.empty()) {
      const cplx z = sp->per_k[sp->per_k.size() / 2].z_pred;
      sp->gamma = z.imag() / (h * log_h);
    } else if (r_fallback[idx]) {
      sp->gamma = std::log(std::abs(*r_fallback[idx])) / (2.0 * l1 * log_h);
    }
    ++idx;
  }
  return out;
}

ThreeDeltaGammas three_delta_gammas(const PotentialConfig& config) {
  require_size(config, 3, Errc::NotThreeDeltas, "three_delta_gammas needs N=3");
  const double b1 = config.pole(0).beta;
  const double b2 = config.pole(1).beta;
  const double b3 = config.pole(2).beta;
  const double l1 = config.lengths()[0];
  const double l2 = config.lengths()[1];

  const double left = b3 * l1 - b2 * l1 - b2 * l2;
  const double mid = b1 * l2;
  const double right = b2 * l1 + b2 * l2 + b3 * l1;

  ThreeDeltaGammas g;
  if (left <= mid && mid <= right) {
    g.case_id = 1;
    g.gamma_plus = g.gamma_minus = (b1 + b3) / (2.0 * l1 + 2.0 * l2);
  } else if (left > mid) {
    g.case_id = 2;
    g.gamma_plus = (b3 - b2) / (2.0 * l2);
    g.gamma_minus = (b1 + b2) / (2.0 * l1);
  } else {
    g.case_id = 3;
    g.gamma_plus = (b1 - b2) / (2.0 * l1);
    g.gamma_minus = (b2 + b3) / (2.0 * l2);
  }
  return g;
}

PotentialConfig reflect_config(const PotentialConfig& config) {
  std::vector<Pole> poles(config.poles().begin(), config.poles().end());
  for (Pole& p : poles) p.x = -p.x;
  return PotentialConfig::validate(config.h(), std::move(poles));
}

}  // namespace reslab
