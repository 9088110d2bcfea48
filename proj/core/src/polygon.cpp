#include "reslab/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace reslab {

namespace {

struct Chain {
  std::vector<std::size_t> vertices;
  std::vector<PointRole> roles;
};

// Kernel: sort_less(i, j) total order by (nu, lambda); cmp_nu / cmp_lambda
// return -1/0/1 with the kernel's notion of equality; orient(o, a, b) is the
// sign of (a - o) x (b - o).
template <class Kernel>
Chain lower_left_chain(std::size_t n, const Kernel& k) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return k.sort_less(a, b); });

  // Pareto front: strictly decreasing lambda as nu increases.
  std::vector<std::size_t> front;
  for (std::size_t i : order) {
    if (front.empty()) {
      front.push_back(i);
      continue;
    }
    if (k.cmp_lambda(i, front.back()) >= 0) continue;
    if (k.cmp_nu(i, front.back()) == 0) {
      front.back() = i;
    } else {
      front.push_back(i);
    }
  }

  Chain out;
  for (std::size_t i : front) {
    while (out.vertices.size() >= 2 &&
           k.orient(out.vertices[out.vertices.size() - 2], out.vertices.back(),
                    i) <= 0) {
      out.vertices.pop_back();
    }
    out.vertices.push_back(i);
  }

  out.roles.assign(n, PointRole::Above);
  const std::size_t first = out.vertices.front();
  const std::size_t last = out.vertices.back();
  for (std::size_t p = 0; p < n; ++p) {
    PointRole role = PointRole::Above;
    for (std::size_t v : out.vertices) {
      if (k.cmp_nu(p, v) == 0 && k.cmp_lambda(p, v) == 0) {
        role = PointRole::Vertex;
        break;
      }
    }
    if (role == PointRole::Vertex) {
      out.roles[p] = role;
      continue;
    }
    if ((k.cmp_nu(p, first) == 0 && k.cmp_lambda(p, first) >= 0) ||
        (k.cmp_lambda(p, last) == 0 && k.cmp_nu(p, last) >= 0)) {
      out.roles[p] = PointRole::OnBoundary;
      continue;
    }
    for (std::size_t e = 0; e + 1 < out.vertices.size(); ++e) {
      const std::size_t a = out.vertices[e];
      const std::size_t b = out.vertices[e + 1];
      if (k.cmp_nu(p, a) >= 0 && k.cmp_nu(p, b) <= 0) {
        if (k.orient(a, b, p) == 0) role = PointRole::OnBoundary;
        break;
      }
    }
    out.roles[p] = role;
  }
  return out;
}

struct DoubleKernel {
  std::span<const ExponentPoint> pts;
  double tol = 0.0;        // coordinate tolerance
  double cross_tol = 0.0;  // orientation tolerance

  bool sort_less(std::size_t a, std::size_t b) const {
    if (pts[a].nu != pts[b].nu) return pts[a].nu < pts[b].nu;
    return pts[a].lambda < pts[b].lambda;
  }
  int cmp(double a, double b) const {
    if (a < b - tol) return -1;
    if (a > b + tol) return 1;
    return 0;
  }
  int cmp_nu(std::size_t a, std::size_t b) const { return cmp(pts[a].nu, pts[b].nu); }
  int cmp_lambda(std::size_t a, std::size_t b) const {
    return cmp(pts[a].lambda, pts[b].lambda);
  }
  int orient(std::size_t o, std::size_t a, std::size_t b) const {
    const double ax = pts[a].nu - pts[o].nu;
    const double ay = pts[a].lambda - pts[o].lambda;
    const double bx = pts[b].nu - pts[o].nu;
    const double by = pts[b].lambda - pts[o].lambda;
    const double c = ax * by - ay * bx;
    if (c > cross_tol) return 1;
    if (c < -cross_tol) return -1;
    return 0;
  }
};

__extension__ using i128 = __int128;

struct IntKernel {
  std::vector<std::int64_t> nu;
  std::vector<std::int64_t> lambda;

  static int sign(i128 v) { return (v > 0) - (v < 0); }
  bool sort_less(std::size_t a, std::size_t b) const {
    if (nu[a] != nu[b]) return nu[a] < nu[b];
    return lambda[a] < lambda[b];
  }
  int cmp_nu(std::size_t a, std::size_t b) const { return sign(i128{nu[a]} - nu[b]); }
  int cmp_lambda(std::size_t a, std::size_t b) const {
    return sign(i128{lambda[a]} - lambda[b]);
  }
  int orient(std::size_t o, std::size_t a, std::size_t b) const {
    const i128 ax = i128{nu[a]} - nu[o];
    const i128 ay = i128{lambda[a]} - lambda[o];
    const i128 bx = i128{nu[b]} - nu[o];
    const i128 by = i128{lambda[b]} - lambda[o];
    return sign(ax * by - ay * bx);
  }
};

void check_points(std::span<const ExponentPoint> points) {
  if (points.empty()) throw std::invalid_argument("build_polygon: no points");
  for (const auto& p : points) {
    if (!std::isfinite(p.nu) || !std::isfinite(p.lambda) || p.nu < 0.0 ||
        p.lambda < 0.0) {
      throw std::invalid_argument(
          "build_polygon: coordinates must be finite and nonnegative");
    }
  }
}

PolygonEdge make_edge(const ExponentPoint& from, const ExponentPoint& to) {
  PolygonEdge e;
  e.from = from;
  e.to = to;
  e.slope = (to.lambda - from.lambda) / (to.nu - from.nu);
  e.gamma = (to.nu - from.nu) / (from.lambda - to.lambda);
  return e;
}

NewtonPolygon assemble(std::span<const ExponentPoint> points, const Chain& chain) {
  NewtonPolygon poly;
  poly.points.assign(points.begin(), points.end());
  poly.roles = chain.roles;
  for (std::size_t v : chain.vertices) poly.hull_vertices.push_back(points[v]);
  for (std::size_t i = 0; i + 1 < poly.hull_vertices.size(); ++i) {
    poly.edges.push_back(make_edge(poly.hull_vertices[i], poly.hull_vertices[i + 1]));
  }
  return poly;
}

std::int64_t scale_to_int(const Rational& r, std::int64_t denom) {
  std::int64_t out;
  if (__builtin_mul_overflow(r.num(), denom / r.den(), &out)) {
    throw std::overflow_error("exact polygon coordinates overflow int64");
  }
  return out;
}

}  // namespace

NewtonPolygon build_polygon(std::span<const ExponentPoint> points,
                            const PolygonOptions& opts) {
  check_points(points);
  double scale = 0.0;
  for (const auto& p : points) scale = std::max({scale, p.nu, p.lambda});
  if (scale == 0.0) scale = 1.0;
  const DoubleKernel kernel{points, opts.rel_tol * scale,
                            opts.rel_tol * scale * scale};
  return assemble(points, lower_left_chain(points.size(), kernel));
}

NewtonPolygon build_polygon_exact(std::span<const ExactExponentPoint> points) {
  if (points.empty()) throw std::invalid_argument("build_polygon: no points");
  std::int64_t nu_den = 1;
  std::int64_t lambda_den = 1;
  for (const auto& p : points) {
    if (p.nu < Rational(0) || p.lambda < Rational(0)) {
      throw std::invalid_argument("build_polygon: coordinates must be nonnegative");
    }
    nu_den = checked_lcm(nu_den, p.nu.den());
    lambda_den = checked_lcm(lambda_den, p.lambda.den());
  }
  IntKernel kernel;
  std::vector<ExponentPoint> approx;
  for (const auto& p : points) {
    kernel.nu.push_back(scale_to_int(p.nu, nu_den));
    kernel.lambda.push_back(scale_to_int(p.lambda, lambda_den));
    approx.push_back({p.nu.to_double(), p.lambda.to_double(), p.alpha});
  }
  const Chain chain = lower_left_chain(points.size(), kernel);
  NewtonPolygon poly = assemble(approx, chain);
  for (std::size_t i = 0; i + 1 < chain.vertices.size(); ++i) {
    const auto& a = points[chain.vertices[i]];
    const auto& b = points[chain.vertices[i + 1]];
    poly.edges[i].exact_gamma = (b.nu - a.nu) / (a.lambda - b.lambda);
    poly.edges[i].gamma = poly.edges[i].exact_gamma->to_double();
  }
  return poly;
}

std::vector<ExactExponentPoint> exponent_points_exact(
    const SecularExpansion& expansion, std::span<const Rational> betas,
    std::span<const Rational> lengths) {
  if (betas.size() != expansion.n_poles || lengths.size() + 1 != expansion.n_poles) {
    throw std::invalid_argument("exponent_points_exact: size mismatch");
  }
  std::vector<ExactExponentPoint> out;
  for (const auto& [alpha, poly] : expansion.terms) {
    if (poly.empty()) continue;
    std::optional<Rational> nu;
    for (const auto& [mono, coeff] : poly) {
      const auto m = decode_monomial(mono, expansion.n_poles);
      Rational s(0);
      for (std::size_t j = 0; j < m.size(); ++j) s = s + Rational(m[j]) * betas[j];
      if (!nu || s < *nu) nu = s;
    }
    Rational lambda(0);
    for (std::size_t j = 0; j < lengths.size(); ++j) {
      if (!(alpha & (std::uint32_t{1} << j))) lambda = lambda + lengths[j];
    }
    out.push_back({*nu, Rational(2) * lambda, alpha});
  }
  return out;
}

const char* to_string(Provenance p) noexcept {
  switch (p) {
    case Provenance::Polygon:
      return "polygon";
    case Provenance::ClosedForm2Delta:
      return "closed_form_2delta";
    case Provenance::ClosedForm3Delta:
      return "closed_form_3delta";
  }
  return "?";
}

std::vector<GammaCandidate> gamma_candidates(const NewtonPolygon& polygon) {
  std::vector<GammaCandidate> out;
  for (const PolygonEdge& e : polygon.edges) {
    out.push_back({e.gamma, e, Provenance::Polygon});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.gamma < b.gamma; });
  return out;
}

}  // namespace reslab
