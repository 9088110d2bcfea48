#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "reslab/rational.hpp"
#include "reslab/secular.hpp"

namespace reslab {

enum class PointRole { Vertex, OnBoundary, Above };

struct PolygonEdge {
  ExponentPoint from;
  ExponentPoint to;
  double slope = 0.0;  // dlambda / dnu, always finite and negative
  double gamma = 0.0;  // -1 / slope
  std::optional<Rational> exact_gamma;
};

/// Lower-left boundary of the union of quadrants (nu, lambda) + [0, inf)^2.
/// The vertical ray above the first vertex and the horizontal ray right of
/// the last vertex belong to the polygon but produce no edges.
struct NewtonPolygon {
  std::vector<ExponentPoint> points;
  std::vector<PointRole> roles;  // parallel to points
  std::vector<ExponentPoint> hull_vertices;
  std::vector<PolygonEdge> edges;
};

struct PolygonOptions {
  double rel_tol = 1e-9;
};

NewtonPolygon build_polygon(std::span<const ExponentPoint> points,
                            const PolygonOptions& opts = {});

struct ExactExponentPoint {
  Rational nu;
  Rational lambda;
  std::uint32_t alpha = 0;
};

/// Same construction with exact integer orientation tests.
NewtonPolygon build_polygon_exact(std::span<const ExactExponentPoint> points);

/// Exponent points from rational betas and lengths (one of each per pole /
/// gap in sorted order).
std::vector<ExactExponentPoint> exponent_points_exact(
    const SecularExpansion& expansion, std::span<const Rational> betas,
    std::span<const Rational> lengths);

enum class Provenance { Polygon, ClosedForm2Delta, ClosedForm3Delta };

const char* to_string(Provenance p) noexcept;

struct GammaCandidate {
  double gamma = 0.0;
  PolygonEdge edge;
  Provenance provenance = Provenance::Polygon;
};

/// One candidate per finite edge, sorted by gamma.
std::vector<GammaCandidate> gamma_candidates(const NewtonPolygon& polygon);

}  // namespace reslab
