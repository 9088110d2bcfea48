#pragma once

#include <optional>
#include <string>
#include <vector>

#include "reslab/polygon.hpp"
#include "reslab/potential.hpp"

namespace reslab {

enum class Branch { Single, Plus, Minus };

const char* to_string(Branch b) noexcept;

struct KRange {
  long k_min = 0;
  long k_max = -1;  // inclusive; empty when k_max < k_min
};

/// Indices k whose base point pi h k / l lies in [re_min, re_max], widened by
/// `margin` spacings on each side and clipped to k >= 1.
KRange k_range_for(double spacing, double re_min, double re_max, long margin = 1);

struct KPrediction {
  long k = 0;
  cplx z_pred;
  int iterations = 0;
};

struct KFailure {
  long k = 0;
  std::string reason;
};

struct StringPrediction {
  double gamma = 0.0;
  Branch branch = Branch::Single;
  std::optional<int> case_id;
  Provenance provenance = Provenance::Polygon;
  std::vector<KPrediction> per_k;  // increasing k
  std::vector<KFailure> failures;  // NoConvergence, one per failed k
};

struct FixedPointOptions {
  int max_iterations = 50;
  double rel_tol = 1e-14;  // |dz| <= rel_tol * h
};

/// z = (ih/2l) log(R1 R2) + pi h k / l by fixed-point iteration from
/// z0 = pi h k / l. Throws NotTwoDeltas.
StringPrediction two_delta_string(const PotentialConfig& config, KRange ks,
                                  const FixedPointOptions& opts = {});

/// Leading-order terms of Re z_k and Im z_k for two deltas. `re` and `im`
/// follow from substituting the expansion of log(R1 R2) into the log
/// equation; `re_printed` / `im_printed` are the closed forms as commonly
/// quoted (quarter-period shift, opposite sign of the log correction).
struct TwoDeltaRefined {
  double re = 0.0;
  double im = 0.0;
  double re_printed = 0.0;
  double im_printed = 0.0;
  double im_leading = 0.0;  // -gamma h log(1/h)
};

TwoDeltaRefined two_delta_refined(const PotentialConfig& config, long k);

/// r_+/r_- strings for three equally spaced deltas. Throws NotThreeDeltas,
/// NotEqualSpacing.
std::pair<StringPrediction, StringPrediction> three_delta_equal_strings(
    const PotentialConfig& config, KRange ks, const FixedPointOptions& opts = {});

/// The two roots of w^{2l} in the equal-spacing quadratic, principal sqrt.
std::pair<cplx, cplx> equal_spacing_roots(const PotentialConfig& config, cplx z);

struct ThreeDeltaGammas {
  double gamma_plus = 0.0;
  double gamma_minus = 0.0;
  int case_id = 1;
};

/// Throws NotThreeDeltas.
ThreeDeltaGammas three_delta_gammas(const PotentialConfig& config);

/// x -> -x, re-sorted.
PotentialConfig reflect_config(const PotentialConfig& config);

}  // namespace reslab
