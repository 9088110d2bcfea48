#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "reslab/error.hpp"
#include "reslab/polygon.hpp"
#include "reslab/potential.hpp"
#include "reslab/secular.hpp"

namespace reslab {

// ---------------------------------------------------------------------------
// Windows
// ---------------------------------------------------------------------------

struct Window {
  double re_min = 0.0;
  double re_max = 0.0;
  double im_min = 0.0;
  double im_max = 0.0;

  cplx center() const { return {0.5 * (re_min + re_max), 0.5 * (im_min + im_max)}; }
  double width() const { return re_max - re_min; }
  double height() const { return im_max - im_min; }
  bool contains_strictly(cplx z) const {
    return z.real() > re_min && z.real() < re_max && z.imag() > im_min &&
           z.imag() < im_max;
  }
  /// Depth in units of h log(1/h).
  double m_equiv(double h) const;

  bool operator==(const Window&) const = default;
};

/// Re in [1-3h, 1+3h], Im in [-3h, 0].
Window default_window(double h);

/// Throws InvalidWindow (ordering, im_max > 0, non-finite) or OverflowGuard.
void validate_window(const Window& w, const PotentialConfig& config);

Window inflate(const Window& w, double fraction);

// ---------------------------------------------------------------------------
// The function whose zeros are sought
// ---------------------------------------------------------------------------

/// Cleared secular determinant plus a magnitude model for its terms.
/// Immutable once built; safe to share between threads.
class SecularFunction {
 public:
  explicit SecularFunction(PotentialConfig config);

  cplx operator()(cplx z) const;
  /// Largest single term magnitude at z (relative scale for residuals).
  double scale(cplx z) const;
  const PotentialConfig& config() const noexcept { return config_; }
  const SecularExpansion* expansion() const noexcept { return expansion_.get(); }

 private:
  PotentialConfig config_;
  std::shared_ptr<const SecularExpansion> expansion_;
  std::shared_ptr<const TermScale> term_scale_;
};

using SampleFn = std::function<cplx(cplx)>;
using ScaleFn = std::function<double(cplx)>;

// ---------------------------------------------------------------------------
// Winding numbers
// ---------------------------------------------------------------------------

struct WindingOptions {
  double zero_rel_tol = 1e-13;  // |F| below this times scale: boundary zero
  double inflate_fraction = 0.01;
  int max_retries = 5;
  int max_bisections = 60;  // per initial sample interval
};

/// Phase change along the segment a -> b divided by 2 pi, or nullopt when a
/// sample hits (numerically) zero. Segments are always traversed in a
/// canonical direction so shared edges cancel exactly.
std::optional<double> edge_turns(const SampleFn& f, const ScaleFn& scale, cplx a,
                                 cplx b, double bandwidth, const WindingOptions& opts);

/// Winding around the rectangle, or nullopt on a boundary zero (no retry).
/// `bandwidth` is the expected phase rate of f per unit |dz|.
std::optional<long> try_winding(const SampleFn& f, const ScaleFn& scale,
                                const Window& w, double bandwidth,
                                const WindingOptions& opts = {});

struct WindingResult {
  long winding = 0;
  Window window;  // possibly inflated
  int retries = 0;
};

/// With inflation retries; throws BoundaryZero when they run out.
WindingResult winding_number(const SampleFn& f, const ScaleFn& scale,
                             const Window& w, double bandwidth,
                             const WindingOptions& opts = {});

/// Winding of the cleared determinant. Validates the window.
WindingResult winding_number(const PotentialConfig& config, const Window& w,
                             const WindingOptions& opts = {});

/// Phase rate 2|l|/h of the cleared determinant.
double secular_bandwidth(const PotentialConfig& config);

// ---------------------------------------------------------------------------
// Resonance search
// ---------------------------------------------------------------------------

struct SearchOptions {
  int max_depth = 40;
  double muller_tol = 1e-10;  // |du| in u = (z - c) / h
  int muller_max_steps = 60;
  double residual_tol = 1e-8;
  unsigned threads = 0;  // 0: RESLAB_THREADS or hardware
  WindingOptions winding;
};

struct Resonance {
  cplx z;
  double residual = 0.0;
  long winding_cert = 0;
  double gamma_est = 0.0;
  Window box;
  int depth = 0;
  int cluster_id = -1;
};

struct UncertifiedBox {
  Window box;
  long winding = 0;
  int depth = 0;
  Errc reason = Errc::MaxDepthExceeded;
  std::string detail;
};

struct ResonanceSet {
  Window window;  // as searched (after any inflation)
  long total_winding = 0;
  std::vector<Resonance> roots;  // sorted by Re z, then Im z
  std::vector<UncertifiedBox> uncertified;

  bool complete() const noexcept { return uncertified.empty(); }
};

ResonanceSet find_resonances(const SecularFunction& f, const Window& w,
                             const SearchOptions& opts = {});
ResonanceSet find_resonances(const PotentialConfig& config, const Window& w,
                             const SearchOptions& opts = {});

/// -Im z / (h log(1/h)).
double gamma_estimate(cplx z, double h);

// ---------------------------------------------------------------------------
// String classification
// ---------------------------------------------------------------------------

struct ClassifyOptions {
  double gamma_tol = 0.05;
  double level_gap_h = 0.05;  // Im-level clusters split at gaps > level_gap_h * h
};

struct StringCluster {
  double gamma = 0.0;  // candidate
  std::size_t count = 0;
  double mean_gamma_est = 0.0;
  double mean_im = 0.0;
  double im_spread = 0.0;  // max |Im z_i - Im z_j|
  bool flagged = false;    // |mean_gamma_est - gamma| > gamma_tol
  std::vector<std::size_t> members;
};

struct LevelCluster {
  double mean_im = 0.0;
  double im_spread = 0.0;
  double mean_gamma_est = 0.0;
  std::vector<std::size_t> members;
};

struct StringReport {
  double gamma_tol = 0.05;
  std::vector<StringCluster> clusters;  // one per candidate, same order
  std::vector<LevelCluster> levels;     // ascending Im (deepest first)
  std::vector<int> assignment;          // candidate index per resonance

  std::size_t nonempty_clusters() const;
};

/// Assigns every resonance to the candidate whose finite-h level is closest
/// and sets Resonance::cluster_id. Throws std::invalid_argument on empty input.
StringReport classify_strings(ResonanceSet& set,
                              const std::vector<GammaCandidate>& candidates,
                              const PotentialConfig& config,
                              const ClassifyOptions& opts = {});

/// Finite-h slope of a polygon edge at z: the Im level at which the two edge
/// terms balance, expressed as -Im / (h log(1/h)). Falls back to the edge's
/// asymptotic gamma when the endpoints are not in the expansion.
double effective_gamma(const GammaCandidate& candidate,
                       const SecularExpansion& expansion,
                       const PotentialConfig& config, cplx z);

// ---------------------------------------------------------------------------
// Resonant states
// ---------------------------------------------------------------------------

struct ResonantState {
  cplx z;
  std::vector<cplx> y;  // (y_1^-, y_1^+, ..., y_{N-1}^-, y_{N-1}^+), max |y| = 1
  cplx y0_minus;
  cplx yN_plus;
  std::vector<cplx> v_plus;   // v_j^+, j = 0..N (v_0^+ = 0)
  std::vector<cplx> v_minus;  // v_j^-, j = 0..N (v_N^- = 0)
  double null_residual = 0.0;  // ||(A - I) y|| / ||y||
  double pivot_ratio = 0.0;    // smallest LU pivot / matrix scale

  /// u(x) and u'(x); at a pole the right-hand interval is used.
  cplx u(double x) const;
  cplx du(double x) const;

  std::vector<double> positions;
  double h = 0.0;
  std::vector<cplx> y_plus_all;   // y_j^+, j = 0..N (y_0^+ = 0)
  std::vector<cplx> y_minus_all;  // y_j^-, j = 0..N (y_N^- = 0)
};

/// Throws NotNearSingular when the smallest pivot exceeds 1e-4 of the
/// matrix scale.
ResonantState resonant_state(const PotentialConfig& config, cplx z);

}  // namespace reslab
