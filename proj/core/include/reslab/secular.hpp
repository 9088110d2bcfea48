#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "reslab/linalg.hpp"
#include "reslab/potential.hpp"

namespace reslab {

// ---------------------------------------------------------------------------
// Structure of A_N
// ---------------------------------------------------------------------------

enum class EntryKind { DiagonalMinusOne, Reflection, Transmission };

/// One structurally nonzero entry of A_N - I. `pole` and `length` are
/// 0-based; the value is R_pole w^{-l_length} or T_pole w^{-l_length}, or -1
/// on the diagonal (pole is still the pole whose equation the row encodes).
struct MatrixEntry {
  std::size_t row;
  std::size_t col;
  EntryKind kind;
  std::size_t pole;
  std::size_t length;  // unused for DiagonalMinusOne
};

/// Rows/columns follow the amplitude vector (y_1^-, y_1^+, ..., y_{N-1}^-,
/// y_{N-1}^+): y_j^- sits at 2(j-1) and y_j^+ at 2(j-1)+1 (1-based j).
struct SecularMatrixSpec {
  std::size_t dim = 0;
  std::vector<MatrixEntry> entries;  // row-major order

  /// The pole whose transfer equation row r encodes.
  std::size_t row_pole(std::size_t row) const;
};

SecularMatrixSpec secular_matrix_spec(std::size_t n_poles);

inline std::size_t minus_index(std::size_t interval) { return 2 * interval; }
inline std::size_t plus_index(std::size_t interval) { return 2 * interval + 1; }

// ---------------------------------------------------------------------------
// Numeric determinant
// ---------------------------------------------------------------------------

/// A_N - I at z (no clearing).
CMatrix secular_matrix(const PotentialConfig& config, cplx z);

struct SecularDeterminant {
  cplx raw;      // det(A_N - I)
  cplx cleared;  // raw * w^{2|l|} * prod (1 - Vtilde_j)^2
};

/// Checks |Im z| * max l / h <= 600 and throws OverflowGuard otherwise.
void check_overflow_guard(const PotentialConfig& config, cplx z);

inline constexpr double kOverflowExponent = 600.0;

SecularDeterminant secular_det(const PotentialConfig& config, cplx z);

/// Only the cleared determinant, from a row-scaled matrix whose entries stay
/// bounded in the lower half plane. This is the hot path for grids and
/// contour sampling.
cplx cleared_det(const PotentialConfig& config, cplx z);

/// The row-scaled matrix whose determinant times (1-Vt_1)(1-Vt_N) is the
/// cleared determinant.
CMatrix cleared_matrix(const PotentialConfig& config, cplx z);

// ---------------------------------------------------------------------------
// Symbolic expansion
// ---------------------------------------------------------------------------

inline constexpr std::size_t kMaxExpansionPoles = 12;

/// Packed multidegree over (Vt_1 .. Vt_N): digit j (base 3) is m_j.
using MonomialKey = std::uint64_t;
/// Integer polynomial in Vt_1..Vt_N.
using CoeffPoly = std::map<MonomialKey, std::int64_t>;

std::vector<int> decode_monomial(MonomialKey key, std::size_t n_poles);
MonomialKey encode_monomial(const std::vector<int>& degrees);
int total_degree(MonomialKey key, std::size_t n_poles);

/// cleared determinant = sum_alpha coeff_alpha(Vt) * w^{2(|l| - alpha.l)}.
/// Bit j of alpha refers to l_{j} (0-based).
struct SecularExpansion {
  std::size_t n_poles = 0;
  std::map<std::uint32_t, CoeffPoly> terms;

  bool operator==(const SecularExpansion&) const = default;
};

/// Exact expansion by memoised cofactor expansion over the integer
/// polynomial ring. Throws TooManyPoles for N > 12.
SecularExpansion expand_terms(const PotentialConfig& config);
SecularExpansion expand_terms(std::size_t n_poles);

/// Independent Leibniz-sum oracle with the same contract as expand_terms.
/// Throws TooManyPoles for N > 4.
SecularExpansion expand_terms_bruteforce(const PotentialConfig& config);
SecularExpansion expand_terms_bruteforce(std::size_t n_poles);

/// w exponent 2(|l| - alpha.l) for an alpha bitmask.
double w_exponent(std::uint32_t alpha, std::span<const double> lengths);

/// Evaluate the expansion termwise at z (numeric Vt_j, direct w powers).
cplx evaluate_expansion(const SecularExpansion& expansion,
                        const PotentialConfig& config, cplx z);

/// Evaluate a single coefficient polynomial at numeric Vt values.
cplx evaluate_coeff(const CoeffPoly& poly, std::span<const cplx> vt);

// ---------------------------------------------------------------------------
// Exponent points for the Newton polygon
// ---------------------------------------------------------------------------

struct ExponentPoint {
  double nu = 0.0;      // h-exponent mu_alpha
  double lambda = 0.0;  // w-exponent 2(|l| - alpha.l)
  std::uint32_t alpha = 0;
};

std::vector<ExponentPoint> exponent_points(const SecularExpansion& expansion,
                                           const PotentialConfig& config);

// ---------------------------------------------------------------------------
// Term magnitudes
// ---------------------------------------------------------------------------

/// Magnitude model of the expansion's individual terms at z. All |Vt_j|
/// share the factor 1/|z|, so each alpha keeps the largest coefficient
/// magnitude per total degree and evaluation costs O(2^{N-1} * 2N).
class TermScale {
 public:
  TermScale(const SecularExpansion& expansion, const PotentialConfig& config);

  /// Largest single monomial term |c * Vt^m * w^lambda| at z.
  double max_term(cplx z) const;

 private:
  struct Group {
    double lambda;
    std::vector<double> by_degree;  // index = total degree
  };
  double h_;
  std::vector<Group> groups_;
};

}  // namespace reslab
