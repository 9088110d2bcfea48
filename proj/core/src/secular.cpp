#include "reslab/secular.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "reslab/error.hpp"

namespace reslab {

SecularMatrixSpec secular_matrix_spec(std::size_t n_poles) {
  if (n_poles < 2) {
    throw Error(Errc::TooFewPoles, "secular matrix needs N >= 2", n_poles);
  }
  const std::size_t intervals = n_poles - 1;
  SecularMatrixSpec spec;
  spec.dim = 2 * intervals;
  for (std::size_t i = 0; i < intervals; ++i) {
    // Row y_i^-: y_i^- = T_{i+1} w^{-l_{i+1}} y_{i+1}^- + R_{i+1} w^{-l_i} y_i^+
    const std::size_t rm = minus_index(i);
    spec.entries.push_back({rm, rm, EntryKind::DiagonalMinusOne, i + 1, 0});
    spec.entries.push_back({rm, plus_index(i), EntryKind::Reflection, i + 1, i});
    if (i + 1 < intervals) {
      spec.entries.push_back(
          {rm, minus_index(i + 1), EntryKind::Transmission, i + 1, i + 1});
    }
    // Row y_i^+: y_i^+ = T_i w^{-l_{i-1}} y_{i-1}^+ + R_i w^{-l_i} y_i^-
    const std::size_t rp = plus_index(i);
    if (i > 0) {
      spec.entries.push_back(
          {rp, plus_index(i - 1), EntryKind::Transmission, i, i - 1});
    }
    spec.entries.push_back({rp, minus_index(i), EntryKind::Reflection, i, i});
    spec.entries.push_back({rp, rp, EntryKind::DiagonalMinusOne, i, 0});
  }
  return spec;
}

std::size_t SecularMatrixSpec::row_pole(std::size_t row) const {
  const std::size_t interval = row / 2;
  return (row % 2 == 0) ? interval + 1 : interval;
}

void check_overflow_guard(const PotentialConfig& config, cplx z) {
  const double exponent = std::abs(z.imag()) * config.max_length() / config.h();
  if (!(exponent <= kOverflowExponent)) {
    throw Error(Errc::OverflowGuard,
                "|Im z| * max l / h = " + std::to_string(exponent) +
                    " exceeds " + std::to_string(kOverflowExponent));
  }
}

CMatrix secular_matrix(const PotentialConfig& config, cplx z) {
  const auto coeffs = scattering_coefficients(config, z);
  const auto spec = secular_matrix_spec(config.size());
  const auto lengths = config.lengths();
  CMatrix a(spec.dim);
  for (const MatrixEntry& e : spec.entries) {
    switch (e.kind) {
      case EntryKind::DiagonalMinusOne:
        a(e.row, e.col) = -1.0;
        break;
      case EntryKind::Reflection:
        a(e.row, e.col) =
            coeffs.reflection[e.pole] / w_power(lengths[e.length], z, config.h());
        break;
      case EntryKind::Transmission:
        a(e.row, e.col) =
            coeffs.transmission[e.pole] / w_power(lengths[e.length], z, config.h());
        break;
    }
  }
  return a;
}

CMatrix cleared_matrix(const PotentialConfig& config, cplx z) {
  if (z == cplx(0.0, 0.0)) {
    throw Error(Errc::ZeroSpectralParameter, "z must be nonzero");
  }
  const double h = config.h();
  const auto lengths = config.lengths();
  const std::size_t n = config.size();
  std::vector<cplx> vt(n);
  for (std::size_t j = 0; j < n; ++j) vt[j] = vtilde(config.pole(j), h, z);

  // Both rows of interval i are scaled by w^{l_i}; each row also by the
  // (1 - Vt) denominator of the pole it encodes.
  const std::size_t intervals = n - 1;
  CMatrix a(2 * intervals);
  for (std::size_t i = 0; i < intervals; ++i) {
    const cplx wi = w_power(lengths[i], z, h);
    const std::size_t rm = minus_index(i);
    a(rm, rm) = -(1.0 - vt[i + 1]) * wi;
    a(rm, plus_index(i)) = vt[i + 1];
    if (i + 1 < intervals) {
      a(rm, minus_index(i + 1)) = w_power(lengths[i] - lengths[i + 1], z, h);
    }
    const std::size_t rp = plus_index(i);
    a(rp, rp) = -(1.0 - vt[i]) * wi;
    a(rp, minus_index(i)) = vt[i];
    if (i > 0) {
      a(rp, plus_index(i - 1)) = w_power(lengths[i] - lengths[i - 1], z, h);
    }
  }
  return a;
}

cplx cleared_det(const PotentialConfig& config, cplx z) {
  check_overflow_guard(config, z);
  const double h = config.h();
  const cplx v1 = vtilde(config.poles().front(), h, z);
  const cplx vn = vtilde(config.poles().back(), h, z);
  return determinant(cleared_matrix(config, z)) * (1.0 - v1) * (1.0 - vn);
}

SecularDeterminant secular_det(const PotentialConfig& config, cplx z) {
  check_overflow_guard(config, z);
  SecularDeterminant out;
  out.raw = determinant(secular_matrix(config, z));
  out.cleared = cleared_det(config, z);
  return out;
}

}  // namespace reslab
