#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "reslab/linalg.hpp"
#include "reslab/rootfind.hpp"

namespace reslab {

namespace {

constexpr double kSingularRatio = 1e-4;
constexpr std::uint64_t kSeed = 0x5eed5eedULL;

// e^{i a z / h}
cplx eiz(double a, cplx z, double h) { return w_power(-a, z, h); }

double norm2(std::span<const cplx> v) {
  double s = 0.0;
  for (const cplx& x : v) s += std::norm(x);
  return std::sqrt(s);
}

void normalise_max(std::vector<cplx>& y) {
  std::size_t arg = 0;
  for (std::size_t i = 1; i < y.size(); ++i) {
    if (std::abs(y[i]) > std::abs(y[arg])) arg = i;
  }
  const cplx pivot = y[arg];
  for (cplx& v : y) v /= pivot;
}

}  // namespace

ResonantState resonant_state(const PotentialConfig& config, cplx z) {
  const CMatrix m = secular_matrix(config, z);
  const LuDecomposition lu(m);
  const double scale = m.max_abs();
  const double ratio = lu.pivot_abs(lu.smallest_pivot()) / scale;
  if (ratio > kSingularRatio) {
    throw Error(Errc::NotNearSingular,
                "smallest pivot ratio " + std::to_string(ratio) + " at z is not singular");
  }

  // Inverse iteration from a fixed pseudo-random start.
  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<cplx> y(m.dim());
  for (cplx& v : y) v = cplx(dist(rng), dist(rng));
  const double floor = std::numeric_limits<double>::epsilon() * scale;
  for (int step = 0; step < 2; ++step) {
    y = lu.solve(y, floor);
    normalise_max(y);
  }

  ResonantState s;
  s.z = z;
  s.h = config.h();
  s.y = y;
  s.pivot_ratio = ratio;
  s.null_residual = norm2(m.apply(y)) / norm2(y);

  const std::size_t n = config.size();
  const double h = config.h();
  const auto lengths = config.lengths();
  const auto coeffs = scattering_coefficients(config, z);
  for (const Pole& p : config.poles()) s.positions.push_back(p.x);

  // 1-based interval index j = 0..N as in the amplitudes y_j^{+/-}.
  s.y_plus_all.assign(n + 1, cplx{});
  s.y_minus_all.assign(n + 1, cplx{});
  for (std::size_t j = 1; j <= n - 1; ++j) {
    s.y_minus_all[j] = y[minus_index(j - 1)];
    s.y_plus_all[j] = y[plus_index(j - 1)];
  }
  s.y0_minus = coeffs.transmission[0] * eiz(lengths[0], z, h) * s.y_minus_all[1];
  s.yN_plus = coeffs.transmission[n - 1] * eiz(lengths[n - 2], z, h) * s.y_plus_all[n - 1];
  s.y_minus_all[0] = s.y0_minus;
  s.y_plus_all[n] = s.yN_plus;

  // y_j^+ = v_j^+ e^{i x_j z/h}, y_j^- = v_j^- e^{-i x_{j+1} z/h}
  s.v_plus.assign(n + 1, cplx{});
  s.v_minus.assign(n + 1, cplx{});
  for (std::size_t j = 1; j <= n; ++j) {
    s.v_plus[j] = s.y_plus_all[j] * eiz(-s.positions[j - 1], z, h);
  }
  for (std::size_t j = 0; j + 1 <= n; ++j) {
    s.v_minus[j] = s.y_minus_all[j] * eiz(s.positions[j], z, h);
  }
  return s;
}

namespace {

// Interval containing x (right-hand one at a pole) and the two local waves.
std::pair<cplx, cplx> local_waves(const ResonantState& s, double x) {
  const std::size_t n = s.positions.size();
  const std::size_t j = static_cast<std::size_t>(
      std::upper_bound(s.positions.begin(), s.positions.end(), x) - s.positions.begin());
  cplx plus{}, minus{};
  if (j >= 1) plus = s.y_plus_all[j] * eiz(x - s.positions[j - 1], s.z, s.h);
  if (j <= n - 1) minus = s.y_minus_all[j] * eiz(-(x - s.positions[j]), s.z, s.h);
  return {plus, minus};
}

}  // namespace

cplx ResonantState::u(double x) const {
  const auto [plus, minus] = local_waves(*this, x);
  return plus + minus;
}

cplx ResonantState::du(double x) const {
  const auto [plus, minus] = local_waves(*this, x);
  return cplx(0.0, 1.0) * z / h * (plus - minus);
}

}  // namespace reslab
