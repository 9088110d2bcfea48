#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace reslab {

using cplx = std::complex<double>;

/// One delta pole: V_j = coupling * h^(1 + beta) placed at x.
struct Pole {
  double x = 0.0;
  double coupling = 1.0;
  double beta = 1.0;

  bool operator==(const Pole&) const = default;
};

/// Validated delta-potential configuration. Poles are stored sorted by
/// position; the only way to obtain one is through validate().
class PotentialConfig {
 public:
  /// Sorts the poles and checks every invariant. Error indices refer to the
  /// caller's (unsorted) order.
  static PotentialConfig validate(double h, std::vector<Pole> poles);

  double h() const noexcept { return h_; }
  std::size_t size() const noexcept { return poles_.size(); }
  std::span<const Pole> poles() const noexcept { return poles_; }
  const Pole& pole(std::size_t j) const { return poles_.at(j); }

  /// l_j = x_{j+1} - x_j, j = 0 .. N-2.
  std::span<const double> lengths() const noexcept { return lengths_; }
  /// |l| = x_N - x_1.
  double total_length() const noexcept { return total_length_; }
  double max_length() const noexcept;

  std::vector<double> betas() const;

  bool operator==(const PotentialConfig&) const = default;

 private:
  PotentialConfig(double h, std::vector<Pole> poles);

  double h_;
  std::vector<Pole> poles_;
  std::vector<double> lengths_;
  double total_length_;
};

struct ScatteringCoefficients {
  cplx z;
  std::vector<cplx> vtilde;
  std::vector<cplx> transmission;
  std::vector<cplx> reflection;
};

/// Vtilde_j = C_j h^beta_j / (2 i z). No admissibility checks.
cplx vtilde(const Pole& pole, double h, cplx z);

/// Vtilde, T = 1/(1 - Vtilde), R = Vtilde/(1 - Vtilde) for every pole.
/// Throws ZeroSpectralParameter for z == 0 and SingularCoefficient(j) when
/// |1 - Vtilde_j| < 1e-300.
ScatteringCoefficients scattering_coefficients(const PotentialConfig& config,
                                               cplx z);

/// w^length with w = exp(-i z / h), i.e. exp(-i * length * z / h).
/// The phase is reduced in extended precision so that large length*z/h
/// arguments keep their absolute accuracy.
cplx w_power(double length, cplx z, double h);

}  // namespace reslab
