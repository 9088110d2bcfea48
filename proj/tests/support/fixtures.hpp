#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "reslab/potential.hpp"
#include "reslab/rootfind.hpp"

namespace reslab::testing {

inline PotentialConfig make_config(double h, std::vector<double> x, std::vector<double> beta,
                                   std::vector<double> c = {}) {
  std::vector<Pole> poles;
  for (std::size_t j = 0; j < x.size(); ++j) {
    poles.push_back({x[j], c.empty() ? 1.0 : c[j], beta[j]});
  }
  return PotentialConfig::validate(h, std::move(poles));
}

inline PotentialConfig two_delta(double h = 1e-6, double c2 = 1.0) {
  return make_config(h, {-10.0, 5.0 * std::numbers::sqrt2}, {1.0, 0.5}, {1.0, c2});
}

inline PotentialConfig three_delta_case2(double h = 1e-6) {
  return make_config(h, {-5.0, 0.0, 3.0 * std::numbers::sqrt2}, {0.9, 0.1, 1.0});
}

inline PotentialConfig three_delta_case1(double h = 1e-6) {
  return make_config(h, {-5.0, 0.0, 3.0 * std::numbers::sqrt2}, {1.0, 1.0, 1.0});
}

inline PotentialConfig five_delta(double h = 1e-6) {
  return make_config(h, {-5.0, -std::numbers::sqrt2, 0.0, 2.0 * std::numbers::sqrt2, 7.0},
                     {1.0, 0.6, 0.1, 0.6, 1.0});
}

inline PotentialConfig six_delta(double h = 1e-6) {
  return make_config(h,
                     {-7.0, -2.0 * std::numbers::sqrt2, -std::numbers::pi / 4.0,
                      std::numbers::sqrt2, std::numbers::e, 5.0},
                     {1.0, 0.1, 0.5, 0.2, 0.5, 1.0});
}

/// Random admissible config: lengths in [lmin, lmax], beta in [bmin, bmax],
/// couplings of random sign and magnitude in [0.5, 2].
inline PotentialConfig random_config(std::mt19937_64& rng, std::size_t n, double h,
                                     double lmin = 1.0, double lmax = 10.0,
                                     double bmin = 0.1, double bmax = 1.5) {
  std::uniform_real_distribution<double> len(lmin, lmax);
  std::uniform_real_distribution<double> beta(bmin, bmax);
  std::uniform_real_distribution<double> mag(0.5, 2.0);
  std::bernoulli_distribution sign(0.5);
  std::vector<Pole> poles;
  double x = -len(rng);
  for (std::size_t j = 0; j < n; ++j) {
    poles.push_back({x, sign(rng) ? mag(rng) : -mag(rng), beta(rng)});
    x += len(rng);
  }
  return PotentialConfig::validate(h, std::move(poles));
}

inline cplx random_z(std::mt19937_64& rng, double h, double depth_h = 3.0) {
  std::uniform_real_distribution<double> re(0.5, 2.0);
  std::uniform_real_distribution<double> im(-depth_h * h, 0.0);
  return {re(rng), im(rng)};
}

inline double rel_err(cplx a, cplx b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

}  // namespace reslab::testing
