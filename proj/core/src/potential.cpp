#include "reslab/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "reslab/error.hpp"

namespace reslab {

PotentialConfig PotentialConfig::validate(double h, std::vector<Pole> poles) {
  if (poles.size() < 2) {
    throw Error(Errc::TooFewPoles,
                "need at least two poles, got " + std::to_string(poles.size()),
                poles.size());
  }
  if (!std::isfinite(h) || !(h > 0.0) || !(h < 1.0)) {
    throw Error(Errc::BadH, "h must lie in (0, 1), got " + std::to_string(h));
  }
  for (std::size_t j = 0; j < poles.size(); ++j) {
    const Pole& p = poles[j];
    if (!std::isfinite(p.x) || !std::isfinite(p.coupling) ||
        !std::isfinite(p.beta)) {
      throw Error(Errc::NonFinite, "pole fields must be finite", j);
    }
    if (p.coupling == 0.0) {
      throw Error(Errc::ZeroCoupling, "coupling C must be nonzero", j);
    }
    if (!(p.beta > 0.0)) {
      throw Error(Errc::NonpositiveBeta,
                  "beta must be positive, got " + std::to_string(p.beta), j);
    }
  }

  std::vector<std::size_t> order(poles.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return poles[a].x < poles[b].x;
  });
  for (std::size_t k = 1; k < order.size(); ++k) {
    if (!(poles[order[k]].x > poles[order[k - 1]].x)) {
      throw Error(Errc::DuplicatePosition,
                  "two poles share position x = " +
                      std::to_string(poles[order[k]].x),
                  std::max(order[k], order[k - 1]));
    }
  }

  std::vector<Pole> sorted;
  sorted.reserve(poles.size());
  for (std::size_t idx : order) sorted.push_back(poles[idx]);
  return PotentialConfig(h, std::move(sorted));
}

PotentialConfig::PotentialConfig(double h, std::vector<Pole> poles)
    : h_(h), poles_(std::move(poles)), total_length_(0.0) {
  lengths_.reserve(poles_.size() - 1);
  for (std::size_t j = 0; j + 1 < poles_.size(); ++j) {
    lengths_.push_back(poles_[j + 1].x - poles_[j].x);
  }
  total_length_ = poles_.back().x - poles_.front().x;
}

double PotentialConfig::max_length() const noexcept {
  return *std::max_element(lengths_.begin(), lengths_.end());
}

std::vector<double> PotentialConfig::betas() const {
  std::vector<double> out;
  out.reserve(poles_.size());
  for (const Pole& p : poles_) out.push_back(p.beta);
  return out;
}

cplx vtilde(const Pole& pole, double h, cplx z) {
  return pole.coupling * std::pow(h, pole.beta) / (cplx(0.0, 2.0) * z);
}

ScatteringCoefficients scattering_coefficients(const PotentialConfig& config,
                                               cplx z) {
  if (z == cplx(0.0, 0.0)) {
    throw Error(Errc::ZeroSpectralParameter, "z must be nonzero");
  }
  ScatteringCoefficients out;
  out.z = z;
  const std::size_t n = config.size();
  out.vtilde.reserve(n);
  out.transmission.reserve(n);
  out.reflection.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const cplx v = vtilde(config.pole(j), config.h(), z);
    const cplx denom = 1.0 - v;
    if (std::abs(denom) < 1e-300) {
      throw Error(Errc::SingularCoefficient, "1 - Vtilde vanishes", j);
    }
    out.vtilde.push_back(v);
    out.transmission.push_back(1.0 / denom);
    out.reflection.push_back(v / denom);
  }
  return out;
}

cplx w_power(double length, cplx z, double h) {
  // w^L = exp(L * Im z / h) * exp(-i L Re z / h)
  constexpr long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  const long double phase = static_cast<long double>(length) *
                            static_cast<long double>(z.real()) /
                            static_cast<long double>(h);
  const long double reduced = std::fmod(phase, two_pi);
  const double modulus = std::exp(length * z.imag() / h);
  const double angle = -static_cast<double>(reduced);
  return {modulus * std::cos(angle), modulus * std::sin(angle)};
}

}  // namespace reslab
