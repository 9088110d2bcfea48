#include <algorithm>
#include <cmath>

#include "reslab/secular.hpp"

namespace reslab {

TermScale::TermScale(const SecularExpansion& expansion,
                     const PotentialConfig& config)
    : h_(config.h()) {
  const std::size_t n = expansion.n_poles;
  std::vector<double> base(n);  // |Vt_j| * |z|
  for (std::size_t j = 0; j < n; ++j) {
    const Pole& p = config.pole(j);
    base[j] = std::abs(p.coupling) * std::pow(config.h(), p.beta) / 2.0;
  }
  for (const auto& [alpha, poly] : expansion.terms) {
    Group g;
    g.lambda = w_exponent(alpha, config.lengths());
    g.by_degree.assign(2 * n + 1, 0.0);
    for (const auto& [mono, coeff] : poly) {
      const auto m = decode_monomial(mono, n);
      double mag = std::abs(static_cast<double>(coeff));
      int degree = 0;
      for (std::size_t j = 0; j < n; ++j) {
        mag *= std::pow(base[j], m[j]);
        degree += m[j];
      }
      auto& slot = g.by_degree[static_cast<std::size_t>(degree)];
      slot = std::max(slot, mag);
    }
    groups_.push_back(std::move(g));
  }
}

double TermScale::max_term(cplx z) const {
  const double inv_abs_z = 1.0 / std::abs(z);
  double best = 0.0;
  for (const Group& g : groups_) {
    const double w_mag = std::exp(g.lambda * z.imag() / h_);
    double t = 1.0;
    double coeff_max = 0.0;
    for (double c : g.by_degree) {
      coeff_max = std::max(coeff_max, c * t);
      t *= inv_abs_z;
    }
    best = std::max(best, coeff_max * w_mag);
  }
  return best;
}

}  // namespace reslab
