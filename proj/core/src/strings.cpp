#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "reslab/rootfind.hpp"

namespace reslab {

std::size_t StringReport::nonempty_clusters() const {
  return static_cast<std::size_t>(std::count_if(
      clusters.begin(), clusters.end(), [](const StringCluster& c) { return c.count > 0; }));
}

double effective_gamma(const GammaCandidate& candidate,
                       const SecularExpansion& expansion,
                       const PotentialConfig& config, cplx z) {
  const PolygonEdge& e = candidate.edge;
  const auto from = expansion.terms.find(e.from.alpha);
  const auto to = expansion.terms.find(e.to.alpha);
  const double dlambda = e.from.lambda - e.to.lambda;
  if (from == expansion.terms.end() || to == expansion.terms.end() ||
      e.from.alpha == e.to.alpha || !(dlambda > 0.0)) {
    return candidate.gamma;
  }
  const double h = config.h();
  std::vector<cplx> vt(config.size());
  for (std::size_t j = 0; j < vt.size(); ++j) vt[j] = vtilde(config.pole(j), h, z);
  const double c_from = std::abs(evaluate_coeff(from->second, vt));
  const double c_to = std::abs(evaluate_coeff(to->second, vt));
  if (!(c_from > 0.0) || !(c_to > 0.0)) return candidate.gamma;
  // |c_from| e^{lambda_from Im z / h} = |c_to| e^{lambda_to Im z / h}
  const double im_level = h * std::log(c_to / c_from) / dlambda;
  return gamma_estimate(cplx(z.real(), im_level), h);
}

StringReport classify_strings(ResonanceSet& set,
                              const std::vector<GammaCandidate>& candidates,
                              const PotentialConfig& config,
                              const ClassifyOptions& opts) {
  if (candidates.empty()) throw std::invalid_argument("classify_strings: no candidates");
  if (set.roots.empty()) throw std::invalid_argument("classify_strings: no resonances");

  const double h = config.h();
  std::optional<SecularExpansion> expansion;
  if (config.size() <= kMaxExpansionPoles) expansion = expand_terms(config);

  StringReport report;
  report.gamma_tol = opts.gamma_tol;
  report.clusters.resize(candidates.size());
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    report.clusters[c].gamma = candidates[c].gamma;
  }

  for (std::size_t i = 0; i < set.roots.size(); ++i) {
    Resonance& r = set.roots[i];
    std::size_t best = 0;
    double best_dist = INFINITY;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      const double g = expansion ? effective_gamma(candidates[c], *expansion, config, r.z)
                                 : candidates[c].gamma;
      const double d = std::abs(r.gamma_est - g);
      if (d < best_dist) {
        best_dist = d;
        best = c;
      }
    }
    r.cluster_id = static_cast<int>(best);
    report.assignment.push_back(static_cast<int>(best));
    report.clusters[best].members.push_back(i);
  }

  for (StringCluster& cl : report.clusters) {
    cl.count = cl.members.size();
    if (cl.count == 0) continue;
    double sum_g = 0.0, sum_im = 0.0, lo = INFINITY, hi = -INFINITY;
    for (std::size_t i : cl.members) {
      sum_g += set.roots[i].gamma_est;
      const double im = set.roots[i].z.imag();
      sum_im += im;
      lo = std::min(lo, im);
      hi = std::max(hi, im);
    }
    cl.mean_gamma_est = sum_g / static_cast<double>(cl.count);
    cl.mean_im = sum_im / static_cast<double>(cl.count);
    cl.im_spread = hi - lo;
    cl.flagged = std::abs(cl.mean_gamma_est - cl.gamma) > opts.gamma_tol;
  }

  std::vector<std::size_t> order(set.roots.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return set.roots[a].z.imag() < set.roots[b].z.imag();
  });
  const double gap = opts.level_gap_h * h;
  LevelCluster current;
  auto flush = [&] {
    if (current.members.empty()) return;
    double sum_im = 0.0, sum_g = 0.0, lo = INFINITY, hi = -INFINITY;
    for (std::size_t i : current.members) {
      const double im = set.roots[i].z.imag();
      sum_im += im;
      sum_g += set.roots[i].gamma_est;
      lo = std::min(lo, im);
      hi = std::max(hi, im);
    }
    const double n = static_cast<double>(current.members.size());
    current.mean_im = sum_im / n;
    current.mean_gamma_est = sum_g / n;
    current.im_spread = hi - lo;
    report.levels.push_back(std::move(current));
    current = LevelCluster{};
  };
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k > 0 && set.roots[order[k]].z.imag() - set.roots[order[k - 1]].z.imag() > gap) {
      flush();
    }
    current.members.push_back(order[k]);
  }
  flush();
  return report;
}

}  // namespace reslab
