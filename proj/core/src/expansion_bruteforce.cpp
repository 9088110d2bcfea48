#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

#include "reslab/error.hpp"
#include "reslab/secular.hpp"

namespace reslab {

namespace {

struct Key {
  std::vector<int> w_counts;  // number of w^{-l} factors per length
  std::vector<int> v_degree;  // Vt degree per pole
  auto operator<=>(const Key&) const = default;
};

long binomial(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

SecularExpansion expand_terms_bruteforce(const PotentialConfig& config) {
  return expand_terms_bruteforce(config.size());
}

SecularExpansion expand_terms_bruteforce(std::size_t n_poles) {
  if (n_poles > 4) {
    throw Error(Errc::TooManyPoles, "brute-force expansion supports N <= 4", n_poles);
  }
  const SecularMatrixSpec spec = secular_matrix_spec(n_poles);
  const std::size_t dim = spec.dim;
  const std::size_t n_len = n_poles - 1;

  std::vector<std::vector<const MatrixEntry*>> grid(dim,
                                                    std::vector<const MatrixEntry*>(dim));
  for (const MatrixEntry& e : spec.entries) grid[e.row][e.col] = &e;

  std::map<Key, std::int64_t> acc;
  std::vector<std::size_t> perm(dim);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  do {
    bool nonzero = true;
    for (std::size_t r = 0; r < dim && nonzero; ++r) nonzero = grid[r][perm[r]] != nullptr;
    if (!nonzero) continue;

    int inversions = 0;
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = i + 1; j < dim; ++j) inversions += perm[i] > perm[j];
    }
    std::int64_t sign = (inversions % 2) ? -1 : 1;

    // Product of R_p = Vt_p / (1 - Vt_p), T_p = 1 / (1 - Vt_p), -1.
    std::vector<int> reflections(n_poles, 0), denominators(n_poles, 0);
    Key base{std::vector<int>(n_len, 0), std::vector<int>(n_poles, 0)};
    for (std::size_t r = 0; r < dim; ++r) {
      const MatrixEntry& e = *grid[r][perm[r]];
      switch (e.kind) {
        case EntryKind::DiagonalMinusOne:
          sign = -sign;
          break;
        case EntryKind::Reflection:
          ++base.v_degree[e.pole];
          ++denominators[e.pole];
          ++base.w_counts[e.length];
          break;
        case EntryKind::Transmission:
          ++denominators[e.pole];
          ++base.w_counts[e.length];
          break;
      }
    }

    // Clear: multiply by prod (1 - Vt_p)^2, i.e. (1 - Vt_p)^{2 - k_p} here.
    std::map<std::vector<int>, std::int64_t> poly{{base.v_degree, sign}};
    for (std::size_t p = 0; p < n_poles; ++p) {
      const int e = 2 - denominators[p];
      if (e < 0) throw std::logic_error("pole occurs in more than two rows");
      std::map<std::vector<int>, std::int64_t> next;
      for (const auto& [deg, c] : poly) {
        for (int k = 0; k <= e; ++k) {
          auto d = deg;
          d[p] += k;
          next[d] += c * binomial(e, k) * ((k % 2) ? -1 : 1);
        }
      }
      poly = std::move(next);
    }
    for (const auto& [deg, c] : poly) {
      Key key{base.w_counts, deg};
      acc[key] += c;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  SecularExpansion out;
  out.n_poles = n_poles;
  for (const auto& [key, c] : acc) {
    if (c == 0) continue;
    std::uint32_t alpha = 0;
    for (std::size_t l = 0; l < n_len; ++l) {
      // w^{2|l|} * w^{-c_l l_l}: exponent (2 - c_l) l_l must be 0 or 2 l_l
      if (key.w_counts[l] == 2) {
        alpha |= std::uint32_t{1} << l;
      } else if (key.w_counts[l] != 0) {
        throw std::logic_error("odd w power survives in brute-force expansion");
      }
    }
    for (int d : key.v_degree) {
      if (d > 2) throw std::logic_error("Vt degree above 2 in brute-force expansion");
    }
    out.terms[alpha][encode_monomial(key.v_degree)] = c;
  }
  return out;
}

}  // namespace reslab
