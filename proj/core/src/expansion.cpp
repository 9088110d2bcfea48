#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "reslab/error.hpp"
#include "reslab/secular.hpp"

namespace reslab {

namespace {

// A term of the row-scaled determinant is keyed by the base-3 digits of
// (w^{-l} counts per length, Vt degrees per pole):
//   key = w_key * 3^N + v_key.
using Key = std::uint64_t;
using Element = std::unordered_map<Key, std::int64_t>;

constexpr std::array<std::uint64_t, 41> make_pow3() {
  std::array<std::uint64_t, 41> p{};
  p[0] = 1;
  for (std::size_t i = 1; i < p.size(); ++i) {
    // saturate once past 2^64; only the first 24 digits are ever used
    p[i] = p[i - 1] > std::numeric_limits<std::uint64_t>::max() / 3
               ? std::numeric_limits<std::uint64_t>::max()
               : p[i - 1] * 3;
  }
  return p;
}

constexpr auto kPow3 = make_pow3();

struct EntryTerm {
  Key delta;
  std::int64_t coeff;
  int digit;   // base-3 positions the delta increments, -1 if none
  int digit2;
};

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw std::overflow_error("secular expansion coefficient overflow");
  }
  return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw std::overflow_error("secular expansion coefficient overflow");
  }
  return out;
}

int digit_at(Key key, int pos) {
  return static_cast<int>((key / kPow3[static_cast<std::size_t>(pos)]) % 3);
}

void accumulate_product(Element& target, const Element& source,
                        const std::vector<EntryTerm>& entry, std::int64_t sign) {
  for (const auto& [key, coeff] : source) {
    for (const EntryTerm& t : entry) {
      if ((t.digit >= 0 && digit_at(key, t.digit) == 2) ||
          (t.digit2 >= 0 && digit_at(key, t.digit2) == 2)) {
        throw std::logic_error("secular expansion exponent exceeds 2");
      }
      const std::int64_t c = checked_mul(checked_mul(coeff, t.coeff), sign);
      auto [it, inserted] = target.try_emplace(key + t.delta, c);
      if (!inserted) it->second = checked_add(it->second, c);
    }
  }
}

void drop_zeros(Element& e) {
  std::erase_if(e, [](const auto& kv) { return kv.second == 0; });
}

}  // namespace

std::vector<int> decode_monomial(MonomialKey key, std::size_t n_poles) {
  std::vector<int> out(n_poles);
  for (std::size_t j = 0; j < n_poles; ++j) {
    out[j] = static_cast<int>(key % 3);
    key /= 3;
  }
  return out;
}

MonomialKey encode_monomial(const std::vector<int>& degrees) {
  MonomialKey key = 0;
  for (std::size_t j = degrees.size(); j-- > 0;) {
    if (degrees[j] < 0 || degrees[j] > 2) {
      throw std::invalid_argument("monomial degree outside {0,1,2}");
    }
    key = key * 3 + static_cast<MonomialKey>(degrees[j]);
  }
  return key;
}

int total_degree(MonomialKey key, std::size_t n_poles) {
  int d = 0;
  for (std::size_t j = 0; j < n_poles; ++j) {
    d += static_cast<int>(key % 3);
    key /= 3;
  }
  return d;
}

SecularExpansion expand_terms(const PotentialConfig& config) {
  return expand_terms(config.size());
}

SecularExpansion expand_terms(std::size_t n_poles) {
  if (n_poles > kMaxExpansionPoles) {
    throw Error(Errc::TooManyPoles,
                "symbolic expansion supports N <= " +
                    std::to_string(kMaxExpansionPoles),
                n_poles);
  }
  const SecularMatrixSpec spec = secular_matrix_spec(n_poles);
  const std::size_t dim = spec.dim;
  const int n = static_cast<int>(n_poles);

  auto v_digit = [](std::size_t pole) { return static_cast<int>(pole); };
  auto w_digit = [n](std::size_t length) { return n + static_cast<int>(length); };

  // Row-scaled entries: each row multiplied by (1 - Vt_p) of its pole, so
  // T -> 1, R -> Vt_p, -1 -> Vt_p - 1. The w^{-l} factors are kept symbolic.
  std::vector<std::vector<std::pair<std::size_t, std::vector<EntryTerm>>>> rows(dim);
  for (const MatrixEntry& e : spec.entries) {
    std::vector<EntryTerm> poly;
    switch (e.kind) {
      case EntryKind::DiagonalMinusOne: {
        const int dv = v_digit(e.pole);
        poly.push_back({kPow3[static_cast<std::size_t>(dv)], 1, dv, -1});
        poly.push_back({0, -1, -1, -1});
        break;
      }
      case EntryKind::Reflection: {
        const int dv = v_digit(e.pole);
        const int dw = w_digit(e.length);
        poly.push_back({kPow3[static_cast<std::size_t>(dv)] +
                            kPow3[static_cast<std::size_t>(dw)],
                        1, dv, dw});
        break;
      }
      case EntryKind::Transmission: {
        const int dw = w_digit(e.length);
        poly.push_back({kPow3[static_cast<std::size_t>(dw)], 1, dw, -1});
        break;
      }
    }
    rows[e.row].emplace_back(e.col, std::move(poly));
  }

  // Row-by-row Laplace expansion memoised on the set of used columns. The
  // band structure keeps the number of live column sets small.
  std::unordered_map<std::uint32_t, Element> states;
  states[0] = Element{{0, 1}};
  for (std::size_t r = 0; r < dim; ++r) {
    std::unordered_map<std::uint32_t, Element> next;
    const std::uint32_t must_be_used =
        r >= 2 ? ((std::uint32_t{1} << (r - 1)) - 1) : 0;  // cols <= r-2
    for (const auto& [mask, elem] : states) {
      for (const auto& [col, poly] : rows[r]) {
        const std::uint32_t bit = std::uint32_t{1} << col;
        if (mask & bit) continue;
        const std::uint32_t new_mask = mask | bit;
        if ((new_mask & must_be_used) != must_be_used) continue;
        const int inversions = std::popcount(mask >> (col + 1));
        accumulate_product(next[new_mask], elem, poly, (inversions % 2) ? -1 : 1);
      }
    }
    for (auto& [mask, elem] : next) drop_zeros(elem);
    states = std::move(next);
  }

  const std::uint32_t full = (dim >= 32) ? ~std::uint32_t{0}
                                         : ((std::uint32_t{1} << dim) - 1);
  Element det = states.count(full) ? std::move(states[full]) : Element{};

  // Bring the denominators of poles 1 and N (one row each) up to power 2.
  for (std::size_t pole : {std::size_t{0}, n_poles - 1}) {
    const int dv = v_digit(pole);
    const std::vector<EntryTerm> one_minus{
        {0, 1, -1, -1}, {kPow3[static_cast<std::size_t>(dv)], -1, dv, -1}};
    Element next;
    accumulate_product(next, det, one_minus, 1);
    drop_zeros(next);
    det = std::move(next);
  }

  SecularExpansion out;
  out.n_poles = n_poles;
  const Key v_mod = kPow3[n_poles];
  for (const auto& [key, coeff] : det) {
    Key w_key = key / v_mod;
    const MonomialKey mono = key % v_mod;
    std::uint32_t alpha = 0;
    for (std::size_t j = 0; j + 1 < n_poles; ++j) {
      const int d = static_cast<int>(w_key % 3);
      w_key /= 3;
      if (d == 2) {
        alpha |= std::uint32_t{1} << j;
      } else if (d != 0) {
        throw std::logic_error("odd power of w^{-l} in secular determinant");
      }
    }
    out.terms[alpha][mono] = coeff;
  }
  return out;
}

double w_exponent(std::uint32_t alpha, std::span<const double> lengths) {
  double lambda = 0.0;
  for (std::size_t j = 0; j < lengths.size(); ++j) {
    if (!(alpha & (std::uint32_t{1} << j))) lambda += lengths[j];
  }
  return 2.0 * lambda;
}

cplx evaluate_coeff(const CoeffPoly& poly, std::span<const cplx> vt) {
  const std::size_t n = vt.size();
  std::vector<std::array<cplx, 3>> powers(n);
  for (std::size_t j = 0; j < n; ++j) powers[j] = {cplx(1.0), vt[j], vt[j] * vt[j]};
  cplx sum{};
  for (const auto& [mono, coeff] : poly) {
    cplx term(static_cast<double>(coeff), 0.0);
    MonomialKey k = mono;
    for (std::size_t j = 0; j < n; ++j) {
      term *= powers[j][k % 3];
      k /= 3;
    }
    sum += term;
  }
  return sum;
}

cplx evaluate_expansion(const SecularExpansion& expansion,
                        const PotentialConfig& config, cplx z) {
  const std::size_t n = config.size();
  std::vector<cplx> vt(n);
  for (std::size_t j = 0; j < n; ++j) vt[j] = vtilde(config.pole(j), config.h(), z);
  cplx sum{};
  for (const auto& [alpha, poly] : expansion.terms) {
    sum += evaluate_coeff(poly, vt) *
           w_power(w_exponent(alpha, config.lengths()), z, config.h());
  }
  return sum;
}

std::vector<ExponentPoint> exponent_points(const SecularExpansion& expansion,
                                           const PotentialConfig& config) {
  if (expansion.terms.empty()) {
    throw std::invalid_argument("exponent_points: empty expansion");
  }
  const auto betas = config.betas();
  std::vector<ExponentPoint> out;
  for (const auto& [alpha, poly] : expansion.terms) {
    if (poly.empty()) continue;
    double nu = std::numeric_limits<double>::infinity();
    for (const auto& [mono, coeff] : poly) {
      const auto m = decode_monomial(mono, expansion.n_poles);
      double s = 0.0;
      for (std::size_t j = 0; j < m.size(); ++j) s += m[j] * betas[j];
      nu = std::min(nu, s);
    }
    out.push_back({nu, w_exponent(alpha, config.lengths()), alpha});
  }
  return out;
}

}  // namespace reslab
