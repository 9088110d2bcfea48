#include "reslab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

namespace reslab {

std::vector<CMatrix::value_type> CMatrix::apply(std::span<const value_type> x) const {
  std::vector<value_type> out(n_);
  for (std::size_t r = 0; r < n_; ++r) {
    value_type acc{};
    for (std::size_t c = 0; c < n_; ++c) acc += (*this)(r, c) * x[c];
    out[r] = acc;
  }
  return out;
}

double CMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& v : data_) m = std::max(m, std::abs(v));
  return m;
}

LuDecomposition::LuDecomposition(CMatrix a) : lu_(std::move(a)), perm_(lu_.dim()) {
  const std::size_t n = lu_.dim();
  std::iota(perm_.begin(), perm_.end(), std::size_t{0});
  std::complex<double> det(1.0, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(lu_(k, k));
    for (std::size_t r = k + 1; r < n; ++r) {
      const double v = std::abs(lu_(r, k));
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (piv != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(lu_(k, c), lu_(piv, c));
      std::swap(perm_[k], perm_[piv]);
      det = -det;
    }
    const std::complex<double> pivot = lu_(k, k);
    det *= pivot;
    if (pivot == std::complex<double>(0.0, 0.0)) continue;
    for (std::size_t r = k + 1; r < n; ++r) {
      const std::complex<double> f = lu_(r, k) / pivot;
      lu_(r, k) = f;
      if (f == std::complex<double>(0.0, 0.0)) continue;
      for (std::size_t c = k + 1; c < n; ++c) lu_(r, c) -= f * lu_(k, c);
    }
  }
  det_ = det;
}

std::size_t LuDecomposition::smallest_pivot() const noexcept {
  std::size_t best = 0;
  for (std::size_t k = 1; k < lu_.dim(); ++k) {
    if (std::abs(lu_(k, k)) < std::abs(lu_(best, best))) best = k;
  }
  return best;
}

std::vector<std::complex<double>> LuDecomposition::solve(
    std::span<const std::complex<double>> b, double floor) const {
  const std::size_t n = lu_.dim();
  std::vector<std::complex<double>> y(n);
  for (std::size_t r = 0; r < n; ++r) {
    std::complex<double> acc = b[perm_[r]];
    for (std::size_t c = 0; c < r; ++c) acc -= lu_(r, c) * y[c];
    y[r] = acc;
  }
  for (std::size_t r = n; r-- > 0;) {
    std::complex<double> acc = y[r];
    for (std::size_t c = r + 1; c < n; ++c) acc -= lu_(r, c) * y[c];
    std::complex<double> pivot = lu_(r, r);
    if (std::abs(pivot) < floor) {
      pivot = pivot == std::complex<double>(0.0, 0.0)
                  ? std::complex<double>(floor, 0.0)
                  : pivot / std::abs(pivot) * floor;
    }
    y[r] = acc / pivot;
  }
  return y;
}

std::complex<double> determinant(const CMatrix& a) {
  return LuDecomposition(a).determinant();
}

}  // namespace reslab
