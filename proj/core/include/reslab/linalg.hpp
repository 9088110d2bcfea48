#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace reslab {

/// Small dense row-major complex matrix. Dimensions here are 2(N-1), so
/// nothing fancier than a flat vector is warranted.
class CMatrix {
 public:
  using value_type = std::complex<double>;

  CMatrix() = default;
  explicit CMatrix(std::size_t n) : n_(n), data_(n * n) {}

  std::size_t dim() const noexcept { return n_; }
  value_type& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  const value_type& operator()(std::size_t r, std::size_t c) const {
    return data_[r * n_ + c];
  }

  std::vector<value_type> apply(std::span<const value_type> x) const;
  double max_abs() const noexcept;

 private:
  std::size_t n_ = 0;
  std::vector<value_type> data_;
};

/// LU factorisation with partial pivoting, PA = LU (L unit lower).
class LuDecomposition {
 public:
  explicit LuDecomposition(CMatrix a);

  std::complex<double> determinant() const noexcept { return det_; }
  const CMatrix& packed() const noexcept { return lu_; }
  std::span<const std::size_t> permutation() const noexcept { return perm_; }

  /// Index (in U) of the pivot with smallest modulus.
  std::size_t smallest_pivot() const noexcept;
  double pivot_abs(std::size_t k) const { return std::abs(lu_(k, k)); }

  /// Solve A x = b; singular pivots are replaced by `floor` in magnitude.
  std::vector<std::complex<double>> solve(
      std::span<const std::complex<double>> b, double floor = 0.0) const;

 private:
  CMatrix lu_;
  std::vector<std::size_t> perm_;
  std::complex<double> det_;
};

std::complex<double> determinant(const CMatrix& a);

}  // namespace reslab
