#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <utility>
#include <vector>

#include "transclab/error.hpp"

namespace transclab::algebra {

/// Pivot preference: larger |numerator| first, then smaller denominator.
inline bool better_pivot(const mpq_class& candidate, const mpq_class& incumbent) {
  int c = mpz_cmpabs(candidate.get_num_mpz_t(), incumbent.get_num_mpz_t());
  if (c != 0) return c > 0;
  return mpz_cmp(candidate.get_den_mpz_t(), incumbent.get_den_mpz_t()) < 0;
}

/// Dense rectangular matrix over Q. No rounding happens anywhere in this type.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  mpq_class& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const mpq_class& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  /// Exact rank by Gaussian elimination over Q with the largest-numerator pivot rule.
  std::size_t rank() const {
    RationalMatrix m = *this;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols_ && rank < rows_; ++c) {
      std::size_t pivot = rows_;
      for (std::size_t r = rank; r < rows_; ++r) {
        if (m(r, c) == 0) continue;
        if (pivot == rows_ || better_pivot(m(r, c), m(pivot, c))) pivot = r;
      }
      if (pivot == rows_) continue;
      m.swap_rows(pivot, rank);
      for (std::size_t r = rank + 1; r < rows_; ++r) {
        if (m(r, c) == 0) continue;
        mpq_class f = m(r, c) / m(rank, c);
        for (std::size_t k = c; k < cols_; ++k) m(r, k) -= f * m(rank, k);
      }
      ++rank;
    }
    return rank;
  }

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t k = 0; k < cols_; ++k) std::swap((*this)(a, k), (*this)(b, k));
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<mpq_class> data_;
};

}  // namespace transclab::algebra
