#include "ctrlsel/int_matrix.hpp"

#include <cassert>
#include <utility>

namespace ctrlsel {

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

IntMatrix IntMatrix::submatrix(std::span<const std::size_t> row_ids,
                               std::span<const std::size_t> col_ids) const {
  IntMatrix s(row_ids.size(), col_ids.size());
  for (std::size_t i = 0; i < row_ids.size(); ++i) {
    for (std::size_t j = 0; j < col_ids.size(); ++j) s(i, j) = (*this)(row_ids[i], col_ids[j]);
  }
  return s;
}

void IntMatrix::append_rows(const IntMatrix& other) {
  assert(other.cols_ == cols_ || rows_ == 0);
  if (rows_ == 0) cols_ = other.cols_;
  data_.insert(data_.end(), other.data_.begin(), other.data_.end());
  rows_ += other.rows_;
}

std::int64_t bareiss_determinant(IntMatrix m) {
  const std::size_t n = m.rows();
  assert(n == m.cols());
  if (n == 0) return 1;
  std::int64_t sign = 1;
  std::int64_t prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m(swap_row, k) == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(swap_row, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      }
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

}  // namespace ctrlsel
