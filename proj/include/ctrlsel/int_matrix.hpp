#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ctrlsel {

/// Small dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::int64_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::int64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const std::int64_t> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  IntMatrix transposed() const;
  IntMatrix submatrix(std::span<const std::size_t> row_ids, std::span<const std::size_t> col_ids) const;
  /// Appends the rows of `other`; column counts must agree.
  void append_rows(const IntMatrix& other);

  bool operator==(const IntMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

/// Exact determinant by fraction-free (Bareiss) elimination. Entries must be
/// small enough that k x k minors fit in 64 bits, which holds for {0,+-1}
/// matrices up to well beyond the sizes used here.
std::int64_t bareiss_determinant(IntMatrix m);

}  // namespace ctrlsel
