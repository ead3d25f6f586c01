#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qent::detail {

// Row-major strides, last axis fastest.
std::vector<std::size_t> strides_of(std::span<const std::size_t> dims);

std::size_t product_of(std::span<const std::size_t> dims);

// Splits the flat index of a multi-axis tensor into a pair (row, col): `row`
// enumerates the axes flagged in `row_axes`, `col` the remaining ones, both
// row-major in their original axis order.
class AxisSplit {
 public:
  AxisSplit(std::span<const std::size_t> dims, const std::vector<bool>& row_axes);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return row_of_.size(); }

  std::size_t row(std::size_t flat) const { return row_of_[flat]; }
  std::size_t col(std::size_t flat) const { return col_of_[flat]; }
  std::size_t flat(std::size_t row, std::size_t col) const {
    return flat_of_[row * cols_ + col];
  }

 private:
  std::size_t rows_ = 1;
  std::size_t cols_ = 1;
  std::vector<std::size_t> row_of_;
  std::vector<std::size_t> col_of_;
  std::vector<std::size_t> flat_of_;
};

}  // namespace qent::detail
