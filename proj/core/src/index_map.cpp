#include "index_map.hpp"

#include <functional>
#include <numeric>

namespace qent::detail {

std::vector<std::size_t> strides_of(std::span<const std::size_t> dims) {
  std::vector<std::size_t> strides(dims.size(), 1);
  for (std::size_t k = dims.size(); k-- > 1;) strides[k - 1] = strides[k] * dims[k];
  return strides;
}

std::size_t product_of(std::span<const std::size_t> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                         std::multiplies<>());
}

AxisSplit::AxisSplit(std::span<const std::size_t> dims,
                     const std::vector<bool>& row_axes) {
  const std::size_t n = dims.size();
  for (std::size_t k = 0; k < n; ++k) (row_axes[k] ? rows_ : cols_) *= dims[k];

  const std::size_t total = rows_ * cols_;
  row_of_.resize(total);
  col_of_.resize(total);
  flat_of_.resize(total);

  // Odometer over the full index; row/col advance in lockstep.
  std::vector<std::size_t> digit(n, 0);
  std::vector<std::size_t> row_stride(n, 0), col_stride(n, 0);
  {
    std::size_t rs = 1, cs = 1;
    for (std::size_t k = n; k-- > 0;) {
      if (row_axes[k]) {
        row_stride[k] = rs;
        rs *= dims[k];
      } else {
        col_stride[k] = cs;
        cs *= dims[k];
      }
    }
  }
  std::size_t r = 0, c = 0;
  for (std::size_t flat = 0; flat < total; ++flat) {
    row_of_[flat] = r;
    col_of_[flat] = c;
    flat_of_[r * cols_ + c] = flat;
    for (std::size_t k = n; k-- > 0;) {
      if (++digit[k] < dims[k]) {
        r += row_stride[k];
        c += col_stride[k];
        break;
      }
      digit[k] = 0;
      r -= row_stride[k] * (dims[k] - 1);
      c -= col_stride[k] * (dims[k] - 1);
    }
  }
}

}  // namespace qent::detail
