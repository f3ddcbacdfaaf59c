#pragma once

#include <cstddef>
#include <vector>

namespace seqtag {

// Dense row-major 2-d table.
template <typename T>
class Grid2 {
 public:
  Grid2() = default;
  Grid2(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::vector<T>& data() const { return data_; }
  std::vector<T>& data() { return data_; }

  T row_sum(std::size_t i) const {
    T s{};
    for (std::size_t j = 0; j < cols_; ++j) s += data_[i * cols_ + j];
    return s;
  }

  bool operator==(const Grid2&) const = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

// Dense row-major 3-d table; the last axis is the fastest-varying.
template <typename T>
class Grid3 {
 public:
  Grid3() = default;
  Grid3(std::size_t d0, std::size_t d1, std::size_t d2, T fill = T{})
      : d0_(d0), d1_(d1), d2_(d2), data_(d0 * d1 * d2, fill) {}

  T& operator()(std::size_t i, std::size_t j, std::size_t k) {
    return data_[(i * d1_ + j) * d2_ + k];
  }
  const T& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[(i * d1_ + j) * d2_ + k];
  }

  std::size_t dim0() const { return d0_; }
  std::size_t dim1() const { return d1_; }
  std::size_t dim2() const { return d2_; }
  const std::vector<T>& data() const { return data_; }
  std::vector<T>& data() { return data_; }

  T row_sum(std::size_t i, std::size_t j) const {
    T s{};
    for (std::size_t k = 0; k < d2_; ++k) s += data_[(i * d1_ + j) * d2_ + k];
    return s;
  }

  bool operator==(const Grid3&) const = default;

 private:
  std::size_t d0_ = 0, d1_ = 0, d2_ = 0;
  std::vector<T> data_;
};

}  // namespace seqtag
