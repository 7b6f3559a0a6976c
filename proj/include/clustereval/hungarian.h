#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace clustereval {

// Dense rows x cols weight matrix, row-major.
template <typename T>
class WeightMatrix {
 public:
  WeightMatrix() = default;
  WeightMatrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

// Maximum-weight one-to-one assignment on a rectangular matrix with
// non-negative weights. The matrix is zero-padded to square and reduced to
// minimization with cost = max_entry - weight. Returns the optimum total;
// `row_to_col[r]` is the chosen column or -1 (rows left on padding columns).
// Pairs of weight zero may appear in `row_to_col`.
template <typename T>
T max_weight_assignment(const WeightMatrix<T>& weights,
                        std::vector<int>* row_to_col = nullptr);

extern template std::int64_t max_weight_assignment(
    const WeightMatrix<std::int64_t>&, std::vector<int>*);
extern template double max_weight_assignment(const WeightMatrix<double>&,
                                             std::vector<int>*);

}  // namespace clustereval
