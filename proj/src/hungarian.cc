#include "clustereval/hungarian.h"

#include <algorithm>
#include <limits>

namespace clustereval {

// Shortest augmenting path formulation with row/column potentials, O(n^3).
template <typename T>
T max_weight_assignment(const WeightMatrix<T>& weights,
                        std::vector<int>* row_to_col) {
  const std::size_t rows = weights.rows();
  const std::size_t cols = weights.cols();
  if (row_to_col) row_to_col->assign(rows, -1);
  if (rows == 0 || cols == 0) return T{};

  const std::size_t n = std::max(rows, cols);
  T max_entry{};
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      max_entry = std::max(max_entry, weights(r, c));
  auto cost = [&](std::size_t r, std::size_t c) -> T {
    const T w = (r < rows && c < cols) ? weights(r, c) : T{};
    return max_entry - w;
  };

  const T inf = std::numeric_limits<T>::max() / 4;
  // 1-based potentials; index 0 is the virtual source column.
  std::vector<T> u(n + 1, T{}), v(n + 1, T{});
  std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
  std::vector<T> minv(n + 1);
  std::vector<char> used(n + 1);

  for (std::size_t i = 1; i <= n; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = match[j0];
      T delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const T cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  // Recompute the total from the matrix so floating-point potentials never
  // leak into the returned value.
  T total{};
  for (std::size_t j = 1; j <= n; ++j) {
    const std::size_t r = match[j] - 1;
    const std::size_t c = j - 1;
    if (r < rows && c < cols) {
      total += weights(r, c);
      if (row_to_col) (*row_to_col)[r] = static_cast<int>(c);
    }
  }
  return total;
}

template std::int64_t max_weight_assignment(const WeightMatrix<std::int64_t>&,
                                            std::vector<int>*);
template double max_weight_assignment(const WeightMatrix<double>&,
                                      std::vector<int>*);

}  // namespace clustereval
