#include "d2dsim/hungarian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace d2d {

WeightMatrix::WeightMatrix(int channels, int groups, double value)
    : channels_(channels), groups_(groups) {
  if (channels < 0 || groups < 0) throw std::invalid_argument("WeightMatrix: negative size");
  w_.assign(static_cast<std::size_t>(channels) * static_cast<std::size_t>(groups), value);
}

WeightMatrix WeightMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const int c = static_cast<int>(rows.size());
  const int g = rows.empty() ? 0 : static_cast<int>(rows.front().size());
  WeightMatrix m(c, g);
  for (int k = 0; k < c; ++k) {
    if (static_cast<int>(rows[static_cast<std::size_t>(k)].size()) != g) {
      throw std::invalid_argument("WeightMatrix: ragged rows");
    }
    for (int j = 0; j < g; ++j) m(k, j) = rows[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
  }
  return m;
}

std::size_t WeightMatrix::index(int k, int g) const {
  if (k < 0 || k >= channels_ || g < 0 || g >= groups_) {
    throw std::out_of_range("WeightMatrix: index out of range");
  }
  return static_cast<std::size_t>(k) * static_cast<std::size_t>(groups_) +
         static_cast<std::size_t>(g);
}

Matching hungarian_match(const WeightMatrix& weights) {
  const int C = weights.channels();
  const int G = weights.groups();
  for (int k = 0; k < C; ++k) {
    for (int g = 0; g < G; ++g) {
      if (!std::isfinite(weights(k, g))) {
        throw std::invalid_argument("hungarian_match: non-finite weight");
      }
    }
  }
  Matching out;
  out.group_of.assign(static_cast<std::size_t>(C), -1);
  const int n = std::max(C, G);
  if (n == 0) return out;

  // Minimise cost = max_w - w on the square padded matrix; rows are channels,
  // columns are groups, both 1-based inside the solver.
  double max_w = 0.0;
  for (int k = 0; k < C; ++k)
    for (int g = 0; g < G; ++g) max_w = std::max(max_w, weights(k, g));
  auto cost = [&](int row, int col) {
    const double w = (row < C && col < G) ? weights(row, col) : 0.0;
    return max_w - w;
  };

  constexpr double kInf = std::numeric_limits<double>::infinity();
  const auto un = static_cast<std::size_t>(n) + 1;
  std::vector<double> u(un, 0.0), v(un, 0.0);
  std::vector<int> row_of_col(un, 0), way(un, 0);

  for (int i = 1; i <= n; ++i) {
    row_of_col[0] = i;
    int j0 = 0;
    std::vector<double> minv(un, kInf);
    std::vector<char> used(un, 0);
    do {
      used[static_cast<std::size_t>(j0)] = 1;
      const int i0 = row_of_col[static_cast<std::size_t>(j0)];
      double delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        const auto uj = static_cast<std::size_t>(j);
        if (used[uj]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[static_cast<std::size_t>(i0)] - v[uj];
        if (cur < minv[uj]) {
          minv[uj] = cur;
          way[uj] = j0;
        }
        if (minv[uj] < delta) {
          delta = minv[uj];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        const auto uj = static_cast<std::size_t>(j);
        if (used[uj]) {
          u[static_cast<std::size_t>(row_of_col[uj])] += delta;
          v[uj] -= delta;
        } else {
          minv[uj] -= delta;
        }
      }
      j0 = j1;
    } while (row_of_col[static_cast<std::size_t>(j0)] != 0);
    do {
      const int j1 = way[static_cast<std::size_t>(j0)];
      row_of_col[static_cast<std::size_t>(j0)] = row_of_col[static_cast<std::size_t>(j1)];
      j0 = j1;
    } while (j0 != 0);
  }

  for (int j = 1; j <= n; ++j) {
    const int row = row_of_col[static_cast<std::size_t>(j)] - 1;
    const int col = j - 1;
    if (row < C && col < G) {
      out.group_of[static_cast<std::size_t>(row)] = col;
      out.total_weight += weights(row, col);
    }
  }
  return out;
}

}  // namespace d2d
