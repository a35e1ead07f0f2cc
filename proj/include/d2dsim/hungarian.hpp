#pragma once

#include <vector>

namespace d2d {

/// Dense channel-by-group weight matrix, w(k, g) in bits/s.
class WeightMatrix {
 public:
  WeightMatrix() = default;
  WeightMatrix(int channels, int groups, double value = 0.0);
  static WeightMatrix from_rows(const std::vector<std::vector<double>>& rows);

  int channels() const { return channels_; }
  int groups() const { return groups_; }
  double operator()(int k, int g) const { return w_[index(k, g)]; }
  double& operator()(int k, int g) { return w_[index(k, g)]; }

 private:
  std::size_t index(int k, int g) const;
  int channels_ = 0;
  int groups_ = 0;
  std::vector<double> w_;
};

struct Matching {
  /// group_of[k] is the group matched to channel k, or -1.
  std::vector<int> group_of;
  double total_weight = 0.0;
};

/// Maximum-weight matching of groups to distinct channels (Kuhn–Munkres with
/// potentials, O(n^3) for n = max(C, G)). Missing rows or columns are padded
/// with zero-weight dummies, so with G > C the best C groups are selected.
/// Throws std::invalid_argument on non-finite weights.
Matching hungarian_match(const WeightMatrix& weights);

}  // namespace d2d
