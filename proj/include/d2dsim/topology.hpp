#pragma once

#include <cstdint>
#include <vector>

#include "d2dsim/config.hpp"

namespace d2d {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double distance(Point a, Point b);
double norm(Point p);

/// Node positions of one cell. The base station sits at the origin.
struct Topology {
  Point bs_position{};
  std::vector<Point> cu_positions;
  std::vector<Point> mgtx_positions;
  std::vector<std::vector<Point>> receiver_positions;  // [group][receiver]

  int num_cus() const { return static_cast<int>(cu_positions.size()); }
  int num_mgs() const { return static_cast<int>(mgtx_positions.size()); }

  /// Distance from group g's transmitter to its farthest receiver.
  double group_radius(int g) const;
};

/// Drops CUs and MGTXs uniformly over the cell disc and each group's
/// receivers uniformly over the disc of radius `geographic_spread` around its
/// transmitter, redrawing receivers that would fall outside the cell.
Topology generate_topology(const ScenarioConfig& config, std::uint64_t seed);

}  // namespace d2d
