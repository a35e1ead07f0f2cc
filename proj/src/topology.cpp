#include "d2dsim/topology.hpp"

#include <cmath>
#include <numbers>

#include "d2dsim/rng.hpp"

namespace d2d {

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }
double norm(Point p) { return std::hypot(p.x, p.y); }

double Topology::group_radius(int g) const {
  const auto& rx = receiver_positions.at(static_cast<std::size_t>(g));
  const Point tx = mgtx_positions.at(static_cast<std::size_t>(g));
  double radius = 0.0;
  for (const Point& p : rx) radius = std::max(radius, distance(tx, p));
  return radius;
}

namespace {

Point uniform_in_disc(Rng& rng, Point center, double radius) {
  const double r = radius * std::sqrt(rng.uniform());
  const double theta = 2.0 * std::numbers::pi * rng.uniform();
  return {center.x + r * std::cos(theta), center.y + r * std::sin(theta)};
}

}  // namespace

Topology generate_topology(const ScenarioConfig& config, std::uint64_t seed) {
  config.validate();

  Rng rng(seed);
  Topology topo;
  const double radius = config.cell_radius;

  topo.cu_positions.reserve(static_cast<std::size_t>(config.num_cus));
  for (int k = 0; k < config.num_cus; ++k) {
    topo.cu_positions.push_back(uniform_in_disc(rng, {}, radius));
  }

  topo.mgtx_positions.reserve(static_cast<std::size_t>(config.num_mgs));
  topo.receiver_positions.resize(static_cast<std::size_t>(config.num_mgs));
  for (int g = 0; g < config.num_mgs; ++g) {
    const Point tx = uniform_in_disc(rng, {}, radius);
    topo.mgtx_positions.push_back(tx);
    auto& rx = topo.receiver_positions[static_cast<std::size_t>(g)];
    for (int r = 0; r < config.receivers_of(g); ++r) {
      // Acceptance probability is at least ~0.3 since the MGTX is in-cell and
      // spread < radius, so this terminates quickly.
      Point p = uniform_in_disc(rng, tx, config.geographic_spread);
      while (norm(p) > radius) p = uniform_in_disc(rng, tx, config.geographic_spread);
      rx.push_back(p);
    }
  }
  return topo;
}

}  // namespace d2d
