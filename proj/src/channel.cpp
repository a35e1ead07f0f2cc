#include "d2dsim/channel.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

#include "d2dsim/rng.hpp"

namespace d2d {

GainTable::GainTable(int num_channels, std::vector<int> receivers_per_group)
    : num_channels_(num_channels), receivers_(std::move(receivers_per_group)) {
  if (num_channels_ < 1) throw std::invalid_argument("GainTable: need at least one channel");
  rx_offset_.reserve(receivers_.size());
  for (int n : receivers_) {
    if (n < 1) throw std::invalid_argument("GainTable: every group needs a receiver");
    rx_offset_.push_back(total_rx_);
    total_rx_ += static_cast<std::size_t>(n);
  }
  const auto c = static_cast<std::size_t>(num_channels_);
  const auto g = receivers_.size();
  cu_bs_.assign(c, 0.0);
  mg_bs_.assign(g * c, 0.0);
  mg_rx_.assign(g * total_rx_ * c, 0.0);
  cu_rx_.assign(c * total_rx_, 0.0);
}

void GainTable::fill(double value) {
  for (auto* v : {&cu_bs_, &mg_bs_, &mg_rx_, &cu_rx_}) v->assign(v->size(), value);
}

std::size_t GainTable::idx_cu(int k) const {
  assert(k >= 0 && k < num_channels_);
  return static_cast<std::size_t>(k);
}

std::size_t GainTable::idx_mg_bs(int g, int k) const {
  assert(g >= 0 && g < num_groups());
  return static_cast<std::size_t>(g) * static_cast<std::size_t>(num_channels_) + idx_cu(k);
}

std::size_t GainTable::idx_rx(int g, int r) const {
  assert(g >= 0 && g < num_groups() && r >= 0 && r < receivers(g));
  return rx_offset_[static_cast<std::size_t>(g)] + static_cast<std::size_t>(r);
}

std::size_t GainTable::idx_mg_rx(int j, int g, int r, int k) const {
  assert(j >= 0 && j < num_groups());
  return (static_cast<std::size_t>(j) * total_rx_ + idx_rx(g, r)) *
             static_cast<std::size_t>(num_channels_) +
         idx_cu(k);
}

std::size_t GainTable::idx_cu_rx(int k, int g, int r) const {
  return idx_cu(k) * total_rx_ + idx_rx(g, r);
}

double link_gain(double d, double kappa_db, double alpha, double shadow_db, double fading,
                 double min_distance) {
  const double dist = std::max(d, min_distance);
  const double db = -kappa_db - 10.0 * alpha * std::log10(dist) - shadow_db;
  return std::pow(10.0, db / 10.0) * fading;
}

namespace {

std::vector<int> receivers_of(const Topology& topology) {
  std::vector<int> out;
  out.reserve(topology.receiver_positions.size());
  for (const auto& rx : topology.receiver_positions) out.push_back(static_cast<int>(rx.size()));
  return out;
}

void check_consistent(const Topology& topology, const ScenarioConfig& config) {
  if (topology.num_cus() != config.num_cus || topology.num_mgs() != config.num_mgs) {
    throw std::invalid_argument("topology does not match config dimensions");
  }
  for (int g = 0; g < topology.num_mgs(); ++g) {
    if (topology.receiver_positions[static_cast<std::size_t>(g)].empty()) {
      throw std::invalid_argument("group without receivers");
    }
  }
}

}  // namespace

LinkDraws sample_link_draws(const Topology& topology, const ScenarioConfig& config,
                            std::uint64_t seed) {
  check_consistent(topology, config);
  Rng rng(seed);
  const double sigma = config.shadowing_std;
  const auto c = static_cast<std::size_t>(topology.num_cus());
  const auto g = static_cast<std::size_t>(topology.num_mgs());
  std::size_t total_rx = 0;
  for (const auto& rx : topology.receiver_positions) total_rx += rx.size();

  auto fill = [&](std::vector<double>& v, std::size_t n, bool shadow) {
    v.resize(n);
    for (auto& x : v) x = shadow ? sigma * rng.normal() : rng.exponential();
  };

  // Fixed family order; the draw sequence is part of the reproducibility
  // contract (bump Rng::kVersion on change).
  LinkDraws d;
  fill(d.cu_bs_shadow, c, true);
  fill(d.cu_bs_fading, c, false);
  fill(d.mg_bs_shadow, g, true);
  fill(d.mg_bs_fading, g * c, false);
  fill(d.mg_rx_shadow, g * total_rx, true);
  fill(d.mg_rx_fading, g * total_rx * c, false);
  fill(d.cu_rx_shadow, c * total_rx, true);
  fill(d.cu_rx_fading, c * total_rx, false);
  return d;
}

GainTable compose_gains(const Topology& topology, const ScenarioConfig& config,
                        const LinkDraws& draws) {
  check_consistent(topology, config);
  const int C = topology.num_cus();
  const int G = topology.num_mgs();
  GainTable table(C, receivers_of(topology));
  const double kappa = config.pathloss_constant;
  const double alpha = config.pathloss_exponent;
  const double dmin = config.min_link_distance;
  const auto uc = static_cast<std::size_t>(C);

  std::size_t total_rx = 0;
  for (int g = 0; g < G; ++g) total_rx += static_cast<std::size_t>(table.receivers(g));

  for (int k = 0; k < C; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    const double d = distance(topology.cu_positions[uk], topology.bs_position);
    table.cu_bs(k) = link_gain(d, kappa, alpha, draws.cu_bs_shadow.at(uk),
                               draws.cu_bs_fading.at(uk), dmin);
  }
  for (int g = 0; g < G; ++g) {
    const auto ug = static_cast<std::size_t>(g);
    const double d = distance(topology.mgtx_positions[ug], topology.bs_position);
    for (int k = 0; k < C; ++k) {
      table.mg_bs(g, k) = link_gain(d, kappa, alpha, draws.mg_bs_shadow.at(ug),
                                    draws.mg_bs_fading.at(ug * uc + static_cast<std::size_t>(k)),
                                    dmin);
    }
  }
  for (int j = 0; j < G; ++j) {
    const Point tx = topology.mgtx_positions[static_cast<std::size_t>(j)];
    std::size_t rx_index = 0;
    for (int g = 0; g < G; ++g) {
      for (int r = 0; r < table.receivers(g); ++r, ++rx_index) {
        const Point p = topology.receiver_positions[static_cast<std::size_t>(g)]
                                                   [static_cast<std::size_t>(r)];
        const double d = distance(tx, p);
        const std::size_t link = static_cast<std::size_t>(j) * total_rx + rx_index;
        for (int k = 0; k < C; ++k) {
          table.mg_rx(j, g, r, k) =
              link_gain(d, kappa, alpha, draws.mg_rx_shadow.at(link),
                        draws.mg_rx_fading.at(link * uc + static_cast<std::size_t>(k)), dmin);
        }
      }
    }
  }
  for (int k = 0; k < C; ++k) {
    const Point tx = topology.cu_positions[static_cast<std::size_t>(k)];
    std::size_t rx_index = 0;
    for (int g = 0; g < G; ++g) {
      for (int r = 0; r < table.receivers(g); ++r, ++rx_index) {
        const Point p = topology.receiver_positions[static_cast<std::size_t>(g)]
                                                   [static_cast<std::size_t>(r)];
        const std::size_t link = static_cast<std::size_t>(k) * total_rx + rx_index;
        table.cu_rx(k, g, r) = link_gain(distance(tx, p), kappa, alpha,
                                         draws.cu_rx_shadow.at(link),
                                         draws.cu_rx_fading.at(link), dmin);
      }
    }
  }
  return table;
}

GainTable sample_gains(const Topology& topology, const ScenarioConfig& config,
                       std::uint64_t seed) {
  return compose_gains(topology, config, sample_link_draws(topology, config, seed));
}

}  // namespace d2d
