#pragma once

#include <cstdint>
#include <vector>

#include "d2dsim/config.hpp"
#include "d2dsim/topology.hpp"

namespace d2d {

/// Linear power gains of every link that matters on every uplink channel.
///
/// Channel k is owned by CU k, so CU links are only stored on their own
/// channel. MGTX links are stored for every channel. `mg_rx(j, g, r, k)` with
/// j == g is group g's own link to its receiver r.
class GainTable {
 public:
  GainTable() = default;
  /// All-zero table, convenient for hand-set instances.
  GainTable(int num_channels, std::vector<int> receivers_per_group);

  int num_channels() const { return num_channels_; }
  int num_groups() const { return static_cast<int>(receivers_.size()); }
  int receivers(int g) const { return receivers_[static_cast<std::size_t>(g)]; }

  double cu_bs(int k) const { return cu_bs_[idx_cu(k)]; }
  double mg_bs(int g, int k) const { return mg_bs_[idx_mg_bs(g, k)]; }
  double mg_rx(int j, int g, int r, int k) const { return mg_rx_[idx_mg_rx(j, g, r, k)]; }
  double own(int g, int r, int k) const { return mg_rx(g, g, r, k); }
  double cu_rx(int k, int g, int r) const { return cu_rx_[idx_cu_rx(k, g, r)]; }

  double& cu_bs(int k) { return cu_bs_[idx_cu(k)]; }
  double& mg_bs(int g, int k) { return mg_bs_[idx_mg_bs(g, k)]; }
  double& mg_rx(int j, int g, int r, int k) { return mg_rx_[idx_mg_rx(j, g, r, k)]; }
  double& own(int g, int r, int k) { return mg_rx(g, g, r, k); }
  double& cu_rx(int k, int g, int r) { return cu_rx_[idx_cu_rx(k, g, r)]; }

  /// Sets every gain on every channel to `value`.
  void fill(double value);

  bool operator==(const GainTable&) const = default;

 private:
  std::size_t idx_cu(int k) const;
  std::size_t idx_mg_bs(int g, int k) const;
  std::size_t idx_rx(int g, int r) const;
  std::size_t idx_mg_rx(int j, int g, int r, int k) const;
  std::size_t idx_cu_rx(int k, int g, int r) const;

  int num_channels_ = 0;
  std::vector<int> receivers_;
  std::vector<std::size_t> rx_offset_;
  std::size_t total_rx_ = 0;

  std::vector<double> cu_bs_;
  std::vector<double> mg_bs_;
  std::vector<double> mg_rx_;
  std::vector<double> cu_rx_;
};

/// Raw random terms behind a GainTable: one shadowing draw (dB) per link and
/// one unit-mean exponential fading draw per link per channel. Indexed the
/// same way as the corresponding GainTable family.
struct LinkDraws {
  std::vector<double> cu_bs_shadow, cu_bs_fading;  // [k]
  std::vector<double> mg_bs_shadow;                // [g]
  std::vector<double> mg_bs_fading;                // [g][k]
  std::vector<double> mg_rx_shadow;                // [j][rx]
  std::vector<double> mg_rx_fading;                // [j][rx][k]
  std::vector<double> cu_rx_shadow, cu_rx_fading;  // [k][rx]
};

/// Log-distance pathloss, shadowing and fading in linear scale:
/// 10^((-kappa - 10 alpha log10 d - shadow_db) / 10) * fading, d clamped to
/// `min_distance`.
double link_gain(double d, double kappa_db, double alpha, double shadow_db, double fading,
                 double min_distance);

LinkDraws sample_link_draws(const Topology& topology, const ScenarioConfig& config,
                            std::uint64_t seed);
GainTable compose_gains(const Topology& topology, const ScenarioConfig& config,
                        const LinkDraws& draws);

/// sample_link_draws followed by compose_gains.
GainTable sample_gains(const Topology& topology, const ScenarioConfig& config,
                       std::uint64_t seed);

}  // namespace d2d
