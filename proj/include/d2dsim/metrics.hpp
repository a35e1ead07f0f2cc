#pragma once

#include <vector>

#include "d2dsim/channel.hpp"

namespace d2d {

/// Which channel, if any, each multicast group shares. A group sits on at
/// most one channel by construction; a(g, k) is the binary view.
class Assignment {
 public:
  Assignment() = default;
  Assignment(int num_channels, int num_groups);

  int num_channels() const { return num_channels_; }
  int num_groups() const { return static_cast<int>(channel_of_.size()); }

  /// Channel of group g, or -1.
  int channel_of(int g) const { return channel_of_.at(static_cast<std::size_t>(g)); }
  bool a(int g, int k) const { return channel_of(g) == k; }
  bool assigned(int g) const { return channel_of(g) >= 0; }

  void assign(int g, int k);
  void unassign(int g);

  /// G_k in ascending group order.
  std::vector<int> groups_on(int k) const;
  int group_count(int k) const;
  std::vector<int> unassigned() const;

  bool operator==(const Assignment&) const = default;

 private:
  int num_channels_ = 0;
  std::vector<int> channel_of_;
};

/// Transmit powers in watts. p_g[g] is the power on g's assigned channel.
struct PowerProfile {
  std::vector<double> p_c;  // [k]
  std::vector<double> p_g;  // [g]

  static PowerProfile uniform(int num_channels, int num_groups, double p_c, double p_g);
};

/// Noise power and bandwidth shared by every channel.
struct LinkBudget {
  double noise_w = 0.0;
  double bandwidth_hz = 0.0;
};

/// Shannon rate B log2(1 + sinr).
double shannon_rate(double bandwidth_hz, double sinr);

/// Aggregate interference at the BS on channel k: sum of p_g h_gb over G_k.
double bs_interference(int k, const Assignment& assignment, const PowerProfile& powers,
                       const GainTable& gains);

double sinr_cu(int k, const Assignment& assignment, const PowerProfile& powers,
               const GainTable& gains, double noise_w);
double rate_cu(int k, const Assignment& assignment, const PowerProfile& powers,
               const GainTable& gains, const LinkBudget& budget);
/// CU rate without any co-channel group.
double rate_cu_solo(int k, const PowerProfile& powers, const GainTable& gains,
                    const LinkBudget& budget);

/// SINR of receiver r of group g on channel k.
double sinr_receiver(int g, int r, int k, const Assignment& assignment,
                     const PowerProfile& powers, const GainTable& gains, double noise_w);
/// Worst-receiver SINR of group g on channel k. Group g must be on channel k.
double sinr_mg_worst(int g, int k, const Assignment& assignment, const PowerProfile& powers,
                     const GainTable& gains, double noise_w);
double rate_mg(int g, int k, const Assignment& assignment, const PowerProfile& powers,
               const GainTable& gains, const LinkBudget& budget);

struct ThroughputGain {
  double gain = 0.0;      // sum of group rates + R_c - R_c_solo
  double cu_loss = 0.0;   // R_c_solo - R_c, never negative
  double mg_sum = 0.0;    // sum of group rates on the channel
};

ThroughputGain throughput_gain(int k, const Assignment& assignment, const PowerProfile& powers,
                               const GainTable& gains, const LinkBudget& budget);

/// Least CU power meeting `min_rate` given the co-channel interference.
/// Throws std::domain_error when h_cb is zero.
double p_c_min(int k, const Assignment& assignment, const PowerProfile& powers,
               const GainTable& gains, const LinkBudget& budget, double min_rate);

/// Interference-limited CU rate and its lower bound, summed over channels that
/// carry at least one group, with B = 1.
struct RateLowerBound {
  double bound = 0.0;
  double interference_limited_rate = 0.0;
};

/// Throws std::domain_error if a zero gain or power would enter a log.
RateLowerBound rate_lower_bound(const Assignment& assignment, const PowerProfile& powers,
                             const GainTable& gains, double p_g_max);

/// Lanczos approximation of the complete gamma function (x not a
/// non-positive integer).
double gamma_fn(double x);

/// Outage probability of a D2D receiver at distance d_gr from its transmitter
/// with Poisson CU and MG interferers:
/// 1 - exp(-chi gamma^(2/alpha) d^2 [lambda_c (p_c/p_g)^(2/alpha) + lambda_g]),
/// chi = pi Gamma(1 + 2/alpha) Gamma(1 - 2/alpha). `gamma_o` is linear.
/// Throws std::domain_error for alpha <= 2, std::invalid_argument for p_g <= 0.
double outage_probability(double gamma_o, double alpha, double d_gr, double lambda_c,
                          double lambda_g, double p_c, double p_g);

}  // namespace d2d
