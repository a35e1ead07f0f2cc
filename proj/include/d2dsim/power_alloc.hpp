#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "d2dsim/config.hpp"
#include "d2dsim/metrics.hpp"

namespace d2d {

/// Linear-scale limits and targets shared by the power allocators.
struct PowerParams {
  double p_c_max = 1.0;   // W
  double p_g_max = 1.0;   // W
  double gamma_c = 1.0;   // CU SINR target, linear
  double gamma_r = 1.0;   // MG receiver SINR target, linear
  LinkBudget budget{};
  /// Fixed per-channel interference budget in W; 0 derives it per channel.
  double interference_cap = 0.0;
  double stim_epsilon = 1e-6;
  int stim_max_iterations = 500;

  static PowerParams from_config(const ScenarioConfig& config);

  /// CU rate requirement B log2(1 + gamma_c).
  double cu_min_rate() const { return shannon_rate(budget.bandwidth_hz, gamma_c); }

  /// I_th^k: the configured cap, or the largest BS interference that still
  /// lets CU k meet gamma_c at P_c^max (never negative).
  double interference_budget(int k, const GainTable& gains) const;
};

// ---------------------------------------------------------------------------
// Corner search

/// Half-space coeff . p >= rhs over the power vector
/// p = (p_c, p_g1, p_g2). SINR constraints are written in this form.
struct PowerPlane {
  std::array<double, 3> coeff{};
  double rhs = 0.0;

  double slack(const std::array<double, 3>& p) const;
};

struct CornerCandidate {
  int region_id = 0;
  std::array<double, 3> powers{};  // (p_c, p_g1, p_g2), W
  bool feasible = false;
  double objective = 0.0;          // bits/s, only set by corner_search_gk2
  /// Planes made active to build this candidate (-1 = unused).
  std::array<int, 2> planes{-1, -1};
};

/// Candidate corners of {p : plane constraints, 0 <= p <= box_max}:
///   regions 1-3: one power at its maximum (p_c, p_g1, p_g2 respectively),
///                every pair of planes solved for the other two;
///   regions 4-6: two powers at maximum ((p_c,p_g1), (p_c,p_g2),
///                (p_g1,p_g2)), every plane solved for the third;
///   region 7:    all powers at maximum.
/// Singular systems are skipped. `feasible` checks every plane and the box
/// with relative tolerance `tol`.
std::vector<CornerCandidate> enumerate_corners(std::span<const PowerPlane> planes,
                                               const std::array<double, 3>& box_max,
                                               double tol = 1e-9);

/// SINR constraints of a CU and two co-channel groups (one plane per
/// receiver plus one for the CU), in (p_c, p_g1, p_g2) order.
std::vector<PowerPlane> sinr_planes_gk2(int k, int g1, int g2, const GainTable& gains,
                                        const PowerParams& params);

struct CornerResult {
  bool feasible = false;
  int region_id = 0;
  std::array<double, 3> powers{};
  double objective = 0.0;
  std::vector<CornerCandidate> candidates;
};

/// Sum-rate maximising corner for two groups sharing channel k. Ties between
/// equal objectives go to the lowest region id. If no corner is feasible the
/// result is flagged infeasible and `powers` is left at zero.
CornerResult corner_search_gk2(int k, int g1, int g2, const GainTable& gains,
                               const PowerParams& params);

/// R_c + sum of worst-receiver group rates on channel k for explicit powers.
double channel_sum_rate(int k, std::span<const int> groups, double p_c,
                        std::span<const double> p_groups, const GainTable& gains,
                        const LinkBudget& budget);

// ---------------------------------------------------------------------------
// Single group per channel

struct PairPower {
  double p_c = 0.0;
  double p_g = 0.0;
  bool feasible = false;
  double objective = 0.0;
};

/// Best corner of the (p_c, p_g) feasible region for group g alone on
/// channel k. Candidates lie on the edges p_c = P_c^max and p_g = P_g^max,
/// cut by the CU and per-receiver SINR lines. With no feasible corner the
/// group is switched off and the CU keeps P_c^max.
PairPower pair_power(int k, int g, const GainTable& gains, const PowerParams& params);

// ---------------------------------------------------------------------------
// STIM

struct StimChannelResult {
  double p_c = 0.0;
  std::vector<double> p_g;  // aligned with the member list
  std::vector<double> cap;  // per-member power ceiling
  bool converged = false;
  int iterations = 0;
};

/// Iterative target-SINR power control for the groups on channel k. Each
/// group's power is capped at min(P_g^max, I_th^k / (h_gb |G_k|)), starts at
/// min(P_g^max / |G_k|, cap) and follows p <- (gamma_r / Gamma) p, clamped to
/// the cap, while the CU transmits at P_c^max. The CU is then lowered to the
/// least power meeting its rate (capped at P_c^max).
///
/// `trace`, when given, receives every iterate.
StimChannelResult stim_channel(int k, std::span<const int> groups, const GainTable& gains,
                               const PowerParams& params,
                               std::vector<std::vector<double>>* trace = nullptr);

struct StimResult {
  PowerProfile powers;
  bool converged = true;
  int max_iterations = 0;
};

/// stim_channel on every channel that carries a group; CUs on empty channels
/// transmit at P_c^max.
StimResult stim_allocate(const Assignment& assignment, const GainTable& gains,
                         const PowerParams& params);

}  // namespace d2d
