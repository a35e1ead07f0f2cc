#pragma once

// Reference implementations used to cross-check the solvers. Each one takes
// the direct route (enumeration, grids, simulation, closed-form solves) and
// shares no code with the routine it checks beyond the rate formulas.

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "d2dsim/channel.hpp"
#include "d2dsim/hungarian.hpp"
#include "d2dsim/metrics.hpp"
#include "d2dsim/power_alloc.hpp"

namespace d2d::oracle {

/// Maximum total weight over all injective channel->group maps (zero-padded
/// to a square), by enumerating permutations. Keep n <= 8.
double brute_force_matching(const WeightMatrix& weights);

struct GridBest {
  bool any_feasible = false;
  double objective = 0.0;
  std::vector<double> powers;  // arg max, same order as the search space
  /// Largest objective change between the arg max and a grid neighbour.
  double cell_slack = 0.0;
};

/// Best sum rate over an n x n grid on [0, P_c^max] x [0, P_g^max] for one
/// group alone on channel k, restricted to points meeting every SINR target.
GridBest grid_search_pair(int k, int g, const GainTable& gains, const PowerParams& params,
                          int n);

/// Same over an n^3 grid of (p_c, p_g1, p_g2) for two co-channel groups.
GridBest grid_search_gk2(int k, int g1, int g2, const GainTable& gains,
                         const PowerParams& params, int n);

/// True when every SINR target of the channel holds at `powers` within
/// relative tolerance `tol` and the powers lie in the box.
bool meets_targets(int k, const std::vector<int>& groups, double p_c,
                   const std::vector<double>& p_groups, const GainTable& gains,
                   const PowerParams& params, double tol);

struct PppSetup {
  double gamma = 1.0;  // linear SIR target
  double alpha = 4.0;
  double d = 20.0;     // m, desired link
  double lambda_c = 1e-5;
  double lambda_g = 1e-5;
  double p_c = 1.0;
  double p_g = 1.0;
  double disc_radius = 2000.0;  // interferers dropped in this disc
  int realizations = 100000;
  std::uint64_t seed = 1;
};

/// Fraction of realizations with SIR <= gamma when two independent Poisson
/// fields of interferers (densities lambda_c at power p_c, lambda_g at p_g)
/// surround a receiver at distance d from its transmitter; Rayleigh fading
/// on every link, pathloss r^-alpha.
double ppp_outage(const PppSetup& setup);

struct FixedPoint2 {
  bool positive = false;
  std::array<double, 2> p{};
};

/// Solves p_i h_ii = gamma (p_j h_ji + p_c h_ci + N0) for two single-receiver
/// groups on channel k with the CU at p_c.
FixedPoint2 solve_target_sinr_2x2(int k, int g1, int g2, const GainTable& gains, double gamma,
                                  double p_c, double noise_w);

/// Enumerates every map of G groups onto {unassigned, 0..C-1} and returns the
/// one maximising `score` (ties: first in enumeration order). G <= 6, C <= 3.
Assignment best_partition(int num_channels, int num_groups,
                          const std::function<double(const Assignment&)>& score);

}  // namespace d2d::oracle
