#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "d2dsim/channel.hpp"
#include "d2dsim/hungarian.hpp"
#include "d2dsim/metrics.hpp"
#include "d2dsim/power_alloc.hpp"
#include "d2dsim/topology.hpp"

namespace d2d {

enum class PolicyKind {
  interference_aware,
  outage_aware_obj1,
  outage_aware_obj2,
  outage_aware_obj3,
  random,
  bipartite,
  greedy,
};

std::string_view policy_name(PolicyKind kind);
std::optional<PolicyKind> parse_policy(std::string_view name);
const std::vector<PolicyKind>& all_policies();

enum class OutageObjective { priority_group = 1, min_max = 2, min_sum = 3 };

/// Thresholds the channel allocators need, in linear units.
struct AllocParams {
  PowerParams power;
  double gain_ratio_threshold = 10.0;
  double outage_threshold = 0.1;
  double outage_target = 1.0;
  double pathloss_exponent = 3.6;
  double density_cu = 1e-5;
  double density_mg = 1e-5;
  int priority_group = 0;
  bool dominant_interferer_only = false;

  static AllocParams from_config(const ScenarioConfig& config);
};

/// Pair throughput R_{k,g}: CU k and group g alone on channel k, both at
/// maximum power.
WeightMatrix pair_weights(const GainTable& gains, const PowerParams& power);

/// Throughput gain of group g alone on channel k at maximum powers.
double single_group_gain(int k, int g, const GainTable& gains, const PowerParams& power);

/// Own-link over cross-link gain, worst receiver of `victim`:
/// min_r h(victim -> r) / h(aggressor -> r) on channel k.
double gain_ratio(int victim, int aggressor, int k, const GainTable& gains);

/// Interference-aware allocation. (g, k) pairs with positive standalone gain
/// are visited in descending gain order; g joins k when it is still free,
/// its gain ratios against every group already on k exceed the threshold in
/// both directions, and it adds positive sum rate at maximum powers.
Assignment ia_allocate(const GainTable& gains, const AllocParams& params);

/// Outage of group g on channel k when `members` (g included) share k.
using OutageFn = std::function<double(int g, int k, std::span<const int> members)>;

/// Closed-form PPP outage model: group radius from the topology, MGTX at
/// P_g^max, and the CU at the least power that meets its rate against the
/// members' interference at P_g^max (only the strongest member when
/// `dominant_interferer_only`), capped at P_c^max.
OutageFn ppp_outage_model(const Topology& topology, const GainTable& gains,
                            const AllocParams& params);

/// Outage-aware allocation over an arbitrary outage model. Groups whose
/// best standalone outage is below the threshold are visited in ascending
/// order (the priority group first under Objective 1); each goes to the
/// channel ranked best by the objective among those where every member stays
/// below the outage threshold and the summed BS interference stays within
/// I_th^k, members counted at the equal split P_g^max / |G_k|.
Assignment oa_allocate(const OutageFn& outage, const GainTable& gains, const AllocParams& params,
                       OutageObjective objective);

Assignment oa_allocate(const Topology& topology, const GainTable& gains,
                       const AllocParams& params, OutageObjective objective);

/// min(C, G) groups drawn uniformly, the i-th drawn on channel i.
Assignment random_allocate(int num_channels, int num_groups, std::uint64_t seed);

/// Repeatedly pairs the free (CU, group) with the smallest CU-to-worst-receiver
/// interference gain; ties go to the lowest (k, g).
Assignment greedy_allocate(const GainTable& gains);

/// Hungarian matching on pair_weights.
Assignment bipartite_allocate(const GainTable& gains, const PowerParams& power);

/// {"channel_0": {"cu": 0, "mgs": [...]}, ..., "unassigned": [...]}
std::string assignment_to_json(const Assignment& assignment, int indent = 2);

}  // namespace d2d
