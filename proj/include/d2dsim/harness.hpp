#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "d2dsim/channel.hpp"
#include "d2dsim/channel_alloc.hpp"
#include "d2dsim/config.hpp"
#include "d2dsim/metrics.hpp"
#include "d2dsim/topology.hpp"

namespace d2d {

/// Per-run seed for run `run_index` of a sweep seeded with `base_seed`.
/// Every policy and axis value sees the same seed for a given run index, so
/// schemes are compared on identical drops.
std::uint64_t run_seed(std::uint64_t base_seed, std::uint64_t run_index);

/// Substream indices derived from a run seed.
inline constexpr std::uint64_t kTopologyStream = 1;
inline constexpr std::uint64_t kGainStream = 2;
inline constexpr std::uint64_t kPolicyStream = 3;

/// One drop: node positions plus the gain realization.
struct Scenario {
  Topology topology;
  GainTable gains;
};

Scenario make_scenario(const ScenarioConfig& config, std::uint64_t seed);

struct RunMetrics {
  PolicyKind policy = PolicyKind::interference_aware;
  std::uint64_t seed = 0;
  double sum_throughput = 0.0;  // bits/s
  double cu_throughput = 0.0;
  /// Multicast throughput delivered to receivers: sum over groups of
  /// |U_g| times the group's worst-receiver rate.
  double mg_throughput = 0.0;
  int assigned_mgs = 0;
  /// Number of CUs whose rate falls below the CU rate requirement.
  int qos_violations = 0;
  /// False when STIM hit its iteration limit on some channel.
  bool converged = true;
  /// Channels whose power problem had no feasible point (groups switched
  /// off or dropped).
  int infeasible_channels = 0;

  /// Runtime infeasibility: unconverged or an infeasible power problem.
  bool flagged() const { return !converged || infeasible_channels > 0; }
};

struct RunDetail {
  Assignment assignment;
  PowerProfile powers;
  RunMetrics metrics;
};

/// Powers for a fixed assignment: pair_power for one group on a channel,
/// corner search for two (dropping the group with the smaller standalone
/// gain if no corner is feasible), STIM for three or more. Groups left
/// without a feasible power are unassigned and get zero power.
struct PowerOutcome {
  PowerProfile powers;
  bool converged = true;
  int infeasible_channels = 0;
};
PowerOutcome allocate_powers(Assignment& assignment, const GainTable& gains,
                             const PowerParams& params);

/// Every CU at P_c^max and every assigned group at P_g^max.
PowerProfile max_powers(const Assignment& assignment, const PowerParams& params);

/// Metrics of a fully specified operating point.
RunMetrics evaluate(const Assignment& assignment, const PowerProfile& powers,
                    const GainTable& gains, const ScenarioConfig& config);

/// Channel allocation for `policy` followed by its power allocation.
RunDetail run_policy(const Scenario& scenario, const ScenarioConfig& config, PolicyKind policy,
                     std::uint64_t seed);

/// Topology, gains, allocation and metrics for a single seed.
RunMetrics run_point(const ScenarioConfig& config, PolicyKind policy, std::uint64_t seed);

/// `none` runs the base configuration as a single point (axis value 0).
enum class SweepAxis { none, receivers_per_mg, num_mgs, geographic_spread, cu_qos_threshold, p_g_max };

std::string_view axis_name(SweepAxis axis);
std::optional<SweepAxis> parse_axis(std::string_view name);

/// Copy of `config` with the axis field set to `value`.
ScenarioConfig apply_axis(const ScenarioConfig& config, SweepAxis axis, double value);

struct Sweep {
  SweepAxis axis = SweepAxis::receivers_per_mg;
  std::vector<double> values;
  ScenarioConfig base;
  std::vector<PolicyKind> policies;
  int runs = 100;
  std::uint64_t base_seed = 1;
};

/// Config file plus optional sweep keys: `sweep_axis`, `sweep_values`
/// (comma list) and `sweep_policies` (comma list, default all). Runs and
/// seed come from `monte_carlo_runs` and `rng_seed`.
Sweep parse_sweep(const std::string& text);
Sweep load_sweep(const std::filesystem::path& path);

struct SweepRow {
  double axis_value = 0.0;
  int run_index = 0;
  RunMetrics metrics;
};

struct PointSummary {
  PolicyKind policy = PolicyKind::interference_aware;
  double axis_value = 0.0;
  int runs = 0;
  double mean_sum = 0.0;
  double std_sum = 0.0;  // sample standard deviation
  double mean_cu = 0.0;
  double mean_mg = 0.0;
  double mean_assigned = 0.0;
  int qos_violation_runs = 0;
  int convergence_failures = 0;
  int flagged_runs = 0;
};

struct SweepResult {
  Sweep sweep;
  /// Ordered by policy, then axis value, then run index.
  std::vector<SweepRow> rows;
  std::vector<PointSummary> summary;

  const PointSummary& point(PolicyKind policy, double axis_value) const;
  int flagged_runs() const;
};

/// Runs every (axis value, run) drop on up to `threads` workers (0 = hardware
/// concurrency) and evaluates every policy on it. Results do not depend on the
/// thread count.
SweepResult run_sweep(const Sweep& sweep, unsigned threads = 0);

std::vector<PointSummary> summarize(const Sweep& sweep, const std::vector<SweepRow>& rows);

/// Per-run CSV with the config hash on a leading comment line.
std::string sweep_csv(const SweepResult& result);
std::string summary_csv(const SweepResult& result);
/// Sweep description plus the full base configuration.
std::string sweep_json(const SweepResult& result);

/// Assignment and powers of one run, watts to 12 significant digits.
std::string run_detail_json(const RunDetail& detail, const ScenarioConfig& config);

/// Writes `<stem>.csv`, `<stem>_summary.csv` and `<stem>.json` into `dir`.
void write_sweep(const SweepResult& result, const std::filesystem::path& dir,
                 const std::string& stem);

}  // namespace d2d
