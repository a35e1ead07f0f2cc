#include "d2dsim/harness.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "d2dsim/power_alloc.hpp"
#include "d2dsim/rng.hpp"

namespace d2d {

std::uint64_t run_seed(std::uint64_t base_seed, std::uint64_t run_index) {
  return substream_seed(base_seed, run_index);
}

Scenario make_scenario(const ScenarioConfig& config, std::uint64_t seed) {
  Scenario s;
  s.topology = generate_topology(config, substream_seed(seed, kTopologyStream));
  s.gains = sample_gains(s.topology, config, substream_seed(seed, kGainStream));
  return s;
}

PowerProfile max_powers(const Assignment& assignment, const PowerParams& params) {
  PowerProfile p;
  p.p_c.assign(static_cast<std::size_t>(assignment.num_channels()), params.p_c_max);
  p.p_g.assign(static_cast<std::size_t>(assignment.num_groups()), 0.0);
  for (int g = 0; g < assignment.num_groups(); ++g) {
    if (assignment.assigned(g)) p.p_g[static_cast<std::size_t>(g)] = params.p_g_max;
  }
  return p;
}

namespace {

// Returns false when the pair problem had no feasible corner.
bool apply_pair(int k, int g, const GainTable& gains, const PowerParams& params,
                PowerProfile& out) {
  const PairPower pp = pair_power(k, g, gains, params);
  out.p_c[static_cast<std::size_t>(k)] = pp.p_c;
  out.p_g[static_cast<std::size_t>(g)] = pp.feasible ? pp.p_g : 0.0;
  if (!pp.feasible) out.p_c[static_cast<std::size_t>(k)] = params.p_c_max;
  return pp.feasible;
}

}  // namespace

PowerOutcome allocate_powers(Assignment& assignment, const GainTable& gains,
                             const PowerParams& params) {
  PowerOutcome out;
  out.powers.p_c.assign(static_cast<std::size_t>(assignment.num_channels()), params.p_c_max);
  out.powers.p_g.assign(static_cast<std::size_t>(assignment.num_groups()), 0.0);

  for (int k = 0; k < assignment.num_channels(); ++k) {
    const std::vector<int> members = assignment.groups_on(k);
    if (members.empty()) continue;

    if (members.size() == 1) {
      if (!apply_pair(k, members[0], gains, params, out.powers)) {
        ++out.infeasible_channels;
        assignment.unassign(members[0]);
      }
      continue;
    }

    if (members.size() == 2) {
      const CornerResult cr = corner_search_gk2(k, members[0], members[1], gains, params);
      if (cr.feasible) {
        out.powers.p_c[static_cast<std::size_t>(k)] = cr.powers[0];
        out.powers.p_g[static_cast<std::size_t>(members[0])] = cr.powers[1];
        out.powers.p_g[static_cast<std::size_t>(members[1])] = cr.powers[2];
        continue;
      }
      ++out.infeasible_channels;
      const double gain0 = single_group_gain(k, members[0], gains, params);
      const double gain1 = single_group_gain(k, members[1], gains, params);
      const int dropped = gain1 < gain0 ? members[1] : members[0];
      const int kept = dropped == members[0] ? members[1] : members[0];
      assignment.unassign(dropped);
      if (!apply_pair(k, kept, gains, params, out.powers)) assignment.unassign(kept);
      continue;
    }

    const StimChannelResult sr = stim_channel(k, members, gains, params);
    out.powers.p_c[static_cast<std::size_t>(k)] = sr.p_c;
    for (std::size_t i = 0; i < members.size(); ++i) {
      out.powers.p_g[static_cast<std::size_t>(members[i])] = sr.p_g[i];
    }
    out.converged = out.converged && sr.converged;
  }
  return out;
}

RunMetrics evaluate(const Assignment& assignment, const PowerProfile& powers,
                    const GainTable& gains, const ScenarioConfig& config) {
  const LinkBudget budget{config.noise_watts(), config.bandwidth_per_channel};
  const double min_rate = config.cu_min_rate();
  RunMetrics m;
  for (int k = 0; k < assignment.num_channels(); ++k) {
    const double rc = rate_cu(k, assignment, powers, gains, budget);
    m.cu_throughput += rc;
    if (rc < min_rate * (1.0 - 1e-9)) ++m.qos_violations;
  }
  for (int g = 0; g < assignment.num_groups(); ++g) {
    if (!assignment.assigned(g)) continue;
    ++m.assigned_mgs;
    const double rg = rate_mg(g, assignment.channel_of(g), assignment, powers, gains, budget);
    m.mg_throughput += gains.receivers(g) * rg;
  }
  m.sum_throughput = m.cu_throughput + m.mg_throughput;
  return m;
}

RunDetail run_policy(const Scenario& scenario, const ScenarioConfig& config, PolicyKind policy,
                     std::uint64_t seed) {
  const AllocParams params = AllocParams::from_config(config);
  const GainTable& gains = scenario.gains;
  RunDetail d;
  bool optimise_power = true;
  switch (policy) {
    case PolicyKind::interference_aware:
      d.assignment = ia_allocate(gains, params);
      break;
    case PolicyKind::outage_aware_obj1:
      d.assignment = oa_allocate(scenario.topology, gains, params, OutageObjective::priority_group);
      break;
    case PolicyKind::outage_aware_obj2:
      d.assignment = oa_allocate(scenario.topology, gains, params, OutageObjective::min_max);
      break;
    case PolicyKind::outage_aware_obj3:
      d.assignment = oa_allocate(scenario.topology, gains, params, OutageObjective::min_sum);
      break;
    case PolicyKind::bipartite:
      d.assignment = bipartite_allocate(gains, params.power);
      break;
    case PolicyKind::random:
      d.assignment = random_allocate(gains.num_channels(), gains.num_groups(),
                                     substream_seed(seed, kPolicyStream));
      optimise_power = false;
      break;
    case PolicyKind::greedy:
      d.assignment = greedy_allocate(gains);
      optimise_power = false;
      break;
  }

  bool converged = true;
  int infeasible = 0;
  if (optimise_power) {
    PowerOutcome po = allocate_powers(d.assignment, gains, params.power);
    d.powers = std::move(po.powers);
    converged = po.converged;
    infeasible = po.infeasible_channels;
  } else {
    d.powers = max_powers(d.assignment, params.power);
  }
  d.metrics = evaluate(d.assignment, d.powers, gains, config);
  d.metrics.policy = policy;
  d.metrics.seed = seed;
  d.metrics.converged = converged;
  d.metrics.infeasible_channels = infeasible;
  return d;
}

RunMetrics run_point(const ScenarioConfig& config, PolicyKind policy, std::uint64_t seed) {
  config.validate();
  return run_policy(make_scenario(config, seed), config, policy, seed).metrics;
}

// ---------------------------------------------------------------------------

namespace {

struct AxisEntry {
  SweepAxis axis;
  std::string_view name;
};

constexpr std::array<AxisEntry, 6> kAxes = {{
    {SweepAxis::none, "none"},
    {SweepAxis::receivers_per_mg, "receivers_per_mg"},
    {SweepAxis::num_mgs, "num_mgs"},
    {SweepAxis::geographic_spread, "geographic_spread"},
    {SweepAxis::cu_qos_threshold, "cu_qos_threshold"},
    {SweepAxis::p_g_max, "p_g_max"},
}};

int axis_int(SweepAxis axis, double value) {
  const double r = std::round(value);
  if (std::abs(r - value) > 1e-9 || r < 0.0) {
    throw ConfigError(std::string("axis ") + std::string(axis_name(axis)) +
                      " needs non-negative integer values");
  }
  return static_cast<int>(r);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double round12(double v) { return std::stod(fmt(v)); }

}  // namespace

std::string_view axis_name(SweepAxis axis) {
  for (const auto& a : kAxes)
    if (a.axis == axis) return a.name;
  return "unknown";
}

std::optional<SweepAxis> parse_axis(std::string_view name) {
  for (const auto& a : kAxes)
    if (a.name == name) return a.axis;
  return std::nullopt;
}

ScenarioConfig apply_axis(const ScenarioConfig& config, SweepAxis axis, double value) {
  ScenarioConfig c = config;
  switch (axis) {
    case SweepAxis::none:
      break;
    case SweepAxis::receivers_per_mg:
      c.receivers_per_mg = {axis_int(axis, value)};
      break;
    case SweepAxis::num_mgs:
      c.num_mgs = axis_int(axis, value);
      break;
    case SweepAxis::geographic_spread:
      c.geographic_spread = value;
      break;
    case SweepAxis::cu_qos_threshold:
      c.sinr_threshold_cu = value;
      break;
    case SweepAxis::p_g_max:
      c.p_g_max = value;
      break;
  }
  return c;
}

namespace {

std::string trim_copy(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim_copy(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

Sweep parse_sweep(const std::string& text) {
  Sweep sweep;
  sweep.axis = SweepAxis::none;
  std::string config_text;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::string body = line.substr(0, line.find('#'));
    const auto eq = body.find('=');
    const std::string key = eq == std::string::npos ? "" : trim_copy(body.substr(0, eq));
    if (key.rfind("sweep_", 0) != 0) {
      config_text += line + '\n';
      continue;
    }
    const std::string value = trim_copy(body.substr(eq + 1));
    if (key == "sweep_axis") {
      const auto axis = parse_axis(value);
      if (!axis) throw ConfigError("unknown sweep_axis '" + value + "'");
      sweep.axis = *axis;
    } else if (key == "sweep_values") {
      for (const auto& item : split_list(value)) {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (ec != std::errc() || ptr != item.data() + item.size()) {
          throw ConfigError("sweep_values: not a number: '" + item + "'");
        }
        sweep.values.push_back(v);
      }
    } else if (key == "sweep_policies") {
      for (const auto& item : split_list(value)) {
        const auto policy = parse_policy(item);
        if (!policy) throw ConfigError("unknown policy '" + item + "'");
        sweep.policies.push_back(*policy);
      }
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  sweep.base = parse_config(config_text);
  if (sweep.axis == SweepAxis::none) {
    if (!sweep.values.empty()) throw ConfigError("sweep_values given without sweep_axis");
    sweep.values = {0.0};
  } else if (sweep.values.empty()) {
    throw ConfigError("sweep_axis given without sweep_values");
  }
  if (sweep.policies.empty()) sweep.policies = all_policies();
  sweep.runs = sweep.base.monte_carlo_runs;
  sweep.base_seed = sweep.base.rng_seed;
  return sweep;
}

Sweep load_sweep(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot read " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_sweep(ss.str());
}

const PointSummary& SweepResult::point(PolicyKind policy, double axis_value) const {
  for (const auto& s : summary)
    if (s.policy == policy && s.axis_value == axis_value) return s;
  throw std::out_of_range("SweepResult::point: no such policy/value");
}

int SweepResult::flagged_runs() const {
  return static_cast<int>(std::count_if(rows.begin(), rows.end(),
                                        [](const SweepRow& r) { return r.metrics.flagged(); }));
}

std::vector<PointSummary> summarize(const Sweep& sweep, const std::vector<SweepRow>& rows) {
  std::vector<PointSummary> out;
  for (PolicyKind policy : sweep.policies) {
    for (double value : sweep.values) {
      PointSummary s;
      s.policy = policy;
      s.axis_value = value;
      std::vector<double> sums;
      for (const auto& row : rows) {
        if (row.metrics.policy != policy || row.axis_value != value) continue;
        const auto& m = row.metrics;
        ++s.runs;
        sums.push_back(m.sum_throughput);
        s.mean_cu += m.cu_throughput;
        s.mean_mg += m.mg_throughput;
        s.mean_assigned += m.assigned_mgs;
        if (m.qos_violations > 0) ++s.qos_violation_runs;
        if (!m.converged) ++s.convergence_failures;
        if (m.flagged()) ++s.flagged_runs;
      }
      if (s.runs > 0) {
        const double n = s.runs;
        double total = 0.0;
        for (double v : sums) total += v;
        s.mean_sum = total / n;
        s.mean_cu /= n;
        s.mean_mg /= n;
        s.mean_assigned /= n;
        if (s.runs > 1) {
          double sq = 0.0;
          for (double v : sums) sq += (v - s.mean_sum) * (v - s.mean_sum);
          s.std_sum = std::sqrt(sq / (n - 1.0));
        }
      }
      out.push_back(s);
    }
  }
  return out;
}

SweepResult run_sweep(const Sweep& sweep, unsigned threads) {
  if (sweep.values.empty()) throw ConfigError("sweep: no axis values");
  if (sweep.runs < 1) throw ConfigError("sweep: runs must be >= 1");
  if (sweep.policies.empty()) throw ConfigError("sweep: no policies");

  std::vector<ScenarioConfig> configs;
  for (double v : sweep.values) {
    configs.push_back(apply_axis(sweep.base, sweep.axis, v));
    configs.back().validate();
  }

  const std::size_t nv = sweep.values.size();
  const std::size_t nr = static_cast<std::size_t>(sweep.runs);
  const std::size_t np = sweep.policies.size();
  std::vector<RunMetrics> slots(np * nv * nr);
  auto slot = [&](std::size_t p, std::size_t v, std::size_t r) -> RunMetrics& {
    return slots[(p * nv + v) * nr + r];
  };

  const std::size_t tasks = nv * nr;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= tasks) return;
      const std::size_t v = t / nr;
      const std::size_t r = t % nr;
      try {
        const std::uint64_t seed = run_seed(sweep.base_seed, r);
        const Scenario scenario = make_scenario(configs[v], seed);
        for (std::size_t p = 0; p < np; ++p) {
          slot(p, v, r) = run_policy(scenario, configs[v], sweep.policies[p], seed).metrics;
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(tasks);
      }
    }
  };

  unsigned n = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  n = static_cast<unsigned>(std::min<std::size_t>(n, tasks));
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  SweepResult result;
  result.sweep = sweep;
  result.rows.reserve(slots.size());
  for (std::size_t p = 0; p < np; ++p) {
    for (std::size_t v = 0; v < nv; ++v) {
      for (std::size_t r = 0; r < nr; ++r) {
        result.rows.push_back({sweep.values[v], static_cast<int>(r), slot(p, v, r)});
      }
    }
  }
  result.summary = summarize(sweep, result.rows);
  return result;
}

// ---------------------------------------------------------------------------

namespace {

std::string hash_line(const ScenarioConfig& config) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "# config_hash=%016" PRIx64 "\n", config.hash());
  return buf;
}

nlohmann::ordered_json config_json(const ScenarioConfig& config) {
  nlohmann::ordered_json j;
  std::istringstream in(config.to_text());
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find(" = ");
    if (eq == std::string::npos) continue;
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 3);
    double number = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), number);
    if (ec == std::errc() && ptr == value.data() + value.size()) {
      j[key] = number;
    } else if (value == "true" || value == "false") {
      j[key] = value == "true";
    } else {
      j[key] = value;
    }
  }
  return j;
}

}  // namespace

std::string sweep_csv(const SweepResult& result) {
  const auto& sw = result.sweep;
  std::string out = hash_line(sw.base);
  out += "policy,axis,axis_value,run_seed,sum_throughput_bps,cu_throughput_bps,"
         "mg_throughput_bps,assigned_mgs,qos_violations,converged\n";
  const std::string axis(axis_name(sw.axis));
  for (const auto& row : result.rows) {
    const auto& m = row.metrics;
    out += std::string(policy_name(m.policy)) + ',' + axis + ',' + fmt(row.axis_value) + ',' +
           std::to_string(m.seed) + ',' + fmt(m.sum_throughput) + ',' + fmt(m.cu_throughput) +
           ',' + fmt(m.mg_throughput) + ',' + std::to_string(m.assigned_mgs) + ',' +
           std::to_string(m.qos_violations) + ',' + (m.converged ? "1" : "0") + '\n';
  }
  return out;
}

std::string summary_csv(const SweepResult& result) {
  const auto& sw = result.sweep;
  std::string out = hash_line(sw.base);
  out += "policy,axis,axis_value,runs,mean_sum_throughput_bps,std_sum_throughput_bps,"
         "mean_cu_throughput_bps,mean_mg_throughput_bps,mean_assigned_mgs,"
         "qos_violation_runs,convergence_failures,flagged_runs\n";
  const std::string axis(axis_name(sw.axis));
  for (const auto& s : result.summary) {
    out += std::string(policy_name(s.policy)) + ',' + axis + ',' + fmt(s.axis_value) + ',' +
           std::to_string(s.runs) + ',' + fmt(s.mean_sum) + ',' + fmt(s.std_sum) + ',' +
           fmt(s.mean_cu) + ',' + fmt(s.mean_mg) + ',' + fmt(s.mean_assigned) + ',' +
           std::to_string(s.qos_violation_runs) + ',' + std::to_string(s.convergence_failures) +
           ',' + std::to_string(s.flagged_runs) + '\n';
  }
  return out;
}

std::string sweep_json(const SweepResult& result) {
  const auto& sw = result.sweep;
  nlohmann::ordered_json j;
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016" PRIx64, sw.base.hash());
  j["config_hash"] = hash;
  j["rng"] = {{"name", std::string(Rng::kName)}, {"version", Rng::kVersion}};
  j["axis"] = std::string(axis_name(sw.axis));
  j["values"] = sw.values;
  std::vector<std::string> policies;
  for (PolicyKind p : sw.policies) policies.emplace_back(policy_name(p));
  j["policies"] = policies;
  j["runs"] = sw.runs;
  j["base_seed"] = sw.base_seed;
  j["config"] = config_json(sw.base);
  return j.dump(2) + "\n";
}

std::string run_detail_json(const RunDetail& detail, const ScenarioConfig& config) {
  nlohmann::ordered_json j;
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016" PRIx64, config.hash());
  j["config_hash"] = hash;
  j["policy"] = std::string(policy_name(detail.metrics.policy));
  j["seed"] = detail.metrics.seed;
  j["assignment"] = nlohmann::ordered_json::parse(assignment_to_json(detail.assignment));
  std::vector<double> pc, pg;
  for (double v : detail.powers.p_c) pc.push_back(round12(v));
  for (double v : detail.powers.p_g) pg.push_back(round12(v));
  j["powers_w"] = {{"p_c", pc}, {"p_g", pg}};
  const auto& m = detail.metrics;
  j["metrics"] = {{"sum_throughput_bps", round12(m.sum_throughput)},
                  {"cu_throughput_bps", round12(m.cu_throughput)},
                  {"mg_throughput_bps", round12(m.mg_throughput)},
                  {"assigned_mgs", m.assigned_mgs},
                  {"qos_violations", m.qos_violations},
                  {"converged", m.converged},
                  {"infeasible_channels", m.infeasible_channels}};
  return j.dump(2) + "\n";
}

void write_sweep(const SweepResult& result, const std::filesystem::path& dir,
                 const std::string& stem) {
  std::filesystem::create_directories(dir);
  auto put = [&](const std::string& name, const std::string& text) {
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
    f << text;
  };
  put(stem + ".csv", sweep_csv(result));
  put(stem + "_summary.csv", summary_csv(result));
  put(stem + ".json", sweep_json(result));
}

}  // namespace d2d
