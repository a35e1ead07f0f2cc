#include "d2dsim/channel_alloc.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "d2dsim/rng.hpp"

namespace d2d {

namespace {

struct PolicyEntry {
  PolicyKind kind;
  std::string_view name;
};

constexpr std::array<PolicyEntry, 7> kPolicies = {{
    {PolicyKind::interference_aware, "interference_aware"},
    {PolicyKind::outage_aware_obj1, "outage_aware_obj1"},
    {PolicyKind::outage_aware_obj2, "outage_aware_obj2"},
    {PolicyKind::outage_aware_obj3, "outage_aware_obj3"},
    {PolicyKind::random, "random"},
    {PolicyKind::bipartite, "bipartite"},
    {PolicyKind::greedy, "greedy"},
}};

}  // namespace

std::string_view policy_name(PolicyKind kind) {
  for (const auto& p : kPolicies)
    if (p.kind == kind) return p.name;
  return "unknown";
}

std::optional<PolicyKind> parse_policy(std::string_view name) {
  for (const auto& p : kPolicies)
    if (p.name == name) return p.kind;
  return std::nullopt;
}

const std::vector<PolicyKind>& all_policies() {
  static const std::vector<PolicyKind> all = [] {
    std::vector<PolicyKind> v;
    for (const auto& p : kPolicies) v.push_back(p.kind);
    return v;
  }();
  return all;
}

AllocParams AllocParams::from_config(const ScenarioConfig& config) {
  AllocParams p;
  p.power = PowerParams::from_config(config);
  p.gain_ratio_threshold = config.gain_ratio_threshold;
  p.outage_threshold = config.outage_prob_threshold;
  p.outage_target = config.gamma_outage();
  p.pathloss_exponent = config.pathloss_exponent;
  p.density_cu = config.effective_density_cu();
  p.density_mg = config.effective_density_mg();
  p.priority_group = config.priority_group;
  p.dominant_interferer_only = config.dominant_interferer_only;
  return p;
}

WeightMatrix pair_weights(const GainTable& gains, const PowerParams& power) {
  WeightMatrix w(gains.num_channels(), gains.num_groups());
  for (int k = 0; k < gains.num_channels(); ++k) {
    for (int g = 0; g < gains.num_groups(); ++g) {
      const std::array<int, 1> group{g};
      const std::array<double, 1> pg{power.p_g_max};
      w(k, g) = channel_sum_rate(k, group, power.p_c_max, pg, gains, power.budget);
    }
  }
  return w;
}

namespace {

double solo_cu_rate(int k, const GainTable& gains, const PowerParams& power) {
  return shannon_rate(power.budget.bandwidth_hz,
                      power.p_c_max * gains.cu_bs(k) / power.budget.noise_w);
}

double sum_rate_at_max(int k, std::span<const int> groups, const GainTable& gains,
                       const PowerParams& power) {
  const std::vector<double> pg(groups.size(), power.p_g_max);
  return channel_sum_rate(k, groups, power.p_c_max, pg, gains, power.budget);
}

}  // namespace

double single_group_gain(int k, int g, const GainTable& gains, const PowerParams& power) {
  const std::array<int, 1> group{g};
  return sum_rate_at_max(k, group, gains, power) - solo_cu_rate(k, gains, power);
}

double gain_ratio(int victim, int aggressor, int k, const GainTable& gains) {
  double worst = std::numeric_limits<double>::infinity();
  for (int r = 0; r < gains.receivers(victim); ++r) {
    const double cross = gains.mg_rx(aggressor, victim, r, k);
    const double own = gains.own(victim, r, k);
    const double ratio = cross > 0.0 ? own / cross : std::numeric_limits<double>::infinity();
    worst = std::min(worst, ratio);
  }
  return worst;
}

Assignment ia_allocate(const GainTable& gains, const AllocParams& params) {
  const int C = gains.num_channels();
  const int G = gains.num_groups();
  Assignment out(C, G);

  struct Candidate {
    double gain;
    int k;
    int g;
  };
  std::vector<Candidate> candidates;
  for (int k = 0; k < C; ++k) {
    for (int g = 0; g < G; ++g) {
      const double gain = single_group_gain(k, g, gains, params.power);
      if (gain > 0.0) candidates.push_back({gain, k, g});
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) { return a.gain > b.gain; });

  std::vector<std::vector<int>> members(static_cast<std::size_t>(C));
  for (const auto& cand : candidates) {
    if (out.assigned(cand.g)) continue;
    auto& on_k = members[static_cast<std::size_t>(cand.k)];
    bool compatible = true;
    for (int peer : on_k) {
      if (!(gain_ratio(cand.g, peer, cand.k, gains) > params.gain_ratio_threshold) ||
          !(gain_ratio(peer, cand.g, cand.k, gains) > params.gain_ratio_threshold)) {
        compatible = false;
        break;
      }
    }
    if (!compatible) continue;
    if (!on_k.empty()) {
      std::vector<int> grown = on_k;
      grown.push_back(cand.g);
      const double before = sum_rate_at_max(cand.k, on_k, gains, params.power);
      const double after = sum_rate_at_max(cand.k, grown, gains, params.power);
      if (!(after > before)) continue;
    }
    on_k.push_back(cand.g);
    out.assign(cand.g, cand.k);
  }
  return out;
}

OutageFn ppp_outage_model(const Topology& topology, const GainTable& gains,
                            const AllocParams& params) {
  std::vector<double> radius(static_cast<std::size_t>(topology.num_mgs()));
  for (int g = 0; g < topology.num_mgs(); ++g) {
    radius[static_cast<std::size_t>(g)] = topology.group_radius(g);
  }
  return [radius = std::move(radius), &gains, params](int g, int k,
                                                      std::span<const int> members) {
    const auto& pw = params.power;
    double interference = 0.0;
    for (int m : members) {
      const double term = pw.p_g_max * gains.mg_bs(m, k);
      interference = params.dominant_interferer_only ? std::max(interference, term)
                                                     : interference + term;
    }
    const double h = gains.cu_bs(k);
    double p_c = pw.p_c_max;
    if (h > 0.0) p_c = std::min(pw.p_c_max, pw.gamma_c * (pw.budget.noise_w + interference) / h);
    return outage_probability(params.outage_target, params.pathloss_exponent,
                              radius[static_cast<std::size_t>(g)], params.density_cu,
                              params.density_mg, p_c, pw.p_g_max);
  };
}

Assignment oa_allocate(const OutageFn& outage, const GainTable& gains, const AllocParams& params,
                       OutageObjective objective) {
  const int C = gains.num_channels();
  const int G = gains.num_groups();
  Assignment out(C, G);
  const double theta = params.outage_threshold;

  // Standalone outage and candidate filter.
  std::vector<double> best_alone(static_cast<std::size_t>(G),
                                 std::numeric_limits<double>::infinity());
  for (int g = 0; g < G; ++g) {
    const std::array<int, 1> self{g};
    for (int k = 0; k < C; ++k) {
      best_alone[static_cast<std::size_t>(g)] =
          std::min(best_alone[static_cast<std::size_t>(g)], outage(g, k, self));
    }
  }
  std::vector<int> order;
  for (int g = 0; g < G; ++g)
    if (best_alone[static_cast<std::size_t>(g)] < theta) order.push_back(g);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return best_alone[static_cast<std::size_t>(a)] < best_alone[static_cast<std::size_t>(b)];
  });
  const int priority = params.priority_group;
  if (objective == OutageObjective::priority_group) {
    const auto it = std::find(order.begin(), order.end(), priority);
    if (it != order.end()) std::rotate(order.begin(), it, it + 1);
  }

  std::vector<std::vector<int>> members(static_cast<std::size_t>(C));
  auto channel_outages = [&](int k, std::span<const int> set) {
    std::vector<double> v;
    v.reserve(set.size());
    for (int m : set) v.push_back(outage(m, k, set));
    return v;
  };

  for (int g : order) {
    struct Option {
      double score;
      double own;
      int k;
      bool admissible;
    };
    std::vector<Option> options;
    for (int k = 0; k < C; ++k) {
      const auto& current = members[static_cast<std::size_t>(k)];
      std::vector<int> grown = current;
      grown.push_back(g);
      const auto after = channel_outages(k, grown);
      const double own = after.back();

      double score = 0.0;
      switch (objective) {
        case OutageObjective::priority_group: {
          if (g == priority) {
            score = own;
          } else if (out.assigned(priority)) {
            const int ck = out.channel_of(priority);
            const auto& host = members[static_cast<std::size_t>(ck)];
            if (ck == k) {
              const auto pos = std::find(grown.begin(), grown.end(), priority) - grown.begin();
              score = after[static_cast<std::size_t>(pos)];
            } else {
              score = outage(priority, ck, host);
            }
          }
          break;
        }
        case OutageObjective::min_max:
          score = *std::max_element(after.begin(), after.end());
          break;
        case OutageObjective::min_sum: {
          const auto before = channel_outages(k, current);
          score = std::accumulate(after.begin(), after.end(), 0.0) -
                  std::accumulate(before.begin(), before.end(), 0.0);
          break;
        }
      }

      bool ok = std::all_of(after.begin(), after.end(), [&](double p) { return p < theta; });
      // Members at the equal split P_g^max / |G_k| that STIM starts from.
      const double share = params.power.p_g_max / static_cast<double>(grown.size());
      double bs = 0.0;
      for (int m : grown) {
        const double term = share * gains.mg_bs(m, k);
        bs = params.dominant_interferer_only ? std::max(bs, term) : bs + term;
      }
      ok = ok && bs <= params.power.interference_budget(k, gains);
      options.push_back({score, own, k, ok});
    }
    std::stable_sort(options.begin(), options.end(), [](const Option& a, const Option& b) {
      if (a.score != b.score) return a.score < b.score;
      return a.own < b.own;
    });
    for (const auto& opt : options) {
      if (!opt.admissible) continue;
      members[static_cast<std::size_t>(opt.k)].push_back(g);
      out.assign(g, opt.k);
      break;
    }
  }
  return out;
}

Assignment oa_allocate(const Topology& topology, const GainTable& gains,
                       const AllocParams& params, OutageObjective objective) {
  return oa_allocate(ppp_outage_model(topology, gains, params), gains, params, objective);
}

Assignment random_allocate(int num_channels, int num_groups, std::uint64_t seed) {
  Assignment out(num_channels, num_groups);
  std::vector<int> pool(static_cast<std::size_t>(num_groups));
  std::iota(pool.begin(), pool.end(), 0);
  Rng rng(seed);
  const int picks = std::min(num_channels, num_groups);
  for (int i = 0; i < picks; ++i) {
    const auto remaining = static_cast<std::uint64_t>(num_groups - i);
    const auto j = static_cast<std::size_t>(i) + static_cast<std::size_t>(rng.below(remaining));
    std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
    out.assign(pool[static_cast<std::size_t>(i)], i);
  }
  return out;
}

Assignment greedy_allocate(const GainTable& gains) {
  const int C = gains.num_channels();
  const int G = gains.num_groups();
  Assignment out(C, G);
  std::vector<char> cu_used(static_cast<std::size_t>(C), 0);
  const int pairs = std::min(C, G);
  for (int step = 0; step < pairs; ++step) {
    double best = std::numeric_limits<double>::infinity();
    int best_k = -1, best_g = -1;
    for (int k = 0; k < C; ++k) {
      if (cu_used[static_cast<std::size_t>(k)]) continue;
      for (int g = 0; g < G; ++g) {
        if (out.assigned(g)) continue;
        double worst = 0.0;
        for (int r = 0; r < gains.receivers(g); ++r) worst = std::max(worst, gains.cu_rx(k, g, r));
        if (worst < best) {
          best = worst;
          best_k = k;
          best_g = g;
        }
      }
    }
    if (best_k < 0) break;
    cu_used[static_cast<std::size_t>(best_k)] = 1;
    out.assign(best_g, best_k);
  }
  return out;
}

Assignment bipartite_allocate(const GainTable& gains, const PowerParams& power) {
  Assignment out(gains.num_channels(), gains.num_groups());
  if (gains.num_groups() == 0) return out;
  const auto matching = hungarian_match(pair_weights(gains, power));
  for (int k = 0; k < gains.num_channels(); ++k) {
    const int g = matching.group_of[static_cast<std::size_t>(k)];
    if (g >= 0) out.assign(g, k);
  }
  return out;
}

std::string assignment_to_json(const Assignment& assignment, int indent) {
  nlohmann::ordered_json j;
  for (int k = 0; k < assignment.num_channels(); ++k) {
    nlohmann::ordered_json ch;
    ch["cu"] = k;
    ch["mgs"] = assignment.groups_on(k);
    j["channel_" + std::to_string(k)] = std::move(ch);
  }
  j["unassigned"] = assignment.unassigned();
  return j.dump(indent);
}

}  // namespace d2d
