#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace d2d::oracle {

double brute_force_matching(const WeightMatrix& weights) {
  const int C = weights.channels();
  const int G = weights.groups();
  const int n = std::max(C, G);
  if (n > 8) throw std::invalid_argument("brute_force_matching: too large");
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  double best = -std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    for (int k = 0; k < C; ++k) {
      const int g = perm[static_cast<std::size_t>(k)];
      if (g < G) total += weights(k, g);
    }
    best = std::max(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return n == 0 ? 0.0 : best;
}

namespace {

struct ChannelEval {
  bool meets = false;
  double sum_rate = 0.0;
};

// Direct evaluation of the channel: CU SINR, worst-receiver SINR per group,
// Shannon rates and the target check.
ChannelEval eval_channel(int k, const std::vector<int>& groups, double p_c,
                         const std::vector<double>& pg, const GainTable& gains,
                         const PowerParams& params, double tol) {
  const double n0 = params.budget.noise_w;
  const double bw = params.budget.bandwidth_hz;
  ChannelEval e;
  double bs = 0.0;
  for (std::size_t i = 0; i < groups.size(); ++i) bs += pg[i] * gains.mg_bs(groups[i], k);
  const double sinr_c = p_c * gains.cu_bs(k) / (n0 + bs);
  bool ok = sinr_c >= params.gamma_c * (1.0 - tol);
  double rate = bw * std::log2(1.0 + sinr_c);
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const int g = groups[i];
    double worst = std::numeric_limits<double>::infinity();
    for (int r = 0; r < gains.receivers(g); ++r) {
      double interference = n0 + p_c * gains.cu_rx(k, g, r);
      for (std::size_t j = 0; j < groups.size(); ++j) {
        if (j != i) interference += pg[j] * gains.mg_rx(groups[j], g, r, k);
      }
      worst = std::min(worst, pg[i] * gains.own(g, r, k) / interference);
    }
    ok = ok && worst >= params.gamma_r * (1.0 - tol);
    rate += bw * std::log2(1.0 + worst);
  }
  e.meets = ok;
  e.sum_rate = rate;
  return e;
}

}  // namespace

bool meets_targets(int k, const std::vector<int>& groups, double p_c,
                   const std::vector<double>& p_groups, const GainTable& gains,
                   const PowerParams& params, double tol) {
  const double hi_c = params.p_c_max * (1.0 + tol);
  const double hi_g = params.p_g_max * (1.0 + tol);
  if (p_c < -tol * params.p_c_max || p_c > hi_c) return false;
  for (double p : p_groups)
    if (p < -tol * params.p_g_max || p > hi_g) return false;
  return eval_channel(k, groups, p_c, p_groups, gains, params, tol).meets;
}

GridBest grid_search_pair(int k, int g, const GainTable& gains, const PowerParams& params,
                          int n) {
  const std::vector<int> groups{g};
  auto at = [&](int i, int j) {
    const double pc = params.p_c_max * i / (n - 1);
    const double pg = params.p_g_max * j / (n - 1);
    return eval_channel(k, groups, pc, {pg}, gains, params, 0.0);
  };
  GridBest best;
  int bi = -1, bj = -1;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto e = at(i, j);
      if (e.meets && (!best.any_feasible || e.sum_rate > best.objective)) {
        best.any_feasible = true;
        best.objective = e.sum_rate;
        bi = i;
        bj = j;
      }
    }
  }
  if (!best.any_feasible) return best;
  best.powers = {params.p_c_max * bi / (n - 1), params.p_g_max * bj / (n - 1)};
  const std::array<std::array<int, 2>, 4> steps{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
  for (const auto& s : steps) {
    const int i = bi + s[0], j = bj + s[1];
    if (i < 0 || j < 0 || i >= n || j >= n) continue;
    best.cell_slack = std::max(best.cell_slack, std::abs(at(i, j).sum_rate - best.objective));
  }
  return best;
}

GridBest grid_search_gk2(int k, int g1, int g2, const GainTable& gains,
                         const PowerParams& params, int n) {
  const std::vector<int> groups{g1, g2};
  auto at = [&](int i, int j, int l) {
    const double pc = params.p_c_max * i / (n - 1);
    const double p1 = params.p_g_max * j / (n - 1);
    const double p2 = params.p_g_max * l / (n - 1);
    return eval_channel(k, groups, pc, {p1, p2}, gains, params, 0.0);
  };
  GridBest best;
  std::array<int, 3> arg{-1, -1, -1};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int l = 0; l < n; ++l) {
        const auto e = at(i, j, l);
        if (e.meets && (!best.any_feasible || e.sum_rate > best.objective)) {
          best.any_feasible = true;
          best.objective = e.sum_rate;
          arg = {i, j, l};
        }
      }
    }
  }
  if (!best.any_feasible) return best;
  best.powers = {params.p_c_max * arg[0] / (n - 1), params.p_g_max * arg[1] / (n - 1),
                 params.p_g_max * arg[2] / (n - 1)};
  for (int axis = 0; axis < 3; ++axis) {
    for (int d : {-1, 1}) {
      auto q = arg;
      q[static_cast<std::size_t>(axis)] += d;
      if (q[static_cast<std::size_t>(axis)] < 0 || q[static_cast<std::size_t>(axis)] >= n) continue;
      best.cell_slack =
          std::max(best.cell_slack, std::abs(at(q[0], q[1], q[2]).sum_rate - best.objective));
    }
  }
  return best;
}

double ppp_outage(const PppSetup& s) {
  std::mt19937_64 gen(s.seed);
  const double area = std::acos(-1.0) * s.disc_radius * s.disc_radius;
  std::poisson_distribution<int> count_c(s.lambda_c * area);
  std::poisson_distribution<int> count_g(s.lambda_g * area);
  std::exponential_distribution<double> fade(1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  auto field = [&](std::poisson_distribution<int>& count, double power) {
    double sum = 0.0;
    const int m = count(gen);
    for (int i = 0; i < m; ++i) {
      const double r = s.disc_radius * std::sqrt(unit(gen));
      sum += power * fade(gen) * std::pow(r, -s.alpha);
    }
    return sum;
  };

  int outages = 0;
  for (int t = 0; t < s.realizations; ++t) {
    const double signal = s.p_g * fade(gen) * std::pow(s.d, -s.alpha);
    const double interference = field(count_c, s.p_c) + field(count_g, s.p_g);
    if (interference > 0.0 && signal / interference <= s.gamma) ++outages;
  }
  return static_cast<double>(outages) / s.realizations;
}

FixedPoint2 solve_target_sinr_2x2(int k, int g1, int g2, const GainTable& gains, double gamma,
                                  double p_c, double noise_w) {
  const double h11 = gains.own(g1, 0, k);
  const double h22 = gains.own(g2, 0, k);
  const double h21 = gains.mg_rx(g2, g1, 0, k);  // g2's transmitter at g1's receiver
  const double h12 = gains.mg_rx(g1, g2, 0, k);
  const double b1 = gamma * (p_c * gains.cu_rx(k, g1, 0) + noise_w);
  const double b2 = gamma * (p_c * gains.cu_rx(k, g2, 0) + noise_w);
  // [h11, -g h21; -g h12, h22] p = b
  const double det = h11 * h22 - gamma * gamma * h21 * h12;
  FixedPoint2 out;
  if (det == 0.0) return out;
  out.p[0] = (b1 * h22 + gamma * h21 * b2) / det;
  out.p[1] = (h11 * b2 + gamma * h12 * b1) / det;
  out.positive = det > 0.0 && out.p[0] > 0.0 && out.p[1] > 0.0;
  return out;
}

Assignment best_partition(int num_channels, int num_groups,
                          const std::function<double(const Assignment&)>& score) {
  if (num_groups > 6 || num_channels > 3) throw std::invalid_argument("best_partition: too large");
  const int base = num_channels + 1;
  long total = 1;
  for (int g = 0; g < num_groups; ++g) total *= base;
  Assignment best(num_channels, num_groups);
  double best_score = -std::numeric_limits<double>::infinity();
  for (long code = 0; code < total; ++code) {
    Assignment a(num_channels, num_groups);
    long c = code;
    for (int g = 0; g < num_groups; ++g) {
      const int slot = static_cast<int>(c % base);
      c /= base;
      if (slot > 0) a.assign(g, slot - 1);
    }
    const double s = score(a);
    if (s > best_score) {
      best_score = s;
      best = a;
    }
  }
  return best;
}

}  // namespace d2d::oracle
