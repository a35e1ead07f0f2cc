#include "d2dsim/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace d2d {

Assignment::Assignment(int num_channels, int num_groups)
    : num_channels_(num_channels), channel_of_(static_cast<std::size_t>(num_groups), -1) {
  if (num_channels < 1) throw std::invalid_argument("Assignment: need at least one channel");
  if (num_groups < 0) throw std::invalid_argument("Assignment: negative group count");
}

void Assignment::assign(int g, int k) {
  if (k < 0 || k >= num_channels_) throw std::out_of_range("Assignment: channel out of range");
  channel_of_.at(static_cast<std::size_t>(g)) = k;
}

void Assignment::unassign(int g) { channel_of_.at(static_cast<std::size_t>(g)) = -1; }

std::vector<int> Assignment::groups_on(int k) const {
  std::vector<int> out;
  for (int g = 0; g < num_groups(); ++g) {
    if (channel_of_[static_cast<std::size_t>(g)] == k) out.push_back(g);
  }
  return out;
}

int Assignment::group_count(int k) const {
  return static_cast<int>(std::count(channel_of_.begin(), channel_of_.end(), k));
}

std::vector<int> Assignment::unassigned() const { return groups_on(-1); }

PowerProfile PowerProfile::uniform(int num_channels, int num_groups, double p_c, double p_g) {
  return {std::vector<double>(static_cast<std::size_t>(num_channels), p_c),
          std::vector<double>(static_cast<std::size_t>(num_groups), p_g)};
}

double shannon_rate(double bandwidth_hz, double sinr) {
  return bandwidth_hz * std::log2(1.0 + sinr);
}

double bs_interference(int k, const Assignment& assignment, const PowerProfile& powers,
                       const GainTable& gains) {
  double sum = 0.0;
  for (int g = 0; g < assignment.num_groups(); ++g) {
    if (assignment.a(g, k)) sum += powers.p_g[static_cast<std::size_t>(g)] * gains.mg_bs(g, k);
  }
  return sum;
}

double sinr_cu(int k, const Assignment& assignment, const PowerProfile& powers,
               const GainTable& gains, double noise_w) {
  const double signal = powers.p_c.at(static_cast<std::size_t>(k)) * gains.cu_bs(k);
  return signal / (bs_interference(k, assignment, powers, gains) + noise_w);
}

double rate_cu(int k, const Assignment& assignment, const PowerProfile& powers,
               const GainTable& gains, const LinkBudget& budget) {
  return shannon_rate(budget.bandwidth_hz, sinr_cu(k, assignment, powers, gains, budget.noise_w));
}

double rate_cu_solo(int k, const PowerProfile& powers, const GainTable& gains,
                    const LinkBudget& budget) {
  const double snr = powers.p_c.at(static_cast<std::size_t>(k)) * gains.cu_bs(k) / budget.noise_w;
  return shannon_rate(budget.bandwidth_hz, snr);
}

double sinr_receiver(int g, int r, int k, const Assignment& assignment,
                     const PowerProfile& powers, const GainTable& gains, double noise_w) {
  double interference = powers.p_c.at(static_cast<std::size_t>(k)) * gains.cu_rx(k, g, r);
  for (int j = 0; j < assignment.num_groups(); ++j) {
    if (j != g && assignment.a(j, k)) {
      interference += powers.p_g[static_cast<std::size_t>(j)] * gains.mg_rx(j, g, r, k);
    }
  }
  return powers.p_g.at(static_cast<std::size_t>(g)) * gains.own(g, r, k) /
         (interference + noise_w);
}

double sinr_mg_worst(int g, int k, const Assignment& assignment, const PowerProfile& powers,
                     const GainTable& gains, double noise_w) {
  if (gains.receivers(g) < 1) throw std::invalid_argument("sinr_mg_worst: group has no receivers");
  double worst = std::numeric_limits<double>::infinity();
  for (int r = 0; r < gains.receivers(g); ++r) {
    worst = std::min(worst, sinr_receiver(g, r, k, assignment, powers, gains, noise_w));
  }
  return worst;
}

double rate_mg(int g, int k, const Assignment& assignment, const PowerProfile& powers,
               const GainTable& gains, const LinkBudget& budget) {
  return shannon_rate(budget.bandwidth_hz,
                      sinr_mg_worst(g, k, assignment, powers, gains, budget.noise_w));
}

ThroughputGain throughput_gain(int k, const Assignment& assignment, const PowerProfile& powers,
                               const GainTable& gains, const LinkBudget& budget) {
  ThroughputGain out;
  for (int g : assignment.groups_on(k)) {
    out.mg_sum += rate_mg(g, k, assignment, powers, gains, budget);
  }
  const double shared = rate_cu(k, assignment, powers, gains, budget);
  const double solo = rate_cu_solo(k, powers, gains, budget);
  // Interference can only lower the CU rate; clamp rounding noise.
  out.cu_loss = std::max(0.0, solo - shared);
  out.gain = out.mg_sum - out.cu_loss;
  return out;
}

double p_c_min(int k, const Assignment& assignment, const PowerProfile& powers,
               const GainTable& gains, const LinkBudget& budget, double min_rate) {
  const double h = gains.cu_bs(k);
  if (!(h > 0.0)) throw std::domain_error("p_c_min: CU link to the BS is blocked");
  const double target = std::exp2(min_rate / budget.bandwidth_hz) - 1.0;
  return target * (budget.noise_w + bs_interference(k, assignment, powers, gains)) / h;
}

RateLowerBound rate_lower_bound(const Assignment& assignment, const PowerProfile& powers,
                             const GainTable& gains, double p_g_max) {
  auto safe_log2 = [](double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw std::domain_error("rate_lower_bound: non-positive argument inside log");
    }
    return std::log2(x);
  };
  RateLowerBound out;
  for (int k = 0; k < assignment.num_channels(); ++k) {
    const auto groups = assignment.groups_on(k);
    if (groups.empty()) continue;
    double worst_case = 0.0;
    for (int g : groups) worst_case += p_g_max * gains.mg_bs(g, k);
    const double own = safe_log2(powers.p_c.at(static_cast<std::size_t>(k)) * gains.cu_bs(k));
    out.bound += own - safe_log2(worst_case);
    out.interference_limited_rate += own - safe_log2(bs_interference(k, assignment, powers, gains));
  }
  return out;
}

double gamma_fn(double x) {
  // Lanczos, g = 7, n = 9 (relative error ~1e-15 for x > 0.5).
  static constexpr std::array<double, 9> kCoeff = {
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  if (x < 0.5) {
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma_fn(1.0 - x));
  }
  x -= 1.0;
  double a = kCoeff[0];
  const double t = x + 7.5;
  for (std::size_t i = 1; i < kCoeff.size(); ++i) a += kCoeff[i] / (x + static_cast<double>(i));
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

double outage_probability(double gamma_o, double alpha, double d_gr, double lambda_c,
                          double lambda_g, double p_c, double p_g) {
  if (!(alpha > 2.0)) throw std::domain_error("outage_probability: requires alpha > 2");
  if (!(p_g > 0.0)) throw std::invalid_argument("outage_probability: p_g must be > 0");
  if (gamma_o < 0.0 || d_gr < 0.0 || lambda_c < 0.0 || lambda_g < 0.0 || p_c < 0.0) {
    throw std::invalid_argument("outage_probability: negative argument");
  }
  const double delta = 2.0 / alpha;
  const double chi = std::numbers::pi * gamma_fn(1.0 + delta) * gamma_fn(1.0 - delta);
  const double density = lambda_c * std::pow(p_c / p_g, delta) + lambda_g;
  const double exponent = chi * std::pow(gamma_o, delta) * d_gr * d_gr * density;
  return -std::expm1(-exponent);
}

}  // namespace d2d
