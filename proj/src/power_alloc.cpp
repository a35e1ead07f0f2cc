#include "d2dsim/power_alloc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace d2d {

PowerParams PowerParams::from_config(const ScenarioConfig& config) {
  PowerParams p;
  p.p_c_max = config.p_c_max_watts();
  p.p_g_max = config.p_g_max_watts();
  p.gamma_c = config.gamma_cu();
  p.gamma_r = config.gamma_mg();
  p.budget = {config.noise_watts(), config.bandwidth_per_channel};
  p.interference_cap = config.interference_cap;
  p.stim_epsilon = config.stim_epsilon;
  p.stim_max_iterations = config.stim_max_iterations;
  return p;
}

double PowerParams::interference_budget(int k, const GainTable& gains) const {
  if (interference_cap > 0.0) return interference_cap;
  return std::max(0.0, p_c_max * gains.cu_bs(k) / gamma_c - budget.noise_w);
}

// ---------------------------------------------------------------------------

double PowerPlane::slack(const std::array<double, 3>& p) const {
  return coeff[0] * p[0] + coeff[1] * p[1] + coeff[2] * p[2] - rhs;
}

namespace {

bool plane_holds(const PowerPlane& plane, const std::array<double, 3>& p, double tol) {
  const double scale = std::abs(plane.coeff[0] * p[0]) + std::abs(plane.coeff[1] * p[1]) +
                       std::abs(plane.coeff[2] * p[2]) + std::abs(plane.rhs);
  return plane.slack(p) >= -tol * scale;
}

bool in_box(const std::array<double, 3>& p, const std::array<double, 3>& box_max, double tol) {
  for (std::size_t i = 0; i < 3; ++i) {
    if (!std::isfinite(p[i]) || p[i] < -tol * box_max[i] || p[i] > box_max[i] * (1.0 + tol)) {
      return false;
    }
  }
  return true;
}

std::array<double, 3> clamp_to_box(std::array<double, 3> p, const std::array<double, 3>& box_max) {
  for (std::size_t i = 0; i < 3; ++i) p[i] = std::clamp(p[i], 0.0, box_max[i]);
  return p;
}

}  // namespace

std::vector<CornerCandidate> enumerate_corners(std::span<const PowerPlane> planes,
                                               const std::array<double, 3>& box_max,
                                               double tol) {
  std::vector<CornerCandidate> out;
  const int n = static_cast<int>(planes.size());

  auto finish = [&](CornerCandidate c) {
    bool ok = in_box(c.powers, box_max, tol);
    for (const auto& plane : planes) ok = ok && plane_holds(plane, c.powers, tol);
    c.feasible = ok;
    out.push_back(c);
  };

  // Regions 1-3: variable `fixed` at its maximum, two planes active.
  for (std::size_t fixed = 0; fixed < 3; ++fixed) {
    const std::size_t a = fixed == 0 ? 1 : 0;
    const std::size_t b = fixed == 2 ? 1 : 2;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const auto& pi = planes[static_cast<std::size_t>(i)];
        const auto& pj = planes[static_cast<std::size_t>(j)];
        const double a11 = pi.coeff[a], a12 = pi.coeff[b];
        const double a21 = pj.coeff[a], a22 = pj.coeff[b];
        const double b1 = pi.rhs - pi.coeff[fixed] * box_max[fixed];
        const double b2 = pj.rhs - pj.coeff[fixed] * box_max[fixed];
        const double det = a11 * a22 - a12 * a21;
        if (std::abs(det) <= 1e-14 * (std::abs(a11 * a22) + std::abs(a12 * a21))) continue;
        CornerCandidate c;
        c.region_id = static_cast<int>(fixed) + 1;
        c.powers[fixed] = box_max[fixed];
        c.powers[a] = (b1 * a22 - a12 * b2) / det;
        c.powers[b] = (a11 * b2 - b1 * a21) / det;
        c.planes = {i, j};
        finish(c);
      }
    }
  }

  // Regions 4-6: two variables at maximum, one plane active.
  struct TwoFixed {
    int region;
    std::size_t f1, f2, free;
  };
  constexpr std::array<TwoFixed, 3> kTwo = {{{4, 0, 1, 2}, {5, 0, 2, 1}, {6, 1, 2, 0}}};
  for (const auto& spec : kTwo) {
    for (int i = 0; i < n; ++i) {
      const auto& plane = planes[static_cast<std::size_t>(i)];
      if (plane.coeff[spec.free] == 0.0) continue;
      CornerCandidate c;
      c.region_id = spec.region;
      c.powers[spec.f1] = box_max[spec.f1];
      c.powers[spec.f2] = box_max[spec.f2];
      c.powers[spec.free] = (plane.rhs - plane.coeff[spec.f1] * box_max[spec.f1] -
                             plane.coeff[spec.f2] * box_max[spec.f2]) /
                            plane.coeff[spec.free];
      c.planes = {i, -1};
      finish(c);
    }
  }

  CornerCandidate all_max;
  all_max.region_id = 7;
  all_max.powers = box_max;
  finish(all_max);
  return out;
}

std::vector<PowerPlane> sinr_planes_gk2(int k, int g1, int g2, const GainTable& gains,
                                        const PowerParams& params) {
  std::vector<PowerPlane> planes;
  const double n0 = params.budget.noise_w;
  const double gr = params.gamma_r;
  for (int r = 0; r < gains.receivers(g1); ++r) {
    planes.push_back({{-gr * gains.cu_rx(k, g1, r), gains.own(g1, r, k),
                       -gr * gains.mg_rx(g2, g1, r, k)},
                      gr * n0});
  }
  for (int r = 0; r < gains.receivers(g2); ++r) {
    planes.push_back({{-gr * gains.cu_rx(k, g2, r), -gr * gains.mg_rx(g1, g2, r, k),
                       gains.own(g2, r, k)},
                      gr * n0});
  }
  const double gc = params.gamma_c;
  planes.push_back(
      {{gains.cu_bs(k), -gc * gains.mg_bs(g1, k), -gc * gains.mg_bs(g2, k)}, gc * n0});
  return planes;
}

double channel_sum_rate(int k, std::span<const int> groups, double p_c,
                        std::span<const double> p_groups, const GainTable& gains,
                        const LinkBudget& budget) {
  double bs_interference = 0.0;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    bs_interference += p_groups[i] * gains.mg_bs(groups[i], k);
  }
  double total = shannon_rate(budget.bandwidth_hz,
                              p_c * gains.cu_bs(k) / (bs_interference + budget.noise_w));
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const int g = groups[i];
    double worst = std::numeric_limits<double>::infinity();
    for (int r = 0; r < gains.receivers(g); ++r) {
      double interference = p_c * gains.cu_rx(k, g, r) + budget.noise_w;
      for (std::size_t j = 0; j < groups.size(); ++j) {
        if (j != i) interference += p_groups[j] * gains.mg_rx(groups[j], g, r, k);
      }
      worst = std::min(worst, p_groups[i] * gains.own(g, r, k) / interference);
    }
    total += shannon_rate(budget.bandwidth_hz, worst);
  }
  return total;
}

CornerResult corner_search_gk2(int k, int g1, int g2, const GainTable& gains,
                               const PowerParams& params) {
  if (g1 == g2) throw std::invalid_argument("corner_search_gk2: groups must differ");
  const auto planes = sinr_planes_gk2(k, g1, g2, gains, params);
  const std::array<double, 3> box{params.p_c_max, params.p_g_max, params.p_g_max};
  CornerResult result;
  result.candidates = enumerate_corners(planes, box);
  const std::array<int, 2> groups{g1, g2};
  for (auto& c : result.candidates) {
    if (!c.feasible) continue;
    c.powers = clamp_to_box(c.powers, box);
    const std::array<double, 2> pg{c.powers[1], c.powers[2]};
    c.objective = channel_sum_rate(k, groups, c.powers[0], pg, gains, params.budget);
    // Candidates arrive in ascending region order: strict improvement only.
    if (!result.feasible || c.objective > result.objective) {
      result.feasible = true;
      result.region_id = c.region_id;
      result.powers = c.powers;
      result.objective = c.objective;
    }
  }
  return result;
}

// ---------------------------------------------------------------------------

PairPower pair_power(int k, int g, const GainTable& gains, const PowerParams& params) {
  struct Line {
    double cc, cg, rhs;  // cc p_c + cg p_g >= rhs
  };
  const double n0 = params.budget.noise_w;
  std::vector<Line> lines;
  lines.push_back({gains.cu_bs(k), -params.gamma_c * gains.mg_bs(g, k), params.gamma_c * n0});
  for (int r = 0; r < gains.receivers(g); ++r) {
    lines.push_back({-params.gamma_r * gains.cu_rx(k, g, r), gains.own(g, r, k),
                     params.gamma_r * n0});
  }
  const double pc_max = params.p_c_max;
  const double pg_max = params.p_g_max;

  std::vector<std::array<double, 2>> candidates{{pc_max, pg_max}, {pc_max, 0.0}, {0.0, pg_max}};
  for (const auto& l : lines) {
    if (l.cg != 0.0) candidates.push_back({pc_max, (l.rhs - l.cc * pc_max) / l.cg});
    if (l.cc != 0.0) candidates.push_back({(l.rhs - l.cg * pg_max) / l.cc, pg_max});
  }

  constexpr double kTol = 1e-9;
  auto feasible = [&](const std::array<double, 2>& p) {
    if (!std::isfinite(p[0]) || !std::isfinite(p[1])) return false;
    if (p[0] < -kTol * pc_max || p[0] > pc_max * (1 + kTol)) return false;
    if (p[1] < -kTol * pg_max || p[1] > pg_max * (1 + kTol)) return false;
    for (const auto& l : lines) {
      const double scale = std::abs(l.cc * p[0]) + std::abs(l.cg * p[1]) + std::abs(l.rhs);
      if (l.cc * p[0] + l.cg * p[1] - l.rhs < -kTol * scale) return false;
    }
    return true;
  };

  PairPower best;
  const std::array<int, 1> group{g};
  for (auto p : candidates) {
    if (!feasible(p)) continue;
    p[0] = std::clamp(p[0], 0.0, pc_max);
    p[1] = std::clamp(p[1], 0.0, pg_max);
    const std::array<double, 1> pg{p[1]};
    const double value = channel_sum_rate(k, group, p[0], pg, gains, params.budget);
    if (!best.feasible || value > best.objective) best = {p[0], p[1], true, value};
  }
  if (!best.feasible) {
    best.p_c = pc_max;
    best.p_g = 0.0;
    const std::array<double, 1> pg{0.0};
    best.objective = channel_sum_rate(k, group, pc_max, pg, gains, params.budget);
  }
  return best;
}

// ---------------------------------------------------------------------------

StimChannelResult stim_channel(int k, std::span<const int> groups, const GainTable& gains,
                               const PowerParams& params,
                               std::vector<std::vector<double>>* trace) {
  StimChannelResult out;
  const std::size_t n = groups.size();
  if (n == 0) {
    out.p_c = params.p_c_max;
    out.converged = true;
    return out;
  }
  const double budget = params.interference_budget(k, gains);
  const double share = budget / static_cast<double>(n);
  out.cap.resize(n);
  out.p_g.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double h = gains.mg_bs(groups[i], k);
    out.cap[i] = h > 0.0 ? std::min(params.p_g_max, share / h) : params.p_g_max;
    out.p_g[i] = std::min(params.p_g_max / static_cast<double>(n), out.cap[i]);
  }
  if (trace) trace->push_back(out.p_g);

  const double p_c = params.p_c_max;
  const double n0 = params.budget.noise_w;
  std::vector<double> next(n);
  for (int t = 1; t <= params.stim_max_iterations; ++t) {
    double max_change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const int g = groups[i];
      double worst = std::numeric_limits<double>::infinity();
      for (int r = 0; r < gains.receivers(g); ++r) {
        double interference = p_c * gains.cu_rx(k, g, r) + n0;
        for (std::size_t j = 0; j < n; ++j) {
          if (j != i) interference += out.p_g[j] * gains.mg_rx(groups[j], g, r, k);
        }
        worst = std::min(worst, out.p_g[i] * gains.own(g, r, k) / interference);
      }
      double candidate = out.cap[i];
      if (worst > 0.0) {
        const double scaled = params.gamma_r / worst * out.p_g[i];
        if (scaled <= out.cap[i]) candidate = scaled;
      }
      next[i] = candidate;
      const double base = std::max(out.p_g[i], std::numeric_limits<double>::min());
      max_change = std::max(max_change, std::abs(candidate - out.p_g[i]) / base);
    }
    out.p_g.swap(next);
    out.iterations = t;
    if (trace) trace->push_back(out.p_g);
    if (max_change < params.stim_epsilon) {
      out.converged = true;
      break;
    }
  }

  double interference = 0.0;
  for (std::size_t i = 0; i < n; ++i) interference += out.p_g[i] * gains.mg_bs(groups[i], k);
  const double h = gains.cu_bs(k);
  if (h > 0.0) {
    const double needed = params.gamma_c * (n0 + interference) / h;
    out.p_c = std::min(params.p_c_max, needed);
  } else {
    out.p_c = params.p_c_max;
  }
  return out;
}

StimResult stim_allocate(const Assignment& assignment, const GainTable& gains,
                         const PowerParams& params) {
  StimResult result;
  result.powers = PowerProfile::uniform(assignment.num_channels(), assignment.num_groups(),
                                        params.p_c_max, 0.0);
  for (int k = 0; k < assignment.num_channels(); ++k) {
    const auto groups = assignment.groups_on(k);
    if (groups.empty()) continue;
    const auto ch = stim_channel(k, groups, gains, params);
    result.powers.p_c[static_cast<std::size_t>(k)] = ch.p_c;
    for (std::size_t i = 0; i < groups.size(); ++i) {
      result.powers.p_g[static_cast<std::size_t>(groups[i])] = ch.p_g[i];
    }
    result.converged = result.converged && ch.converged;
    result.max_iterations = std::max(result.max_iterations, ch.iterations);
  }
  return result;
}

}  // namespace d2d
