#include <cmath>
#include <numbers>

#include "d2dsim/channel.hpp"
#include "d2dsim/rng.hpp"
#include "doctest.h"

using namespace d2d;

TEST_SUITE("channel") {
  TEST_CASE("gain formula hand values") {
    CHECK(link_gain(10.0, 0.0, 0.0, 0.0, 1.0, 1.0) == doctest::Approx(1.0));
    const double g = link_gain(10.0, 0.0, 3.6, 0.0, 1.0, 1.0);
    CHECK(10.0 * std::log10(g) == doctest::Approx(-36.0).epsilon(1e-12));
    // kappa and shadowing enter in dB, fading multiplies
    const double h = link_gain(100.0, 20.0, 3.0, 4.0, 0.5, 1.0);
    CHECK(10.0 * std::log10(h / 0.5) == doctest::Approx(-20.0 - 60.0 - 4.0).epsilon(1e-12));
  }

  TEST_CASE("distance is clamped to the minimum link distance") {
    CHECK(link_gain(0.0, 10.0, 3.6, 0.0, 1.0, 1.0) == link_gain(1.0, 10.0, 3.6, 0.0, 1.0, 1.0));
    CHECK(link_gain(0.2, 10.0, 3.6, 0.0, 1.0, 2.0) == link_gain(2.0, 10.0, 3.6, 0.0, 1.0, 2.0));
  }

  TEST_CASE("gain strictly decreases with distance without shadowing or fading") {
    double prev = INFINITY;
    for (double d = 1.0; d < 2000.0; d *= 1.37) {
      const double g = link_gain(d, 20.1, 3.6, 0.0, 1.0, 1.0);
      CHECK(g < prev);
      prev = g;
    }
  }

  TEST_CASE("log of unit-mean exponential fading has the analytic mean") {
    Rng rng(2024);
    const int n = 200000;
    double sum = 0.0, mean = 0.0;
    for (int i = 0; i < n; ++i) {
      const double f = rng.exponential();
      mean += f;
      sum += 10.0 * std::log10(f);
    }
    const double analytic = -std::numbers::egamma / std::numbers::ln10 * 10.0;
    CHECK(analytic == doctest::Approx(-2.507).epsilon(1e-3));
    CHECK(std::abs(sum / n - analytic) < 0.5);
    CHECK(mean / n == doctest::Approx(1.0).epsilon(0.01));
  }

  TEST_CASE("shadowing draws have the configured spread") {
    Rng rng(7);
    const int n = 200000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = 8.0 * rng.normal();
      s += x;
      s2 += x * x;
    }
    CHECK(std::abs(s / n) < 0.1);
    CHECK(std::sqrt(s2 / n) == doctest::Approx(8.0).epsilon(0.01));
  }

  TEST_CASE("sampled gains match a term-by-term re-evaluation") {
    ScenarioConfig c;
    c.num_cus = 3;
    c.num_mgs = 4;
    c.receivers_per_mg = {1, 2, 3, 2};
    const auto topo = generate_topology(c, 11);
    const auto draws = sample_link_draws(topo, c, 12);
    const auto t = compose_gains(topo, c, draws);
    auto term = [&](Point a, Point b, double shadow_db, double fading) {
      const double d = std::max(std::hypot(a.x - b.x, a.y - b.y), c.min_link_distance);
      const double db = -c.pathloss_constant - 10.0 * c.pathloss_exponent * std::log10(d) - shadow_db;
      return std::pow(10.0, db / 10.0) * fading;
    };
    const std::size_t C = 3, total_rx = 8;
    for (std::size_t k = 0; k < C; ++k) {
      CHECK(t.cu_bs(static_cast<int>(k)) ==
            doctest::Approx(term(topo.cu_positions[k], {}, draws.cu_bs_shadow[k], draws.cu_bs_fading[k]))
                .epsilon(1e-12));
    }
    for (std::size_t g = 0; g < 4; ++g) {
      for (std::size_t k = 0; k < C; ++k) {
        CHECK(t.mg_bs(static_cast<int>(g), static_cast<int>(k)) ==
              doctest::Approx(term(topo.mgtx_positions[g], {}, draws.mg_bs_shadow[g],
                                   draws.mg_bs_fading[g * C + k]))
                  .epsilon(1e-12));
      }
    }
    for (std::size_t j = 0; j < 4; ++j) {
      std::size_t rx = 0;
      for (std::size_t g = 0; g < 4; ++g) {
        for (std::size_t r = 0; r < topo.receiver_positions[g].size(); ++r, ++rx) {
          const std::size_t link = j * total_rx + rx;
          for (std::size_t k = 0; k < C; ++k) {
            CHECK(t.mg_rx(static_cast<int>(j), static_cast<int>(g), static_cast<int>(r),
                          static_cast<int>(k)) ==
                  doctest::Approx(term(topo.mgtx_positions[j], topo.receiver_positions[g][r],
                                       draws.mg_rx_shadow[link], draws.mg_rx_fading[link * C + k]))
                      .epsilon(1e-12));
          }
          for (std::size_t k = 0; k < C; ++k) {
            const std::size_t cl = k * total_rx + rx;
            if (j == 0) {
              CHECK(t.cu_rx(static_cast<int>(k), static_cast<int>(g), static_cast<int>(r)) ==
                    doctest::Approx(term(topo.cu_positions[k], topo.receiver_positions[g][r],
                                         draws.cu_rx_shadow[cl], draws.cu_rx_fading[cl]))
                        .epsilon(1e-12));
            }
          }
        }
      }
    }
  }

  TEST_CASE("same topology and seed give a bit-identical table") {
    ScenarioConfig c;
    const auto topo = generate_topology(c, 5);
    CHECK(sample_gains(topo, c, 9) == sample_gains(topo, c, 9));
    CHECK_FALSE(sample_gains(topo, c, 9) == sample_gains(topo, c, 10));
  }

  TEST_CASE("hand-set tables") {
    GainTable t(2, {1, 3});
    CHECK(t.num_channels() == 2);
    CHECK(t.num_groups() == 2);
    CHECK(t.receivers(1) == 3);
    t.own(1, 2, 1) = 5.0;
    CHECK(t.mg_rx(1, 1, 2, 1) == 5.0);
    t.fill(0.25);
    CHECK(t.cu_rx(1, 1, 2) == 0.25);
    CHECK_THROWS(GainTable(0, {1}));
    CHECK_THROWS(GainTable(1, {0}));
  }
}
