#include <cmath>
#include <numbers>
#include <random>

#include "d2dsim/metrics.hpp"
#include "doctest.h"

using namespace d2d;

namespace {

// One channel, one group with `rx` receivers.
struct Fixture {
  GainTable t;
  Assignment a;
  PowerProfile p;
  explicit Fixture(int rx = 1) : t(1, {rx}), a(1, 1), p(PowerProfile::uniform(1, 1, 1.0, 1.0)) {}
};

}  // namespace

TEST_SUITE("metrics") {
  TEST_CASE("assignment bookkeeping") {
    Assignment a(3, 4);
    a.assign(2, 1);
    a.assign(0, 1);
    a.assign(3, 2);
    CHECK(a.groups_on(1) == std::vector<int>{0, 2});
    CHECK(a.group_count(0) == 0);
    CHECK(a.a(3, 2));
    CHECK_FALSE(a.a(3, 1));
    CHECK(a.unassigned() == std::vector<int>{1});
    a.assign(2, 0);  // moves, never on two channels
    CHECK(a.groups_on(1) == std::vector<int>{0});
    CHECK(a.channel_of(2) == 0);
    a.unassign(2);
    CHECK_FALSE(a.assigned(2));
    CHECK_THROWS(a.assign(0, 3));
  }

  TEST_CASE("CU SINR examples") {
    Fixture f;
    const double n0 = 1e-12;
    f.t.cu_bs(0) = 1e-6;
    f.t.mg_bs(0, 0) = 1e-6;
    f.p.p_c[0] = n0 / 1e-6;
    CHECK(sinr_cu(0, f.a, f.p, f.t, n0) == doctest::Approx(1.0));
    f.p.p_c[0] = 0.0;
    CHECK(sinr_cu(0, f.a, f.p, f.t, n0) == 0.0);
    f.a.assign(0, 0);
    f.p.p_c[0] = 1.0;
    f.p.p_g[0] = 0.5;
    // 1e-6 / (1e-12 + 0.5e-6)
    CHECK(sinr_cu(0, f.a, f.p, f.t, n0) == doctest::Approx(1.999996).epsilon(1e-7));
  }

  TEST_CASE("rates") {
    CHECK(shannon_rate(1e6, 0.0) == 0.0);
    CHECK(shannon_rate(1e6, 1.0) == doctest::Approx(1e6));
    Fixture f;
    f.t.cu_bs(0) = 1e-9;
    f.t.mg_bs(0, 0) = 1e-10;
    const LinkBudget b{1e-13, 1e6};
    CHECK(rate_cu(0, f.a, f.p, f.t, b) == rate_cu_solo(0, f.p, f.t, b));
    f.a.assign(0, 0);
    CHECK(rate_cu(0, f.a, f.p, f.t, b) < rate_cu_solo(0, f.p, f.t, b));
  }

  TEST_CASE("worst-receiver SINR") {
    Fixture f(3);
    const double n0 = 1e-13;
    f.a.assign(0, 0);
    const double own[3] = {3e-9, 1e-9, 2e-9};
    const double cu[3] = {1e-11, 2e-12, 4e-11};
    double expect = INFINITY;
    for (int r = 0; r < 3; ++r) {
      f.t.own(0, r, 0) = own[r];
      f.t.cu_rx(0, 0, r) = cu[r];
      expect = std::min(expect, own[r] / (n0 + cu[r]));
    }
    CHECK(sinr_mg_worst(0, 0, f.a, f.p, f.t, n0) == doctest::Approx(expect));
    for (int r = 0; r < 3; ++r) {
      CHECK(sinr_receiver(0, r, 0, f.a, f.p, f.t, n0) ==
            doctest::Approx(own[r] / (n0 + cu[r])));
    }
    f.t.own(0, 1, 0) = 0.0;
    CHECK(rate_mg(0, 0, f.a, f.p, f.t, {n0, 1e6}) == 0.0);

    Fixture single;
    single.a.assign(0, 0);
    single.t.own(0, 0, 0) = 1e-9;
    single.t.cu_rx(0, 0, 0) = 1e-12;
    CHECK(sinr_mg_worst(0, 0, single.a, single.p, single.t, n0) ==
          sinr_receiver(0, 0, 0, single.a, single.p, single.t, n0));
  }

  TEST_CASE("co-channel groups interfere with each other's receivers") {
    GainTable t(1, {1, 1});
    Assignment a(1, 2);
    a.assign(0, 0);
    a.assign(1, 0);
    auto p = PowerProfile::uniform(1, 2, 1.0, 0.5);
    p.p_g[1] = 0.25;
    t.own(0, 0, 0) = 1e-9;
    t.mg_rx(1, 0, 0, 0) = 1e-11;  // group 1's transmitter at group 0's receiver
    t.cu_rx(0, 0, 0) = 2e-12;
    const double n0 = 1e-13;
    CHECK(sinr_receiver(0, 0, 0, a, p, t, n0) ==
          doctest::Approx(0.5e-9 / (n0 + 2e-12 + 0.25e-11)));
  }

  TEST_CASE("SINR monotonicity on random instances") {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(0.1, 1.0);
    const double n0 = 1e-13;
    for (int i = 0; i < 200; ++i) {
      GainTable t(1, {2, 2});
      t.fill(0.0);
      t.cu_bs(0) = 1e-10 * u(gen);
      for (int g = 0; g < 2; ++g) {
        t.mg_bs(g, 0) = 1e-12 * u(gen);
        for (int r = 0; r < 2; ++r) {
          t.cu_rx(0, g, r) = 1e-11 * u(gen);
          for (int j = 0; j < 2; ++j) t.mg_rx(j, g, r, 0) = (j == g ? 1e-9 : 1e-11) * u(gen);
        }
      }
      Assignment a(1, 2);
      a.assign(0, 0);
      a.assign(1, 0);
      PowerProfile p{{u(gen)}, {u(gen), u(gen)}};
      const double base_c = sinr_cu(0, a, p, t, n0);
      const double base_g = sinr_mg_worst(0, 0, a, p, t, n0);
      CHECK(base_c >= 0.0);
      CHECK(base_g >= 0.0);
      auto up = p;
      up.p_c[0] *= 1.5;
      CHECK(sinr_cu(0, a, up, t, n0) > base_c);
      CHECK(sinr_mg_worst(0, 0, a, up, t, n0) <= base_g);
      up = p;
      up.p_g[0] *= 1.5;
      CHECK(sinr_mg_worst(0, 0, a, up, t, n0) > base_g);
      CHECK(sinr_cu(0, a, up, t, n0) <= base_c);
      up = p;
      up.p_g[1] *= 1.5;
      CHECK(sinr_mg_worst(0, 0, a, up, t, n0) <= base_g);
      const LinkBudget b{n0, 1e6};
      CHECK(throughput_gain(0, a, p, t, b).cu_loss >= 0.0);
    }
  }

  TEST_CASE("throughput gain") {
    Fixture f;
    const LinkBudget b{1e-13, 1e6};
    f.t.cu_bs(0) = 1e-9;
    f.t.mg_bs(0, 0) = 1e-12;
    f.t.own(0, 0, 0) = 1e-9;
    f.t.cu_rx(0, 0, 0) = 1e-12;
    CHECK(throughput_gain(0, f.a, f.p, f.t, b).gain == 0.0);
    f.a.assign(0, 0);
    const auto g = throughput_gain(0, f.a, f.p, f.t, b);
    CHECK(g.gain > 0.0);
    CHECK(g.cu_loss >= 0.0);
    CHECK(g.gain == doctest::Approx(g.mg_sum - g.cu_loss));
  }

  TEST_CASE("minimum CU power") {
    Fixture f;
    const LinkBudget b{1e-13, 1e6};
    f.t.cu_bs(0) = 1e-9;
    f.t.mg_bs(0, 0) = 2e-12;
    CHECK(p_c_min(0, f.a, f.p, f.t, b, 0.0) == 0.0);
    CHECK(p_c_min(0, f.a, f.p, f.t, b, 1e6) == doctest::Approx(1e-13 / 1e-9));
    f.a.assign(0, 0);
    f.p.p_g[0] = 0.3;
    const double rmin = 2.3e6;
    auto q = f.p;
    q.p_c[0] = p_c_min(0, f.a, f.p, f.t, b, rmin);
    CHECK(rate_cu(0, f.a, q, f.t, b) == doctest::Approx(rmin).epsilon(1e-12));
    f.t.cu_bs(0) = 0.0;
    CHECK_THROWS_AS(p_c_min(0, f.a, f.p, f.t, b, rmin), std::domain_error);
  }

  TEST_CASE("interference-limited bound: equality at maximum power, strict below") {
    Fixture f;
    f.t.cu_bs(0) = 1e-9;
    f.t.mg_bs(0, 0) = 3e-12;
    f.a.assign(0, 0);
    f.p.p_c[0] = 0.7;
    f.p.p_g[0] = 1.0;
    auto b = rate_lower_bound(f.a, f.p, f.t, 1.0);
    CHECK(b.interference_limited_rate == doctest::Approx(b.bound).epsilon(1e-12));
    CHECK(b.bound == doctest::Approx(std::log2(0.7e-9 / 3e-12)));
    f.p.p_g[0] = 0.5;
    b = rate_lower_bound(f.a, f.p, f.t, 1.0);
    CHECK(b.interference_limited_rate > b.bound);
    f.t.mg_bs(0, 0) = 0.0;
    CHECK_THROWS_AS(rate_lower_bound(f.a, f.p, f.t, 1.0), std::domain_error);
  }

  TEST_CASE("gamma function against the standard library") {
    for (double x = 0.05; x < 12.0; x += 0.173) {
      CHECK(gamma_fn(x) == doctest::Approx(std::tgamma(x)).epsilon(1e-10));
    }
    for (double x : {-0.5, -1.5, -2.3}) {
      CHECK(gamma_fn(x) == doctest::Approx(std::tgamma(x)).epsilon(1e-10));
    }
  }

  TEST_CASE("outage probability examples") {
    CHECK(outage_probability(0.0, 4.0, 20.0, 1e-5, 1e-5, 1.0, 1.0) == 0.0);
    CHECK(outage_probability(1.0, 4.0, 0.0, 1e-5, 1e-5, 1.0, 1.0) == 0.0);
    CHECK_THROWS_AS(outage_probability(1.0, 2.0, 20.0, 1e-5, 1e-5, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(outage_probability(1.0, 4.0, 20.0, 1e-5, 1e-5, 1.0, 0.0),
                    std::invalid_argument);
    // alpha = 4: chi = pi Gamma(1.5) Gamma(0.5) = pi^2 / 2
    const double chi = std::numbers::pi * std::numbers::pi / 2.0;
    const double expect = 1.0 - std::exp(-chi * 1.0 * 400.0 * (1e-5 + 1e-5));
    CHECK(outage_probability(1.0, 4.0, 20.0, 1e-5, 1e-5, 1.0, 1.0) ==
          doctest::Approx(expect).epsilon(1e-10));
  }

  TEST_CASE("outage probability monotonicity") {
    const double base = outage_probability(2.0, 3.6, 30.0, 1e-5, 2e-5, 1.0, 0.5);
    CHECK(base > 0.0);
    CHECK(base < 1.0);
    CHECK(outage_probability(3.0, 3.6, 30.0, 1e-5, 2e-5, 1.0, 0.5) > base);
    CHECK(outage_probability(2.0, 3.6, 40.0, 1e-5, 2e-5, 1.0, 0.5) > base);
    CHECK(outage_probability(2.0, 3.6, 30.0, 2e-5, 2e-5, 1.0, 0.5) > base);
    CHECK(outage_probability(2.0, 3.6, 30.0, 1e-5, 3e-5, 1.0, 0.5) > base);
    CHECK(outage_probability(2.0, 3.6, 30.0, 1e-5, 2e-5, 1.0, 0.8) < base);
    CHECK(outage_probability(1e3, 3.6, 400.0, 1e-3, 1e-3, 1.0, 1.0) <= 1.0);
  }
}
