#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "d2dsim/harness.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace d2d;

TEST_SUITE("harness") {
  TEST_CASE("seeds are stable and distinct") {
    CHECK(run_seed(1, 0) == run_seed(1, 0));
    CHECK(run_seed(1, 0) != run_seed(1, 1));
    CHECK(run_seed(1, 0) != run_seed(2, 0));
  }

  TEST_CASE("no groups: sum throughput is the solo CU rate at maximum power") {
    ScenarioConfig c;
    c.num_mgs = 0;
    const auto sc = make_scenario(c, 5);
    const LinkBudget b{c.noise_watts(), c.bandwidth_per_channel};
    const auto p = PowerProfile::uniform(c.num_cus, 0, c.p_c_max_watts(), 0.0);
    double expect = 0.0;
    for (int k = 0; k < c.num_cus; ++k) expect += rate_cu_solo(k, p, sc.gains, b);
    for (auto policy : all_policies()) {
      const auto m = run_point(c, policy, 5);
      CHECK(m.sum_throughput == doctest::Approx(expect).epsilon(1e-12));
      CHECK(m.assigned_mgs == 0);
    }
  }

  TEST_CASE("identical seeds give identical metrics") {
    ScenarioConfig c;
    for (auto policy : all_policies()) {
      const auto a = run_point(c, policy, 99);
      const auto b = run_point(c, policy, 99);
      CHECK(a.sum_throughput == b.sum_throughput);
      CHECK(a.assigned_mgs == b.assigned_mgs);
    }
  }

  TEST_CASE("interference-aware pipeline equals a hand composition") {
    ScenarioConfig c;
    c.num_cus = 3;
    c.num_mgs = 8;
    c.receivers_per_mg = {2};
    const std::uint64_t seed = 4;
    const Scenario sc = make_scenario(c, seed);
    const auto params = AllocParams::from_config(c);
    const auto& pw = params.power;

    Assignment a = ia_allocate(sc.gains, params);
    PowerProfile p = PowerProfile::uniform(c.num_cus, c.num_mgs, pw.p_c_max, 0.0);
    for (int k = 0; k < c.num_cus; ++k) {
      const auto m = a.groups_on(k);
      if (m.size() == 1) {
        const auto pp = pair_power(k, m[0], sc.gains, pw);
        if (pp.feasible) {
          p.p_c[k] = pp.p_c;
          p.p_g[m[0]] = pp.p_g;
        } else {
          a.unassign(m[0]);
        }
      } else if (m.size() == 2) {
        const auto cr = corner_search_gk2(k, m[0], m[1], sc.gains, pw);
        REQUIRE(cr.feasible);
        p.p_c[k] = cr.powers[0];
        p.p_g[m[0]] = cr.powers[1];
        p.p_g[m[1]] = cr.powers[2];
      } else if (m.size() > 2) {
        const auto sr = stim_channel(k, m, sc.gains, pw);
        p.p_c[k] = sr.p_c;
        for (std::size_t i = 0; i < m.size(); ++i) p.p_g[m[i]] = sr.p_g[i];
      }
    }
    const LinkBudget b{c.noise_watts(), c.bandwidth_per_channel};
    double total = 0.0;
    for (int k = 0; k < c.num_cus; ++k) total += rate_cu(k, a, p, sc.gains, b);
    for (int g = 0; g < c.num_mgs; ++g) {
      if (a.assigned(g)) total += 2.0 * rate_mg(g, a.channel_of(g), a, p, sc.gains, b);
    }
    const auto d = run_policy(sc, c, PolicyKind::interference_aware, seed);
    CHECK(d.assignment == a);
    CHECK(d.metrics.sum_throughput == doctest::Approx(total).epsilon(1e-12));
  }

  TEST_CASE("baselines transmit at maximum power") {
    ScenarioConfig c;
    const auto sc = make_scenario(c, 8);
    for (auto policy : {PolicyKind::random, PolicyKind::greedy}) {
      const auto d = run_policy(sc, c, policy, 8);
      for (int g = 0; g < c.num_mgs; ++g) {
        CHECK(d.powers.p_g[g] == (d.assignment.assigned(g) ? c.p_g_max_watts() : 0.0));
      }
      CHECK(d.metrics.assigned_mgs == c.num_cus);
    }
  }

  TEST_CASE("QoS accounting") {
    GainTable t(1, {1});
    t.cu_bs(0) = 1e-9;
    t.mg_bs(0, 0) = 1e-9;
    t.own(0, 0, 0) = 1e-9;
    Assignment a(1, 1);
    a.assign(0, 0);
    ScenarioConfig c;
    c.num_cus = 1;
    c.num_mgs = 1;
    const auto m = evaluate(a, PowerProfile::uniform(1, 1, 1.0, 1.0), t, c);
    CHECK(m.qos_violations == 1);
    CHECK_FALSE(m.flagged());
  }

  TEST_CASE("axes") {
    for (auto name : {"none", "receivers_per_mg", "num_mgs", "geographic_spread",
                      "cu_qos_threshold", "p_g_max"}) {
      REQUIRE(parse_axis(name).has_value());
      CHECK(axis_name(*parse_axis(name)) == name);
    }
    ScenarioConfig c;
    CHECK(apply_axis(c, SweepAxis::receivers_per_mg, 8).receivers_of(3) == 8);
    CHECK(apply_axis(c, SweepAxis::num_mgs, 12).num_mgs == 12);
    CHECK(apply_axis(c, SweepAxis::geographic_spread, 200).geographic_spread == 200);
    CHECK(apply_axis(c, SweepAxis::cu_qos_threshold, 12).sinr_threshold_cu == 12);
    CHECK(apply_axis(c, SweepAxis::p_g_max, 15).p_g_max == 15);
    CHECK_THROWS_AS(apply_axis(c, SweepAxis::num_mgs, 2.5), ConfigError);
  }

  TEST_CASE("sweep files") {
    const auto s = parse_sweep(
        "num_cus = 4\nmonte_carlo_runs = 3\nrng_seed = 9\n"
        "sweep_axis = geographic_spread\nsweep_values = 50, 100\n"
        "sweep_policies = interference_aware, random\n");
    CHECK(s.axis == SweepAxis::geographic_spread);
    CHECK(s.values == std::vector<double>{50, 100});
    CHECK(s.policies == std::vector<PolicyKind>{PolicyKind::interference_aware, PolicyKind::random});
    CHECK(s.runs == 3);
    CHECK(s.base_seed == 9);
    CHECK(s.base.num_cus == 4);
    CHECK(parse_sweep("num_cus = 2\n").policies.size() == all_policies().size());
    CHECK_THROWS_AS(parse_sweep("sweep_axis = bogus\nsweep_values = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_sweep("sweep_axis = num_mgs\n"), ConfigError);
    CHECK_THROWS_AS(parse_sweep("sweep_other = 1\n"), ConfigError);
  }

  TEST_CASE("a one-run, one-value, one-policy sweep is a single run_point") {
    Sweep s;
    s.axis = SweepAxis::none;
    s.values = {0.0};
    s.policies = {PolicyKind::interference_aware};
    s.runs = 1;
    s.base_seed = 17;
    const auto r = run_sweep(s);
    REQUIRE(r.rows.size() == 1);
    const auto m = run_point(s.base, PolicyKind::interference_aware, run_seed(17, 0));
    CHECK(r.rows[0].metrics.sum_throughput == m.sum_throughput);
    CHECK(r.summary.size() == 1);
    CHECK(r.summary[0].std_sum == 0.0);
  }

  TEST_CASE("sweep output is ordered and independent of the thread count") {
    Sweep s;
    s.axis = SweepAxis::num_mgs;
    s.values = {2, 6, 10};
    s.policies = {PolicyKind::greedy, PolicyKind::interference_aware};
    s.runs = 5;
    s.base_seed = 3;
    const auto a = run_sweep(s, 1);
    const auto b = run_sweep(s, 3);
    CHECK(sweep_csv(a) == sweep_csv(b));
    CHECK(summary_csv(a) == summary_csv(b));
    REQUIRE(a.rows.size() == 30);
    CHECK(a.rows[0].metrics.policy == PolicyKind::greedy);
    CHECK(a.rows[0].axis_value == 2);
    CHECK(a.rows[4].run_index == 4);
    CHECK(a.rows[5].axis_value == 6);
    CHECK(a.rows[15].metrics.policy == PolicyKind::interference_aware);
    // common random numbers: run i sees the same seed under every policy
    CHECK(a.rows[1].metrics.seed == a.rows[16].metrics.seed);

    const auto& pt = a.point(PolicyKind::greedy, 6);
    double mean = 0.0;
    for (int i = 5; i < 10; ++i) mean += a.rows[i].metrics.sum_throughput / 5.0;
    CHECK(pt.mean_sum == doctest::Approx(mean));
    CHECK(pt.std_sum >= 0.0);
  }

  TEST_CASE("CSV and JSON contracts") {
    Sweep s;
    s.axis = SweepAxis::p_g_max;
    s.values = {10, 20};
    s.policies = {PolicyKind::interference_aware};
    s.runs = 2;
    const auto r = run_sweep(s);
    std::istringstream csv(sweep_csv(r));
    std::string line;
    std::getline(csv, line);
    char hash[32];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(s.base.hash()));
    CHECK(line == std::string("# config_hash=") + hash);
    std::getline(csv, line);
    CHECK(line ==
          "policy,axis,axis_value,run_seed,sum_throughput_bps,cu_throughput_bps,"
          "mg_throughput_bps,assigned_mgs,qos_violations,converged");
    int rows = 0;
    while (std::getline(csv, line)) {
      ++rows;
      CHECK(line.rfind("interference_aware,p_g_max,", 0) == 0);
      CHECK(std::count(line.begin(), line.end(), ',') == 9);
    }
    CHECK(rows == 4);
    CHECK(summary_csv(r).rfind(std::string("# config_hash=") + hash, 0) == 0);

    const auto j = nlohmann::json::parse(sweep_json(r));
    CHECK(j["config_hash"] == hash);
    CHECK(j["axis"] == "p_g_max");
    CHECK(j["runs"] == 2);
    CHECK(j["config"]["num_mgs"] == 20);

    const auto d = run_policy(make_scenario(s.base, 1), s.base, PolicyKind::interference_aware, 1);
    const auto dj = nlohmann::json::parse(run_detail_json(d, s.base));
    CHECK(dj["config_hash"] == hash);
    CHECK(dj["powers_w"]["p_g"].size() == 20);
  }

  TEST_CASE("write_sweep produces the three files") {
    Sweep s;
    s.axis = SweepAxis::none;
    s.values = {0.0};
    s.policies = {PolicyKind::random};
    s.runs = 2;
    const auto r = run_sweep(s);
    const auto dir = std::filesystem::temp_directory_path() / "d2dsim_write_sweep_test";
    std::filesystem::remove_all(dir);
    write_sweep(r, dir, "out");
    for (auto name : {"out.csv", "out_summary.csv", "out.json"}) {
      CHECK(std::filesystem::exists(dir / name));
    }
    std::ifstream f(dir / "out.csv");
    std::stringstream buf;
    buf << f.rdbuf();
    CHECK(buf.str() == sweep_csv(r));
    std::filesystem::remove_all(dir);
  }
}
