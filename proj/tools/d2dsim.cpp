// d2dsim: command-line front end for the simulator.
//
//   d2dsim validate --config FILE
//   d2dsim run --config FILE [--seed N] [--policy NAME] [--runs N] [--out DIR]
//   d2dsim sweep --config FILE [--out DIR] [--threads N]
//   d2dsim dump-assignment --config FILE [--seed N] [--policy NAME] [--out DIR]
//   d2dsim dump-gains --config FILE [--seed N] [--out DIR]
//   d2dsim oracle [FAMILY...]
//
// Exit codes: 0 success, 1 usage or configuration error, 2 when more than
// half of the runs are flagged infeasible or unconverged.

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "checks.hpp"
#include "d2dsim/channel_alloc.hpp"
#include "d2dsim/config.hpp"
#include "d2dsim/harness.hpp"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitFlood = 2;

struct Options {
  std::string config;
  std::string out = ".";
  std::optional<std::uint64_t> seed;
  std::optional<std::string> policy;
  std::optional<int> runs;
  unsigned threads = 0;
  std::vector<std::string> families;
};

std::string hex_hash(std::uint64_t h) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

std::vector<d2d::PolicyKind> selected_policies(const Options& o,
                                               std::vector<d2d::PolicyKind> fallback) {
  if (!o.policy) return fallback;
  const auto p = d2d::parse_policy(*o.policy);
  if (!p) throw d2d::ConfigError("unknown policy '" + *o.policy + "'");
  return {*p};
}

d2d::ScenarioConfig load_checked(const Options& o) {
  d2d::ScenarioConfig c = d2d::load_config(o.config);
  if (o.seed) c.rng_seed = *o.seed;
  if (o.runs) c.monte_carlo_runs = *o.runs;
  c.validate();
  return c;
}

void put(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

void print_summary(const d2d::SweepResult& r) {
  std::printf("%-12s %10s %6s %14s %14s %10s %7s\n", "policy", "axis_value", "runs",
              "mean_sum_Mbps", "std_sum_Mbps", "assigned", "flagged");
  for (const auto& s : r.summary) {
    std::printf("%-12s %10g %6d %14.4f %14.4f %10.2f %7d\n",
                std::string(d2d::policy_name(s.policy)).c_str(), s.axis_value, s.runs,
                s.mean_sum / 1e6, s.std_sum / 1e6, s.mean_assigned, s.flagged_runs);
  }
}

int finish_sweep(const d2d::SweepResult& r, const Options& o, const std::string& stem) {
  d2d::write_sweep(r, o.out, stem);
  print_summary(r);
  const int total = static_cast<int>(r.rows.size());
  const int flagged = r.flagged_runs();
  std::printf("wrote %s/%s.csv (config_hash=%s)\n", o.out.c_str(), stem.c_str(),
              hex_hash(r.sweep.base.hash()).c_str());
  if (total > 0 && 2 * flagged > total) {
    std::fprintf(stderr, "%d of %d runs flagged infeasible or unconverged\n", flagged, total);
    return kExitFlood;
  }
  return kExitOk;
}

int cmd_validate(const Options& o) {
  const auto c = load_checked(o);
  std::printf("%s: ok (config_hash=%s)\n", o.config.c_str(), hex_hash(c.hash()).c_str());
  return kExitOk;
}

int cmd_run(const Options& o) {
  const auto c = load_checked(o);
  d2d::Sweep s;
  s.axis = d2d::SweepAxis::none;
  s.values = {0.0};
  s.base = c;
  s.policies = selected_policies(o, d2d::all_policies());
  s.runs = o.runs ? *o.runs : 1;
  s.base_seed = c.rng_seed;
  return finish_sweep(d2d::run_sweep(s, o.threads), o, "run");
}

int cmd_sweep(const Options& o) {
  d2d::Sweep s = d2d::load_sweep(o.config);
  if (o.seed) {
    s.base.rng_seed = *o.seed;
    s.base_seed = *o.seed;
  }
  if (o.runs) {
    s.base.monte_carlo_runs = *o.runs;
    s.runs = *o.runs;
  }
  s.policies = selected_policies(o, s.policies);
  s.base.validate();
  return finish_sweep(d2d::run_sweep(s, o.threads), o, fs::path(o.config).stem().string());
}

int cmd_dump_assignment(const Options& o) {
  const auto c = load_checked(o);
  const auto policies = selected_policies(o, {d2d::PolicyKind::interference_aware});
  const std::uint64_t seed = d2d::run_seed(c.rng_seed, 0);
  const d2d::Scenario scenario = d2d::make_scenario(c, seed);
  for (auto p : policies) {
    const auto detail = d2d::run_policy(scenario, c, p, seed);
    const std::string text = d2d::run_detail_json(detail, c);
    if (o.out == "-") {
      std::cout << text;
    } else {
      const fs::path path = fs::path(o.out) / ("assignment_" + std::string(d2d::policy_name(p)) + ".json");
      put(path, text);
      std::printf("wrote %s\n", path.string().c_str());
    }
  }
  return kExitOk;
}

int cmd_dump_gains(const Options& o) {
  const auto c = load_checked(o);
  const std::uint64_t seed = d2d::run_seed(c.rng_seed, 0);
  const d2d::Scenario sc = d2d::make_scenario(c, seed);
  const auto& t = sc.gains;
  nlohmann::ordered_json j;
  j["config_hash"] = hex_hash(c.hash());
  j["seed"] = seed;
  j["channels"] = t.num_channels();
  std::vector<int> rx;
  for (int g = 0; g < t.num_groups(); ++g) rx.push_back(t.receivers(g));
  j["receivers"] = rx;
  std::vector<double> cu_bs;
  for (int k = 0; k < t.num_channels(); ++k) cu_bs.push_back(t.cu_bs(k));
  j["cu_bs"] = cu_bs;
  auto mg_bs = nlohmann::ordered_json::array();
  auto mg_rx = nlohmann::ordered_json::array();
  auto cu_rx = nlohmann::ordered_json::array();
  for (int g = 0; g < t.num_groups(); ++g) {
    std::vector<double> row;
    for (int k = 0; k < t.num_channels(); ++k) row.push_back(t.mg_bs(g, k));
    mg_bs.push_back(row);
  }
  // mg_rx[j][g][r][k]: transmitter of group j to receiver r of group g.
  for (int jx = 0; jx < t.num_groups(); ++jx) {
    auto per_group = nlohmann::ordered_json::array();
    for (int g = 0; g < t.num_groups(); ++g) {
      auto per_rx = nlohmann::ordered_json::array();
      for (int r = 0; r < t.receivers(g); ++r) {
        std::vector<double> ks;
        for (int k = 0; k < t.num_channels(); ++k) ks.push_back(t.mg_rx(jx, g, r, k));
        per_rx.push_back(ks);
      }
      per_group.push_back(per_rx);
    }
    mg_rx.push_back(per_group);
  }
  // cu_rx[k][g][r]
  for (int k = 0; k < t.num_channels(); ++k) {
    auto per_group = nlohmann::ordered_json::array();
    for (int g = 0; g < t.num_groups(); ++g) {
      std::vector<double> rs;
      for (int r = 0; r < t.receivers(g); ++r) rs.push_back(t.cu_rx(k, g, r));
      per_group.push_back(rs);
    }
    cu_rx.push_back(per_group);
  }
  j["mg_bs"] = mg_bs;
  j["mg_rx"] = mg_rx;
  j["cu_rx"] = cu_rx;
  const std::string text = j.dump(2) + "\n";
  if (o.out == "-") {
    std::cout << text;
  } else {
    const fs::path path = fs::path(o.out) / "gains.json";
    put(path, text);
    std::printf("wrote %s\n", path.string().c_str());
  }
  return kExitOk;
}

int cmd_oracle(const Options& o) {
  const auto& known = d2d::oracle::acceptance_checks();
  for (const auto& f : o.families) {
    const bool ok = std::any_of(known.begin(), known.end(),
                                [&](const auto& c) { return c.family == f || c.name == f; });
    if (!ok) throw d2d::ConfigError("unknown oracle family '" + f + "'");
  }
  int failed = 0;
  for (const auto& r : d2d::oracle::run_checks(o.families)) {
    std::puts(d2d::oracle::format_result(r).c_str());
    std::fflush(stdout);
    if (!r.passed) ++failed;
  }
  return failed == 0 ? kExitOk : kExitConfig;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multicast D2D underlay simulator"};
  app.require_subcommand(1);
  Options o;
  using Adder = std::function<void(CLI::App*)>;

  const Adder add_config = [&](CLI::App* sub) {
    sub->add_option("--config,-c", o.config, "Scenario config file")
        ->required()
        ->check(CLI::ExistingFile)
        ->envname("D2DSIM_CONFIG");
  };
  const Adder add_out = [&](CLI::App* sub) {
    sub->add_option("--out,-o", o.out, "Output directory ('-' for stdout where supported)")
        ->envname("D2DSIM_OUT");
  };
  const Adder add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "Override rng_seed")->envname("D2DSIM_SEED");
  };
  const Adder add_policy = [&](CLI::App* sub) {
    sub->add_option("--policy", o.policy, "Policy name (interference_aware, outage_aware_obj1..3, random, bipartite, greedy)")
        ->envname("D2DSIM_POLICY");
  };
  const Adder add_runs = [&](CLI::App* sub) {
    sub->add_option("--runs", o.runs, "Override the number of runs")
        ->check(CLI::PositiveNumber)
        ->envname("D2DSIM_RUNS");
  };
  const Adder add_threads = [&](CLI::App* sub) {
    sub->add_option("--threads", o.threads, "Worker threads (0 = all cores)")
        ->envname("D2DSIM_THREADS");
  };

  auto* validate = app.add_subcommand("validate", "Check a config file");
  add_config(validate);

  auto* run = app.add_subcommand("run", "Evaluate policies on one configuration");
  for (const Adder& f : {add_config, add_out, add_seed, add_policy, add_runs, add_threads}) f(run);

  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep described by a config file");
  for (const Adder& f : {add_config, add_out, add_seed, add_policy, add_runs, add_threads}) f(sweep);

  auto* dump_a = app.add_subcommand("dump-assignment", "Write the assignment and powers of one drop");
  for (const Adder& f : {add_config, add_out, add_seed, add_policy}) f(dump_a);

  auto* dump_g = app.add_subcommand("dump-gains", "Write the gain table of one drop");
  for (const Adder& f : {add_config, add_out, add_seed}) f(dump_g);

  auto* oracle = app.add_subcommand("oracle", "Run the reference-oracle comparisons");
  oracle->add_option("families", o.families,
                     "hungarian, corner, pair, outage, bound, stim, trends, determinism");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kExitConfig;
  }

  try {
    if (*validate) return cmd_validate(o);
    if (*run) return cmd_run(o);
    if (*sweep) return cmd_sweep(o);
    if (*dump_a) return cmd_dump_assignment(o);
    if (*dump_g) return cmd_dump_gains(o);
    if (*oracle) return cmd_oracle(o);
  } catch (const d2d::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
