#include <cmath>
#include <numbers>

#include "d2dsim/config.hpp"
#include "doctest.h"

using namespace d2d;

TEST_SUITE("config") {
  TEST_CASE("defaults are valid and carry the documented values") {
    ScenarioConfig c;
    CHECK_NOTHROW(c.validate());
    CHECK(c.cell_radius == 500.0);
    CHECK(c.pathloss_exponent == 3.6);
    CHECK(c.shadowing_std == 8.0);
    CHECK(c.noise_power == -114.0);
    CHECK(c.p_c_max_watts() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c.stim_max_iterations == 500);
  }

  TEST_CASE("unit conversions") {
    CHECK(dbm_to_watts(30.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(dbm_to_watts(0.0) == doctest::Approx(1e-3).epsilon(1e-12));
    CHECK(db_to_linear(10.0) == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(linear_to_db(100.0) == doctest::Approx(20.0).epsilon(1e-12));
  }

  TEST_CASE("parse key = value with comments and lists") {
    const auto c = parse_config(
        "# comment line\n"
        "num_cus = 3   # trailing comment\n"
        "num_mgs=2\n"
        "receivers_per_mg = 2, 5\n"
        "\n"
        "geographic_spread = 75.5\n"
        "dominant_interferer_only = true\n");
    CHECK(c.num_cus == 3);
    CHECK(c.num_mgs == 2);
    REQUIRE(c.receivers_per_mg.size() == 2);
    CHECK(c.receivers_of(0) == 2);
    CHECK(c.receivers_of(1) == 5);
    CHECK(c.total_receivers() == 7);
    CHECK(c.geographic_spread == 75.5);
    CHECK(c.dominant_interferer_only);
    CHECK(c.cell_radius == 500.0);
  }

  TEST_CASE("unknown keys and malformed values are rejected") {
    CHECK_THROWS_AS(parse_config("no_such_key = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("num_cus = three\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("num_cus\n"), ConfigError);
  }

  TEST_CASE("validation rejects out-of-range scenarios") {
    ScenarioConfig c;
    c.num_cus = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = ScenarioConfig{};
    c.geographic_spread = c.cell_radius;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = ScenarioConfig{};
    c.receivers_per_mg = {1, 2};
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = ScenarioConfig{};
    c.outage_prob_threshold = 1.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = ScenarioConfig{};
    c.num_mgs = 0;
    CHECK_NOTHROW(c.validate());
  }

  TEST_CASE("canonical text round-trips and the hash tracks content") {
    ScenarioConfig c;
    c.num_mgs = 7;
    c.receivers_per_mg = {3};
    const auto back = parse_config(c.to_text());
    CHECK(back.to_text() == c.to_text());
    CHECK(back.hash() == c.hash());
    ScenarioConfig d = c;
    d.rng_seed = 2;
    CHECK(d.hash() != c.hash());
    for (const auto& key : config_keys()) CHECK(c.to_text().find(key + " = ") != std::string::npos);
  }

  TEST_CASE("derived interferer densities") {
    ScenarioConfig c;
    const double area = std::numbers::pi * 500.0 * 500.0;
    CHECK(c.effective_density_cu() == doctest::Approx(1.0 / area));
    CHECK(c.effective_density_mg() == doctest::Approx(20.0 / (5.0 * area)));
    c.density_cu = 1e-5;
    CHECK(c.effective_density_cu() == 1e-5);
  }
}
