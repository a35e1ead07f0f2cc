#include "d2dsim/topology.hpp"
#include "doctest.h"

using namespace d2d;

TEST_SUITE("topology") {
  TEST_CASE("C = 0 is rejected") {
    ScenarioConfig c;
    c.num_cus = 0;
    CHECK_THROWS_AS(generate_topology(c, 1), ConfigError);
  }

  TEST_CASE("G = 0 gives CUs only, all inside the cell") {
    ScenarioConfig c;
    c.num_mgs = 0;
    const auto t = generate_topology(c, 3);
    CHECK(t.num_mgs() == 0);
    CHECK(t.num_cus() == c.num_cus);
    for (const auto& p : t.cu_positions) CHECK(norm(p) <= 500.0);
  }

  TEST_CASE("same seed gives identical topologies") {
    ScenarioConfig c;
    c.num_cus = 3;
    c.num_mgs = 5;
    const auto a = generate_topology(c, 42);
    const auto b = generate_topology(c, 42);
    REQUIRE(a.num_mgs() == b.num_mgs());
    for (int g = 0; g < a.num_mgs(); ++g) {
      CHECK(a.mgtx_positions[g].x == b.mgtx_positions[g].x);
      CHECK(a.mgtx_positions[g].y == b.mgtx_positions[g].y);
      for (std::size_t r = 0; r < a.receiver_positions[g].size(); ++r) {
        CHECK(a.receiver_positions[g][r].x == b.receiver_positions[g][r].x);
      }
    }
    const auto other = generate_topology(c, 43);
    CHECK(other.cu_positions[0].x != a.cu_positions[0].x);
  }

  TEST_CASE("receivers lie within the spread of their transmitter and inside the cell") {
    ScenarioConfig c;
    c.num_mgs = 30;
    c.receivers_per_mg = {6};
    c.geographic_spread = 120.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto t = generate_topology(c, seed);
      for (int g = 0; g < t.num_mgs(); ++g) {
        CHECK(norm(t.mgtx_positions[g]) <= c.cell_radius);
        CHECK(t.receiver_positions[g].size() == 6);
        for (const auto& p : t.receiver_positions[g]) {
          CHECK(distance(p, t.mgtx_positions[g]) <= c.geographic_spread);
          CHECK(norm(p) <= c.cell_radius);
        }
        CHECK(t.group_radius(g) <= c.geographic_spread);
      }
    }
  }
}
