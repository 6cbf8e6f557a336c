#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mcs/scenario.hpp"

using namespace mcs;

TEST_SUITE_BEGIN("scenario");

TEST_CASE("a single crossing dedupes the intersection") {
  RoiGeometry g{1, 1, 10, 4, 1};
  PoiGrid grid = generate_poi_grid(g);
  CHECK(grid.coordinate.size() == 15);  // 11 + 5 - 1
  CHECK(grid.universe.task_count() == 15);
  CHECK(std::count(grid.coordinate.begin(), grid.coordinate.end(),
                   std::make_pair(5LL, 2LL)) == 1);
  CHECK(std::is_sorted(grid.coordinate.begin(), grid.coordinate.end()));
  for (int r : grid.universe.requirement) CHECK(r == 1);
}

TEST_CASE("default region holds about 4.3k points") {
  PoiGrid grid = generate_poi_grid(RoiGeometry{});
  CHECK(grid.coordinate.size() == 4359);  // 3*1136 + 3*320 - 9
  CHECK(grid.coordinate.size() >= 4340);
  CHECK(grid.coordinate.size() <= 4360);
}

TEST_CASE("bad geometry is rejected") {
  CHECK_THROWS_AS(generate_poi_grid(RoiGeometry{0, 0, 10, 10, 1}), std::invalid_argument);
  CHECK_THROWS_AS(generate_poi_grid(RoiGeometry{1, 1, 10, 10, 0}), std::invalid_argument);
  CHECK_THROWS_AS(generate_poi_grid(RoiGeometry{1, 0, -5, 0, 1}), std::invalid_argument);
}

TEST_CASE("sensing radius covers the expected neighborhood") {
  SUBCASE("mid-road strip") {
    PoiGrid grid = generate_poi_grid(RoiGeometry{1, 0, 100, 0, 1});
    REQUIRE(grid.coordinate.size() == 101);
    auto mid = std::find(grid.coordinate.begin(), grid.coordinate.end(),
                         std::make_pair(50LL, 0LL));
    REQUIRE(mid != grid.coordinate.end());
    auto tasks = covered_tasks(grid, static_cast<std::size_t>(mid - grid.coordinate.begin()),
                               7.0);
    CHECK(tasks.size() == 15);  // x in [43, 57]
  }
  SUBCASE("crossing doubles the strip minus the shared point") {
    PoiGrid grid = generate_poi_grid(RoiGeometry{1, 1, 100, 100, 1});
    auto cross = std::find(grid.coordinate.begin(), grid.coordinate.end(),
                           std::make_pair(50LL, 50LL));
    REQUIRE(cross != grid.coordinate.end());
    auto tasks = covered_tasks(grid, static_cast<std::size_t>(cross - grid.coordinate.begin()),
                               7.0);
    CHECK(tasks.size() == 29);  // 15 + 15 - 1
  }
  SUBCASE("own point is always covered") {
    PoiGrid grid = generate_poi_grid(RoiGeometry{1, 0, 10, 0, 1});
    auto tasks = covered_tasks(grid, 0, 0.5);
    CHECK(tasks == std::vector<int>{0});
  }
  SUBCASE("input validation") {
    PoiGrid grid = generate_poi_grid(RoiGeometry{1, 0, 10, 0, 1});
    CHECK_THROWS_AS(covered_tasks(grid, 99, 7.0), std::invalid_argument);
    CHECK_THROWS_AS(covered_tasks(grid, 0, 0.0), std::invalid_argument);
  }
}

namespace {

ScenarioConfig small_config() {
  ScenarioConfig c;
  c.geometry = RoiGeometry{2, 2, 60, 40, 1};
  c.deadline = 40;
  c.budget = Rational(50);
  c.lambda = 0.5;
  c.seed = 7;
  return c;
}

}  // namespace

TEST_CASE("arrival counts follow the Poisson rate") {
  ScenarioConfig c;
  c.interval_max = 100;  // general mode keeps every draw
  Scenario s = generate_scenario(c, 20240815);
  // lambda*T = 1080, three sigma is about 99
  CHECK(s.users.size() >= 980);
  CHECK(s.users.size() <= 1180);
}

TEST_CASE("zero-interval streams have distinct increasing arrivals") {
  ScenarioConfig c = small_config();
  Scenario s = generate_scenario(c, 3);
  REQUIRE(!s.users.empty());
  long long last = 0;
  for (const auto& u : s.users) {
    CHECK(u.arrival > last);
    CHECK(u.departure == u.arrival);
    CHECK(u.arrival <= c.deadline);
    last = u.arrival;
  }
}

TEST_CASE("general streams clamp departures to the deadline") {
  ScenarioConfig c = small_config();
  c.interval_max = 12;
  Scenario s = generate_scenario(c, 3);
  REQUIRE(!s.users.empty());
  for (const auto& u : s.users) {
    CHECK(u.arrival >= 1);
    CHECK(u.departure >= u.arrival);
    CHECK(u.departure <= std::min(u.arrival + c.interval_max, c.deadline));
  }
}

TEST_CASE("costs sit on the cent grid inside the configured range") {
  ScenarioConfig c = small_config();
  Scenario s = generate_scenario(c, 9);
  for (const auto& u : s.users) {
    CHECK(u.cost >= c.cost_lo);
    CHECK(u.cost <= c.cost_hi);
    CHECK(denominator(Rational(u.cost * 100)) == 1);
    CHECK(!u.tasks.empty());  // users stand on a PoI, which they always cover
  }
}

TEST_CASE("streams are reproducible per seed") {
  ScenarioConfig c = small_config();
  Scenario a = generate_scenario(c, 21);
  Scenario b = generate_scenario(c, 21);
  REQUIRE(a.users.size() == b.users.size());
  for (std::size_t i = 0; i < a.users.size(); ++i) {
    CHECK(a.users[i].arrival == b.users[i].arrival);
    CHECK(a.users[i].cost == b.users[i].cost);
    CHECK(a.users[i].tasks == b.users[i].tasks);
  }
  Scenario other = generate_scenario(c, 22);
  CHECK((other.users.size() != a.users.size() ||
         other.users.front().cost != a.users.front().cost ||
         other.users.front().tasks != a.users.front().tasks));
}

TEST_CASE("config files round-trip") {
  ScenarioConfig c = small_config();
  c.budget = Rational(33, 4);
  c.epsilon = Rational(1, 2);
  c.delta.target = Rational(4);
  c.delta.switch_size = 120;
  c.interval_max = 9;
  std::ostringstream out;
  write_scenario_config(out, c);
  std::istringstream in(out.str());
  ScenarioConfig back = parse_scenario_config(in);
  CHECK(back.geometry.roads_h == c.geometry.roads_h);
  CHECK(back.geometry.length_m == c.geometry.length_m);
  CHECK(back.deadline == c.deadline);
  CHECK(back.budget == c.budget);
  CHECK(back.lambda == c.lambda);
  CHECK(back.radius == c.radius);
  CHECK(back.epsilon == c.epsilon);
  CHECK(back.delta.target == c.delta.target);
  CHECK(back.delta.switch_size == c.delta.switch_size);
  CHECK(back.interval_max == c.interval_max);
  CHECK(back.seed == c.seed);
}

TEST_CASE("config parsing is strict about keys and values") {
  SUBCASE("comments and blanks are fine") {
    std::istringstream in("# a comment\n\nT=100\nB=12\n");
    ScenarioConfig c = parse_scenario_config(in);
    CHECK(c.deadline == 100);
    CHECK(c.budget == Rational(12));
    CHECK(c.lambda == 0.6);  // untouched default
  }
  SUBCASE("unknown keys are rejected") {
    std::istringstream in("horizon=100\n");
    CHECK_THROWS_AS(parse_scenario_config(in), std::invalid_argument);
  }
  SUBCASE("garbage values are rejected") {
    std::istringstream in("T=soon\n");
    CHECK_THROWS_AS(parse_scenario_config(in), std::invalid_argument);
  }
  SUBCASE("fractions parse exactly") {
    std::istringstream in("epsilon=1/2\nB=4.25\n");
    ScenarioConfig c = parse_scenario_config(in);
    CHECK(c.epsilon == Rational(1, 2));
    CHECK(c.budget == Rational(17, 4));
  }
}

TEST_SUITE_END();
