#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "mcs/model.hpp"
#include "mcs/online.hpp"

namespace mcs {

// Manhattan-style region of interest: roads_h east-west roads of length_m
// meters and roads_v north-south roads of width_m meters, PoIs every
// spacing_m meters along each road, intersections deduplicated.
struct RoiGeometry {
  int roads_h = 3;
  int roads_v = 3;
  double length_m = 1135.0;
  double width_m = 319.0;
  double spacing_m = 1.0;
};

struct PoiGrid {
  TaskUniverse universe;  // one unit-requirement task per PoI
  std::vector<std::pair<long long, long long>> coordinate;  // grid units of spacing_m
  double spacing_m = 1.0;
};

PoiGrid generate_poi_grid(const RoiGeometry& geometry);

// Task set of a user standing on PoI poi_index: every PoI within Euclidean
// distance radius_m, the user's own PoI included.
std::vector<int> covered_tasks(const PoiGrid& grid, std::size_t poi_index, double radius_m);

struct ScenarioConfig {
  RoiGeometry geometry;
  long long deadline = 1800;
  Rational budget{1000};
  double lambda = 0.6;  // users per second
  double radius = 7.0;  // sensing radius, meters
  Rational cost_lo{1};
  Rational cost_hi{10};
  long long interval_max = 0;  // 0 = zero-interval scenario
  Rational epsilon{1};
  DeltaPolicy delta;
  std::uint64_t seed = 1;

  OnlineConfig online() const {
    return OnlineConfig{budget, deadline, epsilon, delta};
  }
};

// Poisson arrivals on {1..T}; each user sits on a uniformly chosen PoI and
// covers every PoI within the sensing radius. Costs are drawn on a cent grid,
// intervals uniformly on [0, interval_max]. Zero-interval scenarios shift
// same-step arrivals to the next free step so arrival times stay distinct.
std::vector<UserProfile> generate_user_stream(const ScenarioConfig& config, const PoiGrid& grid,
                                              std::uint64_t seed);

struct Scenario {
  PoiGrid grid;
  std::vector<UserProfile> users;
};

Scenario generate_scenario(const ScenarioConfig& config, std::uint64_t seed);

// Flat key-value config file support. Unknown keys are rejected; missing keys
// keep their defaults.
ScenarioConfig parse_scenario_config(std::istream& in);
ScenarioConfig load_scenario_config(const std::string& path);
void write_scenario_config(std::ostream& out, const ScenarioConfig& config);

}  // namespace mcs
