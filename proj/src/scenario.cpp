#include "mcs/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mcs/rng.hpp"

namespace mcs {
namespace {

long long snap(double meters, double spacing) {
  return std::llround(meters / spacing);
}

}  // namespace

PoiGrid generate_poi_grid(const RoiGeometry& g) {
  if (g.roads_h < 0 || g.roads_v < 0 || g.roads_h + g.roads_v < 1)
    throw std::invalid_argument("need at least one road");
  if (g.spacing_m <= 0) throw std::invalid_argument("spacing must be positive");
  if (g.roads_h > 0 && g.length_m <= 0)
    throw std::invalid_argument("horizontal roads need a positive length");
  if (g.roads_v > 0 && g.width_m <= 0)
    throw std::invalid_argument("vertical roads need a positive width");

  const long long nx = snap(std::max(g.length_m, 0.0), g.spacing_m);
  const long long ny = snap(std::max(g.width_m, 0.0), g.spacing_m);

  auto offset = [](int k, int count, long long extent) {
    if (count == 1) return std::llround(extent / 2.0);
    return std::llround(static_cast<double>(k) * extent / (count - 1));
  };

  std::vector<std::pair<long long, long long>> pois;
  for (int k = 0; k < g.roads_h; ++k) {
    const long long y = offset(k, g.roads_h, ny);
    for (long long x = 0; x <= nx; ++x) pois.emplace_back(x, y);
  }
  for (int k = 0; k < g.roads_v; ++k) {
    const long long x = offset(k, g.roads_v, nx);
    for (long long y = 0; y <= ny; ++y) pois.emplace_back(x, y);
  }
  std::sort(pois.begin(), pois.end());
  pois.erase(std::unique(pois.begin(), pois.end()), pois.end());

  PoiGrid grid;
  grid.coordinate = std::move(pois);
  grid.spacing_m = g.spacing_m;
  grid.universe.requirement.assign(grid.coordinate.size(), 1);
  return grid;
}

std::vector<int> covered_tasks(const PoiGrid& grid, std::size_t poi_index, double radius_m) {
  if (poi_index >= grid.coordinate.size()) throw std::invalid_argument("PoI index out of range");
  if (radius_m <= 0) throw std::invalid_argument("sensing radius must be positive");
  const double r2 = radius_m * radius_m;
  const double s = grid.spacing_m;
  const auto [px, py] = grid.coordinate[poi_index];
  std::vector<int> tasks;
  for (std::size_t j = 0; j < grid.coordinate.size(); ++j) {
    const double dx = static_cast<double>(grid.coordinate[j].first - px) * s;
    const double dy = static_cast<double>(grid.coordinate[j].second - py) * s;
    if (dx * dx + dy * dy <= r2) tasks.push_back(static_cast<int>(j));
  }
  return tasks;
}

std::vector<UserProfile> generate_user_stream(const ScenarioConfig& config, const PoiGrid& grid,
                                              std::uint64_t seed) {
  if (config.deadline < 1) throw std::invalid_argument("deadline must be >= 1");
  if (config.lambda <= 0) throw std::invalid_argument("arrival rate must be positive");
  if (config.radius <= 0) throw std::invalid_argument("sensing radius must be positive");
  if (config.interval_max < 0) throw std::invalid_argument("interval bound must be >= 0");
  if (config.cost_lo <= 0 || config.cost_hi < config.cost_lo)
    throw std::invalid_argument("bad cost range");
  const Rational lo_cents = config.cost_lo * 100, hi_cents = config.cost_hi * 100;
  if (denominator(lo_cents) != 1 || denominator(hi_cents) != 1)
    throw std::invalid_argument("cost bounds must sit on the cent grid");
  if (grid.coordinate.empty()) throw std::invalid_argument("empty PoI grid");

  Rng rng(seed);
  const long long m = static_cast<long long>(grid.coordinate.size());

  std::vector<UserProfile> users;
  double t_cont = 0.0;
  long long last_arrival = 0;  // zero-interval scenarios keep arrivals distinct
  while (true) {
    t_cont += rng.exponential(config.lambda);
    if (t_cont > static_cast<double>(config.deadline)) break;
    long long arrival = static_cast<long long>(std::ceil(t_cont));
    if (arrival < 1) arrival = 1;

    std::vector<int> tasks =
        covered_tasks(grid, static_cast<std::size_t>(rng.uniform_int(0, m - 1)), config.radius);
    Rational cost = Rational(rng.uniform_int(lo_cents.convert_to<long long>(),
                                             hi_cents.convert_to<long long>()),
                             100);
    long long interval =
        config.interval_max > 0 ? rng.uniform_int(0, config.interval_max) : 0;

    if (config.interval_max == 0) {
      arrival = std::max(arrival, last_arrival + 1);
      if (arrival > config.deadline) continue;  // no free step left before T
      last_arrival = arrival;
      interval = 0;
    }

    UserProfile u;
    u.id = static_cast<UserId>(users.size()) + 1;
    u.arrival = arrival;
    u.departure = std::min(arrival + interval, config.deadline);
    u.tasks = std::move(tasks);
    u.cost = cost;
    users.push_back(std::move(u));
  }
  return users;
}

Scenario generate_scenario(const ScenarioConfig& config, std::uint64_t seed) {
  Scenario s{generate_poi_grid(config.geometry), {}};
  s.users = generate_user_stream(config, s.grid, seed);
  return s;
}

}  // namespace mcs
