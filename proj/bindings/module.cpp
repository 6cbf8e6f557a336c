// Python bindings. Exact money stays exact: every price-like argument comes in
// as a string ("16", "4.25", "1/3") and goes back out the same way.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mcs/calibration.hpp"
#include "mcs/coverage.hpp"
#include "mcs/demo_scenarios.hpp"
#include "mcs/offline.hpp"
#include "mcs/online.hpp"
#include "mcs/scenario.hpp"

namespace py = pybind11;
using namespace mcs;

namespace {

std::string rational_str(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

TaskUniverse universe_of(const std::vector<int>& requirement) {
  TaskUniverse u;
  u.requirement = requirement;
  u.validate();
  return u;
}

// Users come in as (arrival, departure, tasks, bid) tuples, ids run 1..n.
using PyUser = std::tuple<long long, long long, std::vector<int>, std::string>;

std::vector<DeclaredBid> bids_of(const std::vector<PyUser>& users, const TaskUniverse& universe) {
  std::vector<DeclaredBid> bids;
  bids.reserve(users.size());
  for (std::size_t i = 0; i < users.size(); ++i) {
    const auto& [arrival, departure, tasks, bid] = users[i];
    DeclaredBid b{static_cast<UserId>(i + 1), arrival, departure, tasks, parse_rational(bid)};
    validate_bid(b, universe);
    bids.push_back(std::move(b));
  }
  return bids;
}

py::dict outcome_dict(const AuctionOutcome& outcome) {
  py::dict payments;
  for (const auto& [id, price] : outcome.payments) payments[py::int_(id)] = rational_str(price);
  py::dict out;
  out["winners"] = outcome.winners;
  out["payments"] = payments;
  out["total_value"] = outcome.total_value;
  out["total_payment"] = rational_str(outcome.total_payment);
  return out;
}

py::dict run_dict(const RunResult& run) {
  py::dict out = outcome_dict(run.outcome);
  py::list thresholds;
  for (const auto& e : run.trace.threshold_updates())
    thresholds.append(py::make_tuple(e.t, rational_str(e.price)));
  out["thresholds"] = thresholds;
  out["marginal_evals"] = run.counters.marginal_evals;
  return out;
}

OnlineConfig online_config(const std::string& budget, long long deadline,
                           const std::string& epsilon, const std::string& delta_initial,
                           const std::string& delta_target, long long delta_switch) {
  OnlineConfig config;
  config.budget = parse_rational(budget);
  config.deadline = deadline;
  config.epsilon = parse_rational(epsilon);
  config.delta.initial = parse_rational(delta_initial);
  config.delta.target = parse_rational(delta_target);
  config.delta.switch_size = delta_switch;
  return config;
}

}  // namespace

PYBIND11_MODULE(_mcsauction, m) {
  m.doc() = "budget-feasible online sensing auctions";

  m.def(
      "coverage_value",
      [](const std::vector<int>& requirement, const std::vector<std::vector<int>>& task_sets,
         const std::vector<int>& selected) {
        CoverageOracle oracle(universe_of(requirement), task_sets);
        for (int idx : selected) {
          if (idx < 0 || idx >= oracle.user_count()) throw py::index_error("user index");
          if (oracle.contains(idx)) throw py::value_error("duplicate user index");
          oracle.add(idx);
        }
        return oracle.value();
      },
      py::arg("requirement"), py::arg("task_sets"), py::arg("selected"),
      "Coverage value of a user subset, indices 0-based.");

  m.def(
      "marginal_value",
      [](const std::vector<int>& requirement, const std::vector<std::vector<int>>& task_sets,
         const std::vector<int>& selected, int candidate) {
        CoverageOracle oracle(universe_of(requirement), task_sets);
        for (int idx : selected) oracle.add(idx);
        if (candidate < 0 || candidate >= oracle.user_count())
          throw py::index_error("user index");
        if (oracle.contains(candidate)) throw py::value_error("candidate already selected");
        return oracle.marginal(candidate);
      },
      py::arg("requirement"), py::arg("task_sets"), py::arg("selected"), py::arg("candidate"));

  m.def(
      "proportional_share_offline",
      [](const std::vector<int>& requirement, const std::vector<PyUser>& users,
         const std::string& budget) {
        TaskUniverse universe = universe_of(requirement);
        return outcome_dict(
            proportional_share_offline(universe, bids_of(users, universe), parse_rational(budget)));
      },
      py::arg("requirement"), py::arg("users"), py::arg("budget"),
      "Offline proportional-share auction; users are (arrival, departure, tasks, bid) "
      "tuples with string bids.");

  m.def(
      "run_omz",
      [](const std::vector<int>& requirement, const std::vector<PyUser>& users,
         const std::string& budget, long long deadline, const std::string& epsilon,
         const std::string& delta_initial, const std::string& delta_target,
         long long delta_switch) {
        TaskUniverse universe = universe_of(requirement);
        return run_dict(run_omz(universe, bids_of(users, universe),
                                online_config(budget, deadline, epsilon, delta_initial,
                                              delta_target, delta_switch)));
      },
      py::arg("requirement"), py::arg("users"), py::arg("budget"), py::arg("deadline"),
      py::arg("epsilon") = "1", py::arg("delta_initial") = "1", py::arg("delta_target") = "1",
      py::arg("delta_switch") = 240);

  m.def(
      "run_omg",
      [](const std::vector<int>& requirement, const std::vector<PyUser>& users,
         const std::string& budget, long long deadline, const std::string& epsilon,
         const std::string& delta_initial, const std::string& delta_target,
         long long delta_switch) {
        TaskUniverse universe = universe_of(requirement);
        return run_dict(run_omg(universe, bids_of(users, universe),
                                online_config(budget, deadline, epsilon, delta_initial,
                                              delta_target, delta_switch)));
      },
      py::arg("requirement"), py::arg("users"), py::arg("budget"), py::arg("deadline"),
      py::arg("epsilon") = "1", py::arg("delta_initial") = "1", py::arg("delta_target") = "1",
      py::arg("delta_switch") = 240);

  m.def(
      "solve_optimal_delta",
      [](const std::string& model, double omega) {
        CalibrationResult r = solve_optimal_delta({omega, parse_ratio_model(model)});
        py::dict out;
        out["feasible"] = r.feasible;
        out["delta"] = r.delta;
        out["alpha"] = r.alpha;
        out["ratio"] = r.ratio;
        return out;
      },
      py::arg("model"), py::arg("omega"), "model is \"iid\" or \"secretary\"");

  m.def(
      "generate_poi_grid",
      [](int roads_h, int roads_v, double length_m, double width_m, double spacing_m) {
        PoiGrid grid = generate_poi_grid({roads_h, roads_v, length_m, width_m, spacing_m});
        py::list coords;
        for (const auto& [x, y] : grid.coordinate) coords.append(py::make_tuple(x, y));
        py::dict out;
        out["count"] = grid.universe.task_count();
        out["coordinates"] = coords;
        return out;
      },
      py::arg("roads_h") = 3, py::arg("roads_v") = 3, py::arg("length_m") = 1135.0,
      py::arg("width_m") = 319.0, py::arg("spacing_m") = 1.0);

  m.def(
      "covered_tasks",
      [](int roads_h, int roads_v, double length_m, double width_m, double spacing_m,
         std::size_t poi_index, double radius_m) {
        PoiGrid grid = generate_poi_grid({roads_h, roads_v, length_m, width_m, spacing_m});
        return covered_tasks(grid, poi_index, radius_m);
      },
      py::arg("roads_h"), py::arg("roads_v"), py::arg("length_m"), py::arg("width_m"),
      py::arg("spacing_m"), py::arg("poi_index"), py::arg("radius_m"));

  m.def(
      "scenario_from_config",
      [](const std::string& config_text, std::uint64_t seed) {
        std::istringstream in(config_text);
        ScenarioConfig config = parse_scenario_config(in);
        Scenario scenario = generate_scenario(config, seed);
        py::list users;
        for (const auto& u : scenario.users) {
          py::dict d;
          d["id"] = u.id;
          d["arrival"] = u.arrival;
          d["departure"] = u.departure;
          d["tasks"] = u.tasks;
          d["cost"] = rational_str(u.cost);
          users.append(d);
        }
        py::dict out;
        out["poi_count"] = scenario.grid.universe.task_count();
        out["users"] = users;
        return out;
      },
      py::arg("config_text"), py::arg("seed"),
      "Sample a full scenario from a key-value config string.");

  m.def("demo_scenario_names", [] { return demo_scenario_names(); });

  m.def(
      "run_demo",
      [](const std::string& name) {
        const DemoScenario& demo = demo_scenario(name);
        RunResult run = run_demo(demo);
        py::dict out = run_dict(run);
        out["matches_reference"] = diff_against_expected(run, demo.expected).match;
        return out;
      },
      py::arg("name"));
}
