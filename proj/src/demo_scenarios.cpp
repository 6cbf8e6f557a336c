#include "mcs/demo_scenarios.hpp"

#include <sstream>
#include <stdexcept>

namespace mcs {
namespace {

// Five unit-marginal users on five singleton tasks: every V_i(S) is 1, so the
// walkthrough arithmetic stays in plain sight.
std::vector<UserProfile> walkthrough_users(long long u1_departure) {
  std::vector<UserProfile> users;
  const long long arrivals[] = {1, 2, 4, 6, 7};
  const int costs[] = {2, 4, 5, 1, 3};
  for (int i = 0; i < 5; ++i) {
    UserProfile u;
    u.id = i + 1;
    u.arrival = arrivals[i];
    u.departure = (i == 0) ? u1_departure : arrivals[i];
    u.tasks = {i};
    u.cost = costs[i];
    users.push_back(u);
  }
  return users;
}

OnlineConfig walkthrough_config() {
  OnlineConfig cfg;
  cfg.budget = 16;
  cfg.deadline = 8;
  cfg.epsilon = Rational(1, 2);
  cfg.delta = DeltaPolicy{};
  return cfg;
}

DemoScenario make_example1() {
  DemoScenario demo;
  demo.name = "example1";
  demo.universe.requirement = std::vector<int>(5, 1);
  demo.users = walkthrough_users(1);
  demo.config = walkthrough_config();
  demo.general = false;
  demo.expected.thresholds = {{1, {1, 2}}, {2, {1, 4}}, {4, {1, 4}}, {8, {1, 4}}};
  demo.expected.decisions = {
      {1, EventKind::accept, 1, 2, {}}, {2, EventKind::reject, 2, 2, {}},
      {4, EventKind::reject, 3, 4, {}}, {6, EventKind::accept, 4, 4, {}},
      {7, EventKind::accept, 5, 4, {}},
  };
  demo.expected.winners = {1, 4, 5};
  demo.expected.payments = {2, 4, 4};
  return demo;
}

DemoScenario make_example2() {
  DemoScenario demo;
  demo.name = "example2";
  demo.universe.requirement = std::vector<int>(5, 1);
  demo.users = walkthrough_users(5);
  demo.config = walkthrough_config();
  demo.general = true;
  demo.expected.thresholds = {{1, {1, 2}}, {2, {1, 4}}, {4, {1, 8}}, {8, {1, 4}}};
  demo.expected.decisions = {
      {1, EventKind::accept, 1, 2, {}}, {2, EventKind::reject, 2, 2, {}},
      {2, EventKind::raise, 1, 4, {}},  {4, EventKind::reject, 3, 4, {}},
      {4, EventKind::raise, 1, 8, {}},  {6, EventKind::accept, 4, 8, {}},
      {7, EventKind::reject, 5, 8, {}},
  };
  demo.expected.winners = {1, 4};
  demo.expected.payments = {8, 8};
  return demo;
}

}  // namespace

const std::vector<std::string>& demo_scenario_names() {
  static const std::vector<std::string> names = {"example1", "example2"};
  return names;
}

const DemoScenario& demo_scenario(const std::string& name) {
  static const DemoScenario ex1 = make_example1();
  static const DemoScenario ex2 = make_example2();
  if (name == "example1") return ex1;
  if (name == "example2") return ex2;
  throw std::invalid_argument("unknown demo scenario: " + name);
}

RunResult run_demo(const DemoScenario& demo) {
  std::vector<DeclaredBid> stream;
  for (const auto& u : demo.users) stream.push_back(truthful_bid(u));
  return demo.general ? run_omg(demo.universe, stream, demo.config)
                      : run_omz(demo.universe, stream, demo.config);
}

TraceDiff diff_against_expected(const RunResult& run, const ExpectedTrace& expected) {
  auto mismatch = [](long long t, const std::string& what) {
    return TraceDiff{false, t, what};
  };
  auto fr = [](const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
  };

  auto updates = run.trace.threshold_updates();
  for (size_t i = 0; i < std::max(updates.size(), expected.thresholds.size()); ++i) {
    if (i >= updates.size())
      return mismatch(expected.thresholds[i].first, "missing threshold refresh");
    if (i >= expected.thresholds.size())
      return mismatch(updates[i].t, "unexpected threshold refresh");
    if (updates[i].t != expected.thresholds[i].first ||
        updates[i].price != expected.thresholds[i].second)
      return mismatch(updates[i].t, "threshold " + fr(updates[i].price) + " != expected " +
                                        fr(expected.thresholds[i].second));
  }

  std::vector<TraceEvent> decisions;
  for (const auto& e : run.trace.events)
    if (e.kind != EventKind::threshold_update) decisions.push_back(e);
  for (size_t i = 0; i < std::max(decisions.size(), expected.decisions.size()); ++i) {
    if (i >= decisions.size())
      return mismatch(expected.decisions[i].t, "missing decision for user " +
                                                   std::to_string(expected.decisions[i].user));
    if (i >= expected.decisions.size())
      return mismatch(decisions[i].t,
                      "unexpected decision for user " + std::to_string(decisions[i].user));
    const auto& got = decisions[i];
    const auto& want = expected.decisions[i];
    if (got.t != want.t || got.kind != want.kind || got.user != want.user ||
        got.price != want.price)
      return mismatch(got.t, "decision " + std::to_string(i + 1) + " differs (user " +
                                 std::to_string(got.user) + " at price " + fr(got.price) + ")");
  }

  if (run.outcome.winners != expected.winners)
    return mismatch(run.trace.steps.empty() ? 0 : run.trace.steps.back().t,
                    "winner set differs");
  for (size_t i = 0; i < expected.winners.size(); ++i)
    if (run.outcome.payment_for(expected.winners[i]) != expected.payments[i])
      return mismatch(0, "payment differs for user " + std::to_string(expected.winners[i]));
  return TraceDiff{};
}

}  // namespace mcs
