#pragma once

#include <string>
#include <vector>

#include "mcs/online.hpp"

namespace mcs {

// Frozen reference traces for the built-in walkthrough scenarios. The trace
// subcommand and the replay tests diff live runs against these.
struct ExpectedTrace {
  std::vector<std::pair<long long, Rational>> thresholds;  // (t, refreshed value)
  std::vector<TraceEvent> decisions;                       // t/kind/user/price
  std::vector<UserId> winners;
  std::vector<Rational> payments;  // aligned with winners
};

struct DemoScenario {
  std::string name;
  TaskUniverse universe;
  std::vector<UserProfile> users;
  OnlineConfig config;
  bool general = false;  // run via run_omg instead of run_omz
  ExpectedTrace expected;
};

const std::vector<std::string>& demo_scenario_names();
const DemoScenario& demo_scenario(const std::string& name);

RunResult run_demo(const DemoScenario& demo);

struct TraceDiff {
  bool match = true;
  long long first_step = 0;
  std::string detail;
};

// Compares decisions, threshold refreshes, winners and payments; reports the
// first differing time step.
TraceDiff diff_against_expected(const RunResult& run, const ExpectedTrace& expected);

}  // namespace mcs
