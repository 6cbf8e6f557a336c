#include "doctest.h"

#include <sstream>

#include "mcs/experiment.hpp"

using namespace mcs;

TEST_SUITE_BEGIN("experiment");

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

const std::vector<Mechanism> kZeroIntervalSet = {
    Mechanism::omz, Mechanism::prop_share_offline, Mechanism::greedy_offline,
    Mechanism::random_threshold};

}  // namespace

TEST_CASE("mechanism names round-trip") {
  for (Mechanism m : all_mechanisms()) CHECK(parse_mechanism(mechanism_name(m)) == m);
  CHECK(parse_mechanism("random") == Mechanism::random_threshold);
  CHECK_THROWS_AS(parse_mechanism("vcg"), std::invalid_argument);
}

TEST_CASE("rows come out replication-major in mechanism order") {
  MetricsTable table = run_experiment(small_config(), kZeroIntervalSet, 3);
  REQUIRE(table.rows.size() == 12);
  for (int rep = 0; rep < 3; ++rep)
    for (std::size_t k = 0; k < kZeroIntervalSet.size(); ++k) {
      const auto& row = table.rows[rep * kZeroIntervalSet.size() + k];
      CHECK(row.replication == rep);
      CHECK(row.mechanism == kZeroIntervalSet[k]);
    }
}

TEST_CASE("metrics are identical across reruns and worker counts") {
  std::ostringstream once, again, pooled;
  write_metrics_csv(once, run_experiment(small_config(), kZeroIntervalSet, 4, 1));
  write_metrics_csv(again, run_experiment(small_config(), kZeroIntervalSet, 4, 1));
  write_metrics_csv(pooled, run_experiment(small_config(), kZeroIntervalSet, 4, 3));
  CHECK(once.str() == again.str());
  CHECK(once.str() == pooled.str());
  CHECK(once.str().rfind("# mcs-metrics v1", 0) == 0);
  CHECK(once.str().find("ms") == std::string::npos);  // timings stay out of the file
}

TEST_CASE("summary matches its rows") {
  MetricsTable table = run_experiment(small_config(), kZeroIntervalSet, 5);
  for (Mechanism m : kZeroIntervalSet) {
    double sum = 0;
    int n = 0;
    for (const auto& row : table.rows)
      if (row.mechanism == m) {
        sum += row.total_value;
        ++n;
      }
    const MechanismSummary& s = table.summary_for(m);
    CHECK(s.replications == n);
    CHECK(s.mean_value == doctest::Approx(sum / n));
  }
  CHECK_THROWS_AS(table.summary_for(Mechanism::omg), std::invalid_argument);
}

TEST_CASE("payments in every row respect the budget") {
  MetricsTable table = run_experiment(small_config(), kZeroIntervalSet, 5);
  for (const auto& row : table.rows) {
    CHECK(row.total_payment <= 50.0 + 1e-9);
    if (row.mechanism != Mechanism::random_threshold) {
      CHECK(row.winner_count == static_cast<long long>(row.winner_count));
    }
    CHECK(row.user_count > 0);
  }
}

TEST_CASE("zero-interval mechanism refuses general streams") {
  ScenarioConfig c = small_config();
  c.interval_max = 8;
  CHECK_THROWS_AS(run_experiment(c, {Mechanism::omz}, 2), std::invalid_argument);
  MetricsTable table = run_experiment(c, {Mechanism::omg, Mechanism::prop_share_offline}, 2);
  CHECK(table.rows.size() == 4);
}

TEST_CASE("experiment rejects nonsense replication counts") {
  CHECK_THROWS_AS(run_experiment(small_config(), kZeroIntervalSet, 0), std::invalid_argument);
  CHECK_THROWS_AS(run_experiment(small_config(), {}, 3), std::invalid_argument);
}

TEST_SUITE_END();
