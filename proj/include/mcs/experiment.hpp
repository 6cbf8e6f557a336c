#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mcs/scenario.hpp"

namespace mcs {

enum class Mechanism { omz, omg, prop_share_offline, greedy_offline, random_threshold };

Mechanism parse_mechanism(const std::string& name);
const char* mechanism_name(Mechanism mechanism);
const std::vector<Mechanism>& all_mechanisms();

// One auction run (or, for the random baseline, the 50-draw average of runs
// on the same stream). Values are doubles because the random baseline
// averages; non-averaged rows hold exact integers/decimals.
struct ReplicationMetrics {
  int replication = 0;
  Mechanism mechanism = Mechanism::omz;
  long long user_count = 0;
  double winner_count = 0;
  double total_value = 0;
  double total_payment = 0;
  double sum_utility = 0;  // winners' payment minus true cost, truthful bids
  long long marginal_evals = 0;
  double run_ms = 0;        // in-memory only, not exported
  double threshold_ms = 0;  // in-memory only, not exported
};

struct MechanismSummary {
  Mechanism mechanism = Mechanism::omz;
  int replications = 0;
  double mean_value = 0, std_value = 0;
  double mean_payment = 0;
  double mean_winners = 0;
};

struct MetricsTable {
  std::vector<ReplicationMetrics> rows;
  std::vector<MechanismSummary> summary;

  const MechanismSummary& summary_for(Mechanism mechanism) const;
};

// Runs `replications` independent scenarios (sub-seed per replication index)
// through every requested mechanism. Offline mechanisms see the full realized
// stream; the random baseline averages 50 threshold draws. Rows are ordered
// by (replication, mechanism) regardless of worker count.
MetricsTable run_experiment(const ScenarioConfig& config,
                            const std::vector<Mechanism>& mechanisms, int replications,
                            int workers = 1);

// Deterministic CSV (timings excluded); summary appended as comment lines.
void write_metrics_csv(std::ostream& os, const MetricsTable& table);

// Fixed-threshold baseline averaged over 50 uniform draws of rho in [1, 29].
ReplicationMetrics random_baseline_average(const TaskUniverse& universe,
                                           const std::vector<UserProfile>& users,
                                           const Rational& budget, std::uint64_t seed);

}  // namespace mcs
