#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mcs/model.hpp"

namespace mcs {

enum class EventKind { accept, reject, raise, threshold_update };

// One decision or threshold change. For decisions, `price` is the offered
// payment at that point and `budget_left` the stage budget headroom before
// the decision was applied. For threshold updates, `price` is the new value.
struct TraceEvent {
  long long t = 0;
  EventKind kind = EventKind::reject;
  UserId user = 0;
  Rational price{0};
  Rational budget_left{0};
};

// Per-step snapshot. `threshold` and `stage_budget` are the values in force
// while the step's arrivals were decided; `committed_after` is the payment
// total once the step (including any stage-end updates) finished.
struct StepRecord {
  long long t = 0;
  int stage = 0;
  Rational threshold{0};
  Rational stage_budget{0};
  Rational committed_after{0};
  long long online_count = 0;   // users awaiting a decision during this step
  long long sample_count = 0;   // sample-set size when a stage ended here, else 0
  long long marginal_evals = 0; // value-oracle queries charged to this step
};

struct RunCounters {
  long long marginal_evals = 0;
  long long threshold_calls = 0;
  double run_ms = 0.0;
  double threshold_ms = 0.0;
};

struct RunTrace {
  std::vector<StepRecord> steps;
  std::vector<TraceEvent> events;

  std::vector<TraceEvent> threshold_updates() const;
  std::vector<TraceEvent> events_for(UserId id) const;
};

struct RunResult {
  AuctionOutcome outcome;
  RunTrace trace;
  RunCounters counters;
};

struct OnlineConfig;  // online.hpp

// Writes the run as CSV: a versioned header comment, one row per step and
// per decision event. Payments and thresholds are exact fractions.
void write_trace_csv(std::ostream& os, const RunTrace& trace, const AuctionOutcome& outcome);

struct AuditIssue {
  long long t = 0;
  std::string what;
};

// Re-checks safety invariants of a finished online run against its own trace:
// stage budget never exceeded, winners paid at least their bid, losers paid
// nothing, per-user offered payments never revised downward, accepted offers
// within the remaining stage budget, and outcome totals consistent.
std::vector<AuditIssue> audit_run(const TaskUniverse& universe,
                                  const std::vector<DeclaredBid>& stream,
                                  const OnlineConfig& config, const RunResult& run);

}  // namespace mcs
