#include "mcs/trace.hpp"

#include <map>
#include <ostream>
#include <sstream>

#include "mcs/coverage.hpp"
#include "mcs/online.hpp"

namespace mcs {

std::vector<TraceEvent> RunTrace::threshold_updates() const {
  std::vector<TraceEvent> out;
  for (const auto& e : events)
    if (e.kind == EventKind::threshold_update) out.push_back(e);
  return out;
}

std::vector<TraceEvent> RunTrace::events_for(UserId id) const {
  std::vector<TraceEvent> out;
  for (const auto& e : events)
    if (e.kind != EventKind::threshold_update && e.user == id) out.push_back(e);
  return out;
}

namespace {

std::string fraction(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

const char* kind_name(EventKind k) {
  switch (k) {
    case EventKind::accept: return "accept";
    case EventKind::reject: return "reject";
    case EventKind::raise: return "raise";
    case EventKind::threshold_update: return "threshold";
  }
  return "?";
}

}  // namespace

void write_trace_csv(std::ostream& os, const RunTrace& trace, const AuctionOutcome& outcome) {
  os << "# mcs-trace v1\n";
  os << "t,stage,threshold,stage_budget,committed,winners,payments,events\n";
  std::vector<UserId> winners;
  std::map<UserId, Rational> prices;
  size_t next_event = 0;
  for (const auto& step : trace.steps) {
    std::string events_cell;
    for (; next_event < trace.events.size() && trace.events[next_event].t == step.t;
         ++next_event) {
      const auto& e = trace.events[next_event];
      if (e.kind == EventKind::accept) winners.push_back(e.user);
      if (e.kind == EventKind::accept || e.kind == EventKind::raise) prices[e.user] = e.price;
      if (!events_cell.empty()) events_cell += ';';
      events_cell += kind_name(e.kind);
      if (e.kind != EventKind::threshold_update)
        events_cell += ':' + std::to_string(e.user) + '@' + fraction(e.price);
      else
        events_cell += '@' + fraction(e.price);
    }
    std::string win_cell, pay_cell;
    for (UserId id : winners) {
      if (!win_cell.empty()) {
        win_cell += ';';
        pay_cell += ';';
      }
      win_cell += std::to_string(id);
      pay_cell += fraction(prices[id]);
    }
    os << step.t << ',' << step.stage << ',' << fraction(step.threshold) << ','
       << fraction(step.stage_budget) << ',' << fraction(step.committed_after) << ','
       << win_cell << ',' << pay_cell << ',' << events_cell << '\n';
  }
  os << "# total_value=" << outcome.total_value
     << " total_payment=" << fraction(outcome.total_payment) << '\n';
}

std::vector<AuditIssue> audit_run(const TaskUniverse& universe,
                                  const std::vector<DeclaredBid>& stream,
                                  const OnlineConfig& config, const RunResult& run) {
  std::vector<AuditIssue> issues;
  auto flag = [&issues](long long t, std::string what) {
    issues.push_back({t, std::move(what)});
  };

  StagePlan plan = StagePlan::make(config.deadline, config.budget);
  std::map<UserId, Rational> bid_of;
  for (const auto& b : stream) bid_of[b.id] = b.bid;

  if (run.trace.steps.size() != static_cast<size_t>(config.deadline))
    flag(0, "trace does not cover every step");

  std::vector<char> is_stage_end(config.deadline + 1, 0);
  for (long long e : plan.stage_end) is_stage_end[e] = 1;

  for (size_t k = 0; k < run.trace.steps.size(); ++k) {
    const auto& s = run.trace.steps[k];
    if (s.t != static_cast<long long>(k + 1)) flag(s.t, "steps out of order");
    if (s.stage != plan.stage_of(s.t)) flag(s.t, "stage label mismatch");
    if (s.stage_budget != plan.stage_budget[s.stage - 1]) flag(s.t, "stage budget mismatch");
    Rational bound = is_stage_end[s.t] ? s.stage_budget * 2 : s.stage_budget;
    if (s.committed_after > bound) flag(s.t, "stage budget exceeded");
    if (k + 1 < run.trace.steps.size() &&
        s.committed_after > run.trace.steps[k + 1].committed_after)
      flag(s.t, "committed total decreased");
  }

  std::map<UserId, Rational> last_price;
  std::map<UserId, bool> won;
  std::vector<UserId> accept_order;
  long long thresholds_seen = 0;
  for (const auto& e : run.trace.events) {
    if (e.kind == EventKind::threshold_update) {
      ++thresholds_seen;
      if (!is_stage_end[e.t]) flag(e.t, "threshold update away from a stage end");
      if (e.price <= 0) flag(e.t, "non-positive threshold");
      continue;
    }
    auto it = bid_of.find(e.user);
    if (it == bid_of.end()) {
      flag(e.t, "event for unknown user " + std::to_string(e.user));
      continue;
    }
    switch (e.kind) {
      case EventKind::accept:
        if (won[e.user]) flag(e.t, "user accepted twice: " + std::to_string(e.user));
        won[e.user] = true;
        accept_order.push_back(e.user);
        if (e.price < it->second)
          flag(e.t, "accepted below bid: user " + std::to_string(e.user));
        if (e.price > e.budget_left) flag(e.t, "accepted beyond stage budget");
        last_price[e.user] = e.price;
        break;
      case EventKind::raise:
        if (!won[e.user]) flag(e.t, "raise for a non-winner: " + std::to_string(e.user));
        else if (e.price <= last_price[e.user]) flag(e.t, "payment not raised strictly");
        if (e.price > e.budget_left) flag(e.t, "raise beyond stage budget");
        last_price[e.user] = e.price;
        break;
      case EventKind::reject: {
        // consumer sovereignty: an affordable at-or-above-bid offer is never rejected
        if (it->second <= e.price && e.price <= e.budget_left)
          flag(e.t, "rejected an admissible offer: user " + std::to_string(e.user));
        break;
      }
      default: break;
    }
  }
  if (thresholds_seen != plan.stage_count) flag(0, "missed a stage-end threshold update");

  if (accept_order != run.outcome.winners) flag(0, "winner list does not match accept events");
  Rational total(0);
  for (const auto& [id, p] : run.outcome.payments) {
    if (!won[id]) flag(0, "payment for a loser: user " + std::to_string(id));
    auto lp = last_price.find(id);
    if (lp == last_price.end() || lp->second != p)
      flag(0, "payment does not match final offered price: user " + std::to_string(id));
    auto bid = bid_of.find(id);
    if (bid != bid_of.end() && p < bid->second)
      flag(0, "winner paid less than bid: user " + std::to_string(id));
    total += p;
  }
  for (UserId id : run.outcome.winners)
    if (!run.outcome.payments.count(id)) flag(0, "winner without payment entry");
  if (total != run.outcome.total_payment) flag(0, "total payment mismatch");
  if (run.outcome.total_payment > config.budget) flag(0, "budget exceeded");
  if (run.outcome.total_value !=
      coverage_value(run.outcome.winners, stream, universe))
    flag(0, "coverage value mismatch");
  return issues;
}

}  // namespace mcs
