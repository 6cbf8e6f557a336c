#include "mcs/online.hpp"

#include <chrono>
#include <stdexcept>

#include "mcs/coverage.hpp"
#include "mcs/offline.hpp"

namespace mcs {
namespace {

using clock_type = std::chrono::steady_clock;

double ms_since(clock_type::time_point start) {
  return std::chrono::duration<double, std::milli>(clock_type::now() - start).count();
}

Rational refresh_threshold(const TaskUniverse& universe, const std::vector<DeclaredBid>& sample,
                           const Rational& stage_budget, const Rational& delta,
                           const Rational& previous, long long* evals) {
  if (delta < 1) throw std::invalid_argument("delta must be at least 1");
  GreedySelection sel = proportional_share_greedy(universe, sample, stage_budget);
  if (evals) *evals += sel.marginal_evals;
  if (sel.order.empty()) return previous;
  return Rational(sel.value) / stage_budget / delta;
}

void validate_stream(const TaskUniverse& universe, const std::vector<DeclaredBid>& stream,
                     const OnlineConfig& config, bool zero_interval) {
  universe.validate();
  if (config.budget <= 0) throw std::invalid_argument("budget must be positive");
  if (config.deadline < 1) throw std::invalid_argument("deadline must be >= 1");
  if (config.epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
  std::vector<char> arrival_taken(config.deadline + 1, 0);
  std::vector<UserId> seen;
  for (const auto& b : stream) {
    validate_bid(b, universe);
    if (b.departure > config.deadline)
      throw std::invalid_argument("user " + std::to_string(b.id) + " departs after the deadline");
    if (zero_interval) {
      if (b.arrival != b.departure)
        throw std::invalid_argument("user " + std::to_string(b.id) +
                                    " has a nonzero arrival-departure interval");
      if (arrival_taken[b.arrival])
        throw std::invalid_argument("two users arrive at step " + std::to_string(b.arrival));
      arrival_taken[b.arrival] = 1;
    }
    for (UserId id : seen)
      if (id == b.id) throw std::invalid_argument("duplicate user id " + std::to_string(b.id));
    seen.push_back(b.id);
  }
}

struct OnlineState {
  Rational horizon;       // T'
  Rational stage_budget;  // B'
  Rational threshold;     // rho*
  Rational committed{0};
  int stage = 1;
  std::vector<DeclaredBid> sample;
};

}  // namespace

Rational get_density_threshold(const TaskUniverse& universe,
                               const std::vector<DeclaredBid>& sample,
                               const Rational& stage_budget, const Rational& delta,
                               const Rational& previous) {
  if (stage_budget <= 0) throw std::invalid_argument("stage budget must be positive");
  return refresh_threshold(universe, sample, stage_budget, delta, previous, nullptr);
}

RunResult run_omz(const TaskUniverse& universe, const std::vector<DeclaredBid>& stream,
                  const OnlineConfig& config) {
  validate_stream(universe, stream, config, true);
  const auto run_start = clock_type::now();

  std::vector<int> arrival_of(config.deadline + 1, -1);
  for (size_t i = 0; i < stream.size(); ++i) arrival_of[stream[i].arrival] = static_cast<int>(i);

  CoverageOracle oracle(universe, task_sets_of(stream));
  const long long levels = std::bit_width(static_cast<unsigned long long>(config.deadline)) - 1;
  const Rational scale = Rational(1, BigInt(1) << levels);

  OnlineState st;
  st.horizon = Rational(config.deadline) * scale;
  st.stage_budget = config.budget * scale;
  st.threshold = config.epsilon;

  RunResult run;
  std::vector<Rational> price_of(stream.size(), Rational(0));
  std::vector<int> accepted_order;

  for (long long t = 1; t <= config.deadline; ++t) {
    StepRecord step{t, st.stage, st.threshold, st.stage_budget, Rational(0), 0, 0, 0};
    long long evals_before = oracle.marginal_evals() + run.counters.marginal_evals;
    int i = arrival_of[t];
    if (i >= 0) {
      step.online_count = 1;
      long long m = oracle.marginal(i);
      Rational price = Rational(m) / st.threshold;
      Rational left = st.stage_budget - st.committed;
      if (stream[i].bid <= price && price <= left) {
        price_of[i] = price;
        st.committed += price;
        accepted_order.push_back(i);
        oracle.add(i);
        run.trace.events.push_back({t, EventKind::accept, stream[i].id, price, left});
      } else {
        run.trace.events.push_back({t, EventKind::reject, stream[i].id, price, left});
      }
      st.sample.push_back(stream[i]);
    }
    if (t == floor_to_int(st.horizon)) {
      const auto th_start = clock_type::now();
      ++run.counters.threshold_calls;
      step.sample_count = static_cast<long long>(st.sample.size());
      Rational delta = config.delta.at(step.sample_count);
      st.threshold = refresh_threshold(universe, st.sample, st.stage_budget, delta, st.threshold,
                                       &run.counters.marginal_evals);
      run.counters.threshold_ms += ms_since(th_start);
      run.trace.events.push_back({t, EventKind::threshold_update, 0, st.threshold, Rational(0)});
      st.horizon *= 2;
      st.stage_budget *= 2;
      ++st.stage;
    }
    step.committed_after = st.committed;
    step.marginal_evals = oracle.marginal_evals() + run.counters.marginal_evals - evals_before;
    run.trace.steps.push_back(step);
  }

  for (int idx : accepted_order) {
    run.outcome.winners.push_back(stream[idx].id);
    run.outcome.payments[stream[idx].id] = price_of[idx];
    run.outcome.total_payment += price_of[idx];
  }
  run.outcome.total_value = oracle.value();
  run.counters.marginal_evals += oracle.marginal_evals();
  run.counters.run_ms = ms_since(run_start);
  return run;
}

RunResult run_omg(const TaskUniverse& universe, const std::vector<DeclaredBid>& stream,
                  const OnlineConfig& config) {
  validate_stream(universe, stream, config, false);
  const auto run_start = clock_type::now();

  std::vector<std::vector<int>> arrivals(config.deadline + 1), departures(config.deadline + 1);
  for (size_t i = 0; i < stream.size(); ++i) {
    arrivals[stream[i].arrival].push_back(static_cast<int>(i));
    departures[stream[i].departure].push_back(static_cast<int>(i));
  }

  CoverageOracle oracle(universe, task_sets_of(stream));
  const long long levels = std::bit_width(static_cast<unsigned long long>(config.deadline)) - 1;
  const Rational scale = Rational(1, BigInt(1) << levels);

  OnlineState st;
  st.horizon = Rational(config.deadline) * scale;
  st.stage_budget = config.budget * scale;
  st.threshold = config.epsilon;

  RunResult run;
  std::vector<Rational> price_of(stream.size(), Rational(0));
  std::vector<char> winner(stream.size(), 0), online(stream.size(), 0);
  std::vector<int> online_list;
  std::vector<int> accepted_order;

  // marginal treating a selected user as if it were outside the set
  auto standalone_marginal = [&](int i) {
    if (!winner[i]) return oracle.marginal(i);
    oracle.remove(i);
    long long m = oracle.marginal(i);
    oracle.add(i);
    return m;
  };

  for (long long t = 1; t <= config.deadline; ++t) {
    StepRecord step{t, st.stage, st.threshold, st.stage_budget, Rational(0), 0, 0, 0};
    long long evals_before = oracle.marginal_evals() + run.counters.marginal_evals;
    for (int i : arrivals[t]) {
      online[i] = 1;
      online_list.push_back(i);
    }
    step.online_count = static_cast<long long>(online_list.size());

    // decide newcomers and still-pending users, highest marginal value first
    std::vector<char> pending(stream.size(), 0);
    int pending_count = 0;
    for (int i : online_list)
      if (online[i] && !winner[i]) {
        pending[i] = 1;
        ++pending_count;
      }
    while (pending_count > 0) {
      int best = -1;
      long long best_m = -1;
      for (int i : online_list) {
        if (!pending[i]) continue;
        long long m = oracle.marginal(i);
        if (m > best_m || (m == best_m && stream[i].id < stream[best].id)) {
          best = i;
          best_m = m;
        }
      }
      Rational price = Rational(best_m) / st.threshold;
      Rational left = st.stage_budget - st.committed;
      if (stream[best].bid <= price && price <= left) {
        winner[best] = 1;
        price_of[best] = price;
        st.committed += price;
        accepted_order.push_back(best);
        oracle.add(best);
        run.trace.events.push_back({t, EventKind::accept, stream[best].id, price, left});
      } else {
        run.trace.events.push_back({t, EventKind::reject, stream[best].id, price, left});
      }
      pending[best] = 0;
      --pending_count;
    }

    for (int i : departures[t]) {
      online[i] = 0;
      st.sample.push_back(stream[i]);
    }
    std::erase_if(online_list, [&](int i) { return !online[i]; });

    if (t == floor_to_int(st.horizon)) {
      const auto th_start = clock_type::now();
      ++run.counters.threshold_calls;
      step.sample_count = static_cast<long long>(st.sample.size());
      Rational delta = config.delta.at(step.sample_count);
      st.threshold = refresh_threshold(universe, st.sample, st.stage_budget, delta, st.threshold,
                                       &run.counters.marginal_evals);
      run.counters.threshold_ms += ms_since(th_start);
      run.trace.events.push_back({t, EventKind::threshold_update, 0, st.threshold, Rational(0)});
      st.horizon *= 2;
      st.stage_budget *= 2;
      ++st.stage;

      // re-decide everyone still online under the new threshold; payments may
      // only move up, and a raise frees the winner's old price first
      std::vector<char> todo(stream.size(), 0);
      int todo_count = 0;
      for (int i : online_list) {
        todo[i] = 1;
        ++todo_count;
      }
      while (todo_count > 0) {
        int best = -1;
        long long best_m = -1;
        for (int i : online_list) {
          if (!todo[i]) continue;
          long long m = standalone_marginal(i);
          if (m > best_m || (m == best_m && stream[i].id < stream[best].id)) {
            best = i;
            best_m = m;
          }
        }
        Rational price = Rational(best_m) / st.threshold;
        Rational headroom = st.stage_budget - st.committed + price_of[best];
        if (stream[best].bid <= price && price <= headroom && price > price_of[best]) {
          st.committed += price - price_of[best];
          price_of[best] = price;
          if (!winner[best]) {
            winner[best] = 1;
            accepted_order.push_back(best);
            oracle.add(best);
            run.trace.events.push_back({t, EventKind::accept, stream[best].id, price, headroom});
          } else {
            run.trace.events.push_back({t, EventKind::raise, stream[best].id, price, headroom});
          }
        }
        todo[best] = 0;
        --todo_count;
      }
    }
    step.committed_after = st.committed;
    step.marginal_evals = oracle.marginal_evals() + run.counters.marginal_evals - evals_before;
    run.trace.steps.push_back(step);
  }

  for (int idx : accepted_order) {
    run.outcome.winners.push_back(stream[idx].id);
    run.outcome.payments[stream[idx].id] = price_of[idx];
    run.outcome.total_payment += price_of[idx];
  }
  run.outcome.total_value = oracle.value();
  run.counters.marginal_evals += oracle.marginal_evals();
  run.counters.run_ms = ms_since(run_start);
  return run;
}

}  // namespace mcs
