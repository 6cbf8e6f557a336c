#include "mcs/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "mcs/offline.hpp"
#include "mcs/rng.hpp"

namespace mcs {

Mechanism parse_mechanism(const std::string& name) {
  if (name == "omz") return Mechanism::omz;
  if (name == "omg") return Mechanism::omg;
  if (name == "prop_share_offline") return Mechanism::prop_share_offline;
  if (name == "greedy_offline") return Mechanism::greedy_offline;
  if (name == "random") return Mechanism::random_threshold;
  throw std::invalid_argument("unknown mechanism: " + name);
}

const char* mechanism_name(Mechanism mechanism) {
  switch (mechanism) {
    case Mechanism::omz: return "omz";
    case Mechanism::omg: return "omg";
    case Mechanism::prop_share_offline: return "prop_share_offline";
    case Mechanism::greedy_offline: return "greedy_offline";
    case Mechanism::random_threshold: return "random";
  }
  return "?";
}

const std::vector<Mechanism>& all_mechanisms() {
  static const std::vector<Mechanism> all = {
      Mechanism::omz, Mechanism::omg, Mechanism::prop_share_offline,
      Mechanism::greedy_offline, Mechanism::random_threshold};
  return all;
}

const MechanismSummary& MetricsTable::summary_for(Mechanism mechanism) const {
  for (const auto& s : summary)
    if (s.mechanism == mechanism) return s;
  throw std::invalid_argument("no summary for mechanism");
}

namespace {

double utility_sum(const AuctionOutcome& outcome, const std::vector<UserProfile>& users) {
  Rational sum(0);
  for (const auto& u : users)
    if (outcome.is_winner(u.id)) sum += outcome.payment_for(u.id) - u.cost;
  return to_double(sum);
}

ReplicationMetrics measure_outcome(const AuctionOutcome& outcome,
                                   const std::vector<UserProfile>& users) {
  ReplicationMetrics r;
  r.user_count = static_cast<long long>(users.size());
  r.winner_count = static_cast<double>(outcome.winners.size());
  r.total_value = static_cast<double>(outcome.total_value);
  r.total_payment = to_double(outcome.total_payment);
  r.sum_utility = utility_sum(outcome, users);
  return r;
}

}  // namespace

ReplicationMetrics random_baseline_average(const TaskUniverse& universe,
                                           const std::vector<UserProfile>& users,
                                           const Rational& budget, std::uint64_t seed) {
  std::vector<DeclaredBid> bids;
  for (const auto& u : users) bids.push_back(truthful_bid(u));
  Rng rng(seed);
  const int draws = 50;
  ReplicationMetrics acc;
  acc.user_count = static_cast<long long>(users.size());
  for (int d = 0; d < draws; ++d) {
    Rational rho(rng.uniform_int(1000, 29000), 1000);
    AuctionOutcome out = random_threshold_mechanism(universe, bids, budget, rho);
    acc.winner_count += static_cast<double>(out.winners.size());
    acc.total_value += static_cast<double>(out.total_value);
    acc.total_payment += to_double(out.total_payment);
    acc.sum_utility += utility_sum(out, users);
  }
  acc.winner_count /= draws;
  acc.total_value /= draws;
  acc.total_payment /= draws;
  acc.sum_utility /= draws;
  return acc;
}

MetricsTable run_experiment(const ScenarioConfig& config,
                            const std::vector<Mechanism>& mechanisms, int replications,
                            int workers) {
  if (replications < 1) throw std::invalid_argument("need at least one replication");
  if (mechanisms.empty()) throw std::invalid_argument("no mechanisms requested");
  if (workers < 1) workers = 1;
  for (Mechanism m : mechanisms)
    if (m == Mechanism::omz && config.interval_max != 0)
      throw std::invalid_argument("omz requires a zero-interval scenario (interval_max = 0)");

  const PoiGrid grid = generate_poi_grid(config.geometry);
  MetricsTable table;
  table.rows.resize(static_cast<size_t>(replications) * mechanisms.size());

  auto run_replication = [&](int rep) {
    const std::uint64_t sub = derive_seed(config.seed, static_cast<std::uint64_t>(rep));
    std::vector<UserProfile> users = generate_user_stream(config, grid, sub);
    std::vector<DeclaredBid> bids;
    for (const auto& u : users) bids.push_back(truthful_bid(u));

    for (size_t k = 0; k < mechanisms.size(); ++k) {
      const auto start = std::chrono::steady_clock::now();
      ReplicationMetrics row;
      switch (mechanisms[k]) {
        case Mechanism::omz: {
          RunResult r = run_omz(grid.universe, bids, config.online());
          row = measure_outcome(r.outcome, users);
          row.marginal_evals = r.counters.marginal_evals;
          row.threshold_ms = r.counters.threshold_ms;
          break;
        }
        case Mechanism::omg: {
          RunResult r = run_omg(grid.universe, bids, config.online());
          row = measure_outcome(r.outcome, users);
          row.marginal_evals = r.counters.marginal_evals;
          row.threshold_ms = r.counters.threshold_ms;
          break;
        }
        case Mechanism::prop_share_offline:
          row = measure_outcome(proportional_share_offline(grid.universe, bids, config.budget),
                                users);
          break;
        case Mechanism::greedy_offline:
          row = measure_outcome(greedy_budgeted_max_coverage(grid.universe, bids, config.budget),
                                users);
          break;
        case Mechanism::random_threshold:
          row = random_baseline_average(grid.universe, users, config.budget,
                                        derive_seed(sub, 0x5eedULL));
          break;
      }
      row.replication = rep;
      row.mechanism = mechanisms[k];
      row.run_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                             start)
                       .count();
      table.rows[static_cast<size_t>(rep) * mechanisms.size() + k] = row;
    }
  };

  if (workers == 1 || replications <= 1) {
    for (int rep = 0; rep < replications; ++rep) run_replication(rep);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    const int count = std::min(workers, replications);
    pool.reserve(count);
    for (int w = 0; w < count; ++w)
      pool.emplace_back([&] {
        for (int rep = next.fetch_add(1); rep < replications; rep = next.fetch_add(1))
          run_replication(rep);
      });
    for (auto& th : pool) th.join();
  }

  for (Mechanism m : mechanisms) {
    MechanismSummary s;
    s.mechanism = m;
    double sum = 0, sum_sq = 0, pay = 0, win = 0;
    for (const auto& r : table.rows) {
      if (r.mechanism != m) continue;
      ++s.replications;
      sum += r.total_value;
      sum_sq += r.total_value * r.total_value;
      pay += r.total_payment;
      win += r.winner_count;
    }
    if (s.replications > 0) {
      s.mean_value = sum / s.replications;
      s.mean_payment = pay / s.replications;
      s.mean_winners = win / s.replications;
      const double var = sum_sq / s.replications - s.mean_value * s.mean_value;
      s.std_value = var > 0 ? std::sqrt(var) : 0;
    }
    table.summary.push_back(s);
  }
  return table;
}

void write_metrics_csv(std::ostream& os, const MetricsTable& table) {
  char buf[64];
  auto num = [&buf](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  os << "# mcs-metrics v1\n";
  os << "replication,mechanism,users,winners,total_value,total_payment,sum_utility,"
        "marginal_evals\n";
  for (const auto& r : table.rows) {
    os << r.replication << ',' << mechanism_name(r.mechanism) << ',' << r.user_count << ','
       << num(r.winner_count) << ',' << num(r.total_value) << ',' << num(r.total_payment) << ','
       << num(r.sum_utility) << ',' << r.marginal_evals << '\n';
  }
  for (const auto& s : table.summary) {
    os << "# summary mechanism=" << mechanism_name(s.mechanism) << " n=" << s.replications
       << " mean_value=" << num(s.mean_value) << " std_value=" << num(s.std_value)
       << " mean_payment=" << num(s.mean_payment) << " mean_winners=" << num(s.mean_winners)
       << '\n';
  }
}

}  // namespace mcs
