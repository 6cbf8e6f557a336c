#include "mcs/sweeps.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "mcs/rng.hpp"
#include "mcs/trace.hpp"

namespace mcs {
namespace {

std::atomic<long long> g_runs{0};
std::atomic<long long> g_audits{0};

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string dump_declarations(const TaskUniverse& universe,
                              const std::vector<DeclaredBid>& stream,
                              const OnlineConfig& config) {
  std::ostringstream os;
  os << "tasks";
  for (int r : universe.requirement) os << ' ' << r;
  os << "\nbudget " << config.budget << "\ndeadline " << config.deadline << "\nepsilon "
     << config.epsilon << "\ndelta " << config.delta.initial << ' ' << config.delta.target
     << ' ' << config.delta.switch_size << '\n';
  for (const auto& b : stream) {
    os << "bid " << b.id << " window " << b.arrival << ' ' << b.departure << " price " << b.bid
       << " tasks";
    for (int t : b.tasks) os << ' ' << t;
    os << '\n';
  }
  return os.str();
}

RunResult run_checked(const TaskUniverse& universe, const std::vector<DeclaredBid>& stream,
                      const OnlineConfig& config, Mechanism mechanism) {
  if (mechanism != Mechanism::omz && mechanism != Mechanism::omg)
    throw std::invalid_argument("deviation sweeps require an online mechanism");
  RunResult run = mechanism == Mechanism::omz ? run_omz(universe, stream, config)
                                              : run_omg(universe, stream, config);
  g_runs.fetch_add(1, std::memory_order_relaxed);
  auto issues = audit_run(universe, stream, config, run);
  g_audits.fetch_add(1, std::memory_order_relaxed);
  if (!issues.empty()) {
    std::ostringstream what;
    what << mechanism_name(mechanism) << " invariant violated at t=" << issues.front().t << ": "
         << issues.front().what;
    std::ostringstream dump;
    dump << "# " << mechanism_name(mechanism) << " invariant violation\n";
    for (const auto& issue : issues) dump << "# t=" << issue.t << ' ' << issue.what << '\n';
    dump << dump_declarations(universe, stream, config);
    throw AuditFailure(what.str(), dump.str());
  }
  return run;
}

const UserProfile& profile_of(const std::vector<UserProfile>& users, UserId id) {
  for (const auto& u : users)
    if (u.id == id) return u;
  throw std::invalid_argument("no user with id " + std::to_string(id));
}

Rational utility_of(const RunResult& run, UserId id, const Rational& cost) {
  if (!run.outcome.is_winner(id)) return Rational(0);
  return run.outcome.payment_for(id) - cost;
}

DeviationPoint measure_point(const RunResult& run, UserId id, const Rational& cost,
                             const Rational& grid_value) {
  DeviationPoint p;
  p.value = grid_value;
  p.won = run.outcome.is_winner(id);
  p.payment = run.outcome.payment_for(id);
  p.utility = utility_of(run, id, cost);
  return p;
}

}  // namespace

const char* deviation_axis_name(DeviationAxis axis) {
  switch (axis) {
    case DeviationAxis::bid: return "bid";
    case DeviationAxis::arrival: return "arrival";
    case DeviationAxis::departure: return "departure";
  }
  return "?";
}

long long harness_run_count() { return g_runs.load(std::memory_order_relaxed); }
long long harness_audit_count() { return g_audits.load(std::memory_order_relaxed); }

DeviationSweep bid_deviation_sweep(const TaskUniverse& universe,
                                   const std::vector<UserProfile>& users,
                                   const OnlineConfig& config, Mechanism mechanism,
                                   UserId target, const std::vector<Rational>& grid) {
  const UserProfile& truth = profile_of(users, target);
  std::vector<DeclaredBid> declarations;
  declarations.reserve(users.size());
  std::size_t slot = 0;
  for (std::size_t i = 0; i < users.size(); ++i) {
    declarations.push_back(truthful_bid(users[i]));
    if (users[i].id == target) slot = i;
  }

  DeviationSweep sweep;
  sweep.user = target;
  sweep.axis = DeviationAxis::bid;
  for (std::size_t i = 0; i < declarations.size(); ++i)
    if (i != slot) sweep.coplayers.push_back(declarations[i]);

  RunResult truthful_run = run_checked(universe, declarations, config, mechanism);
  sweep.truthful_utility = utility_of(truthful_run, target, truth.cost);

  for (const Rational& b : grid) {
    if (b <= 0) throw std::invalid_argument("deviated bid must be positive");
    declarations[slot].bid = b;
    RunResult run = run_checked(universe, declarations, config, mechanism);
    DeviationPoint p = measure_point(run, target, truth.cost, b);
    if (p.utility > sweep.truthful_utility) sweep.truthful_is_max = false;
    sweep.points.push_back(std::move(p));
  }
  return sweep;
}

DeviationSweep time_deviation_sweep(const TaskUniverse& universe,
                                    const std::vector<UserProfile>& users,
                                    const OnlineConfig& config, UserId target,
                                    DeviationAxis axis, const std::vector<long long>& grid) {
  if (axis == DeviationAxis::bid)
    throw std::invalid_argument("bid axis belongs to bid_deviation_sweep");
  const UserProfile& truth = profile_of(users, target);
  std::vector<DeclaredBid> declarations;
  declarations.reserve(users.size());
  std::size_t slot = 0;
  for (std::size_t i = 0; i < users.size(); ++i) {
    declarations.push_back(truthful_bid(users[i]));
    if (users[i].id == target) slot = i;
  }

  DeviationSweep sweep;
  sweep.user = target;
  sweep.axis = axis;
  for (std::size_t i = 0; i < declarations.size(); ++i)
    if (i != slot) sweep.coplayers.push_back(declarations[i]);

  RunResult truthful_run = run_checked(universe, declarations, config, Mechanism::omg);
  sweep.truthful_utility = utility_of(truthful_run, target, truth.cost);

  for (long long v : grid) {
    DeclaredBid& d = declarations[slot];
    if (axis == DeviationAxis::arrival) {
      d.arrival = v;
    } else {
      d.departure = v;
    }
    if (!admissible_declaration(d, truth))
      throw std::invalid_argument("declared window must stay inside the true one");
    RunResult run = run_checked(universe, declarations, config, Mechanism::omg);
    DeviationPoint p = measure_point(run, target, truth.cost, Rational(v));
    if (p.utility > sweep.truthful_utility) sweep.truthful_is_max = false;
    sweep.points.push_back(std::move(p));
  }
  return sweep;
}

std::vector<Rational> default_bid_grid(const TaskUniverse& universe,
                                       const std::vector<UserProfile>& users,
                                       const OnlineConfig& config, Mechanism mechanism,
                                       UserId target) {
  const UserProfile& truth = profile_of(users, target);
  std::vector<DeclaredBid> declarations;
  declarations.reserve(users.size());
  for (const auto& u : users) declarations.push_back(truthful_bid(u));
  RunResult run = run_checked(universe, declarations, config, mechanism);

  std::set<Rational> values;
  const Rational cent(1, 100);
  for (const Rational& mult : {Rational(1, 2), Rational(1), Rational(3, 2), Rational(2), Rational(4)})
    values.insert(truth.cost * mult);
  for (const TraceEvent& e : run.trace.events_for(target)) {
    if (e.kind == EventKind::threshold_update) continue;
    values.insert(e.price);
    values.insert(e.price - cent);
    values.insert(e.price + cent);
  }
  std::vector<Rational> grid;
  for (const Rational& v : values)
    if (v > 0) grid.push_back(v);
  return grid;
}

void write_deviation_csv(std::ostream& os, const DeviationSweep& sweep) {
  os << "# mcs-deviation v1\n";
  os << "user,axis,value,won,payment,utility\n";
  for (const auto& p : sweep.points)
    os << sweep.user << ',' << deviation_axis_name(sweep.axis) << ',' << p.value << ','
       << (p.won ? 1 : 0) << ',' << p.payment << ',' << p.utility << '\n';
  os << "# truthful_utility=" << sweep.truthful_utility
     << " truthful_is_max=" << (sweep.truthful_is_max ? 1 : 0) << '\n';
}

RandomInstance make_random_instance(std::uint64_t seed, const RandomInstanceSpec& spec) {
  if (spec.min_users < 1 || spec.max_users < spec.min_users || spec.min_tasks < 1 ||
      spec.max_tasks < spec.min_tasks || spec.max_interval < 0)
    throw std::invalid_argument("bad random instance spec");
  Rng rng(seed);
  RandomInstance inst;

  int m = static_cast<int>(rng.uniform_int(spec.min_tasks, spec.max_tasks));
  inst.universe.requirement.assign(m, 1);
  for (int j = 0; j < m; ++j)
    if (rng.uniform_int(0, 4) == 0) inst.universe.requirement[j] = 2;

  const long long deadlines[] = {16, 32, 64};
  long long deadline = deadlines[rng.uniform_int(0, 2)];
  bool zero_interval = spec.max_interval == 0;

  int n = static_cast<int>(rng.uniform_int(spec.min_users, spec.max_users));
  if (zero_interval && n > deadline) n = static_cast<int>(deadline);

  std::vector<long long> arrivals;
  if (zero_interval) {
    // distinct arrival steps: partial Fisher-Yates over 1..T
    std::vector<long long> steps(deadline);
    for (long long t = 0; t < deadline; ++t) steps[t] = t + 1;
    for (int i = 0; i < n; ++i) {
      long long j = rng.uniform_int(i, deadline - 1);
      std::swap(steps[i], steps[j]);
      arrivals.push_back(steps[i]);
    }
  } else {
    for (int i = 0; i < n; ++i) arrivals.push_back(rng.uniform_int(1, deadline));
  }
  std::sort(arrivals.begin(), arrivals.end());

  for (int i = 0; i < n; ++i) {
    UserProfile u;
    u.id = i + 1;
    u.arrival = arrivals[i];
    if (zero_interval) {
      u.departure = u.arrival;
    } else {
      long long span = std::min(spec.max_interval, deadline / 2);
      u.departure = std::min(u.arrival + rng.uniform_int(0, span), deadline);
    }
    if (rng.uniform_int(0, 9) < 7) {
      // contiguous task window, the common road-segment shape
      int start = static_cast<int>(rng.uniform_int(0, m - 1));
      int len = static_cast<int>(rng.uniform_int(1, std::min<long long>(m, 8)));
      for (int k = start; k < std::min(start + len, m); ++k) u.tasks.push_back(k);
    } else {
      std::set<int> picks;
      long long want = rng.uniform_int(1, std::min<long long>(m, 6));
      while (static_cast<long long>(picks.size()) < want)
        picks.insert(static_cast<int>(rng.uniform_int(0, m - 1)));
      u.tasks.assign(picks.begin(), picks.end());
    }
    u.cost = Rational(rng.uniform_int(50, 1000), 100);
    inst.users.push_back(std::move(u));
  }

  inst.config.budget = Rational(rng.uniform_int(400, 400 + 700LL * n), 100);
  inst.config.deadline = deadline;
  if (spec.vary_epsilon) {
    const Rational eps[] = {Rational(1, 2), Rational(1), Rational(2)};
    inst.config.epsilon = eps[rng.uniform_int(0, 2)];
  }
  const Rational targets[] = {Rational(1), Rational(2), Rational(4)};
  inst.config.delta.target = targets[rng.uniform_int(0, 2)];
  inst.config.delta.switch_size = rng.uniform_int(0, 1) == 0 ? 4 : 240;
  return inst;
}

std::string dump_instance(const RandomInstance& instance) {
  std::ostringstream os;
  os << "tasks";
  for (int r : instance.universe.requirement) os << ' ' << r;
  os << "\nbudget " << instance.config.budget << "\ndeadline " << instance.config.deadline
     << "\nepsilon " << instance.config.epsilon << "\ndelta " << instance.config.delta.initial
     << ' ' << instance.config.delta.target << ' ' << instance.config.delta.switch_size << '\n';
  for (const auto& u : instance.users) {
    os << "user " << u.id << " window " << u.arrival << ' ' << u.departure << " cost " << u.cost
       << " tasks";
    for (int t : u.tasks) os << ' ' << t;
    os << '\n';
  }
  return os.str();
}

namespace {

std::string write_repro(const std::string& repro_dir, int index, const std::string& body) {
  std::filesystem::path dir = repro_dir.empty() ? "." : repro_dir;
  std::filesystem::create_directories(dir);
  std::filesystem::path path = dir / ("truthfulness_repro_" + std::to_string(index) + ".txt");
  std::ofstream out(path);
  out << body;
  return path.string();
}

std::vector<long long> window_grid(long long lo, long long hi) {
  std::set<long long> values = {lo, hi};
  if (hi - lo >= 1) values.insert(lo + 1);
  if (hi - lo >= 2) values.insert(hi - 1);
  values.insert(lo + (hi - lo) / 2);
  return {values.begin(), values.end()};
}

const DeviationPoint* best_point(const DeviationSweep& sweep) {
  const DeviationPoint* best = nullptr;
  for (const auto& p : sweep.points)
    if (!best || p.utility > best->utility) best = &p;
  return best;
}

}  // namespace

CertificationReport certify_truthfulness(std::uint64_t seed, int instances,
                                         const std::string& repro_dir, std::ostream* progress,
                                         bool stop_on_first, bool include_general) {
  if (instances < 1) throw std::invalid_argument("need at least one instance");
  CertificationReport report;

  for (int idx = 0; idx < instances; ++idx) {
    for (int variant = 0; variant < (include_general ? 2 : 1); ++variant) {
      RandomInstanceSpec spec;
      spec.max_interval = variant == 0 ? 0 : 16;
      std::uint64_t sub = derive_seed(seed, static_cast<std::uint64_t>(idx) * 2 + variant);
      RandomInstance inst = make_random_instance(sub, spec);
      Mechanism mechanism = variant == 0 ? Mechanism::omz : Mechanism::omg;
      report.instances += 1;

      auto flag_violation = [&](const DeviationSweep& sweep) {
        const DeviationPoint* best = best_point(sweep);
        std::ostringstream body;
        body << "# strict gain over truth-telling under " << mechanism_name(mechanism) << '\n'
             << "# seed " << sub << " user " << sweep.user << " axis "
             << deviation_axis_name(sweep.axis) << '\n';
        if (best)
          body << "# deviated value " << best->value << " utility " << best->utility
               << " truthful utility " << sweep.truthful_utility << '\n';
        body << dump_instance(inst);
        report.violations += 1;
        if (mechanism == Mechanism::omz) {
          report.omz_bid_violations += 1;
        } else if (sweep.axis == DeviationAxis::bid) {
          report.omg_bid_violations += 1;
        } else if (sweep.axis == DeviationAxis::arrival) {
          report.omg_arrival_violations += 1;
        } else {
          report.omg_departure_violations += 1;
        }
        if (report.first_repro_path.empty())
          report.first_repro_path = write_repro(repro_dir, idx, body.str());
      };

      try {
        for (const UserProfile& u : inst.users) {
          DeviationSweep sweep = bid_deviation_sweep(
              inst.universe, inst.users, inst.config, mechanism, u.id,
              default_bid_grid(inst.universe, inst.users, inst.config, mechanism, u.id));
          report.sweeps += 1;
          report.grid_points += static_cast<long long>(sweep.points.size());
          if (!sweep.truthful_is_max) {
            flag_violation(sweep);
            if (stop_on_first) return report;
          }
          if (mechanism == Mechanism::omg) {
            for (DeviationAxis axis : {DeviationAxis::arrival, DeviationAxis::departure}) {
              std::vector<long long> grid = window_grid(u.arrival, u.departure);
              DeviationSweep time_sweep =
                  time_deviation_sweep(inst.universe, inst.users, inst.config, u.id, axis, grid);
              report.sweeps += 1;
              report.grid_points += static_cast<long long>(time_sweep.points.size());
              if (!time_sweep.truthful_is_max) {
                flag_violation(time_sweep);
                if (stop_on_first) return report;
              }
            }
          }
        }
      } catch (const AuditFailure& failure) {
        report.violations += 1;
        if (report.first_repro_path.empty())
          report.first_repro_path =
              write_repro(repro_dir, idx, std::string("# ") + failure.what() + "\n" + failure.dump);
        return report;
      }
    }
    if (progress && (idx + 1) % 20 == 0)
      *progress << "certified " << (idx + 1) << "/" << instances << " indices\n";
  }
  return report;
}

double CompetitiveTable::mean_value(double axis_value, Mechanism mechanism) const {
  for (const auto& point : points) {
    if (point.axis_value != axis_value) continue;
    for (const auto& cell : point.cells)
      if (cell.mechanism == mechanism) return cell.mean_value;
  }
  throw std::invalid_argument("no such sweep cell");
}

double CompetitiveTable::ratio(double axis_value, Mechanism offline, Mechanism online) const {
  double denom = mean_value(axis_value, online);
  if (denom <= 0) throw std::domain_error("online mean value is zero at this grid point");
  return mean_value(axis_value, offline) / denom;
}

CompetitiveTable competitive_comparison(const ScenarioConfig& base, SweepAxis axis,
                                        const std::vector<double>& values,
                                        const std::vector<Mechanism>& mechanisms,
                                        int replications, int workers) {
  if (values.empty()) throw std::invalid_argument("empty sweep grid");
  bool has_online = false, has_offline = false;
  for (Mechanism m : mechanisms) {
    if (m == Mechanism::omz || m == Mechanism::omg)
      has_online = true;
    else
      has_offline = true;
  }
  if (!has_online || !has_offline)
    throw std::invalid_argument("sweep needs at least one online and one offline mechanism");

  CompetitiveTable table;
  table.axis = axis;
  for (double v : values) {
    if (v <= 0) throw std::invalid_argument("sweep grid values must be positive");
    ScenarioConfig cfg = base;
    if (axis == SweepAxis::budget)
      cfg.budget = Rational(static_cast<long long>(std::llround(v * 100)), 100);
    else
      cfg.lambda = v;
    MetricsTable metrics = run_experiment(cfg, mechanisms, replications, workers);
    CompetitivePoint point;
    point.axis_value = v;
    for (Mechanism m : mechanisms) {
      const MechanismSummary& s = metrics.summary_for(m);
      point.cells.push_back(CompetitiveCell{m, s.mean_value, s.mean_payment});
    }
    table.points.push_back(std::move(point));
  }
  return table;
}

void write_sweep_csv(std::ostream& os, const CompetitiveTable& table) {
  os << "# mcs-sweep v1\n";
  os << "axis,value,mechanism,mean_value,mean_payment\n";
  const char* axis = table.axis == SweepAxis::budget ? "budget" : "lambda";
  for (const auto& point : table.points)
    for (const auto& cell : point.cells)
      os << axis << ',' << fmt_double(point.axis_value) << ',' << mechanism_name(cell.mechanism)
         << ',' << fmt_double(cell.mean_value) << ',' << fmt_double(cell.mean_payment) << '\n';
}

}  // namespace mcs
