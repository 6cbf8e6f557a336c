#pragma once

#include <atomic>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "mcs/experiment.hpp"
#include "mcs/model.hpp"
#include "mcs/online.hpp"

namespace mcs {

enum class DeviationAxis { bid, arrival, departure };

const char* deviation_axis_name(DeviationAxis axis);

struct DeviationPoint {
  Rational value{0};  // deviated bid, or declared time step
  bool won = false;
  Rational payment{0};
  Rational utility{0};
};

struct DeviationSweep {
  UserId user = 0;
  DeviationAxis axis = DeviationAxis::bid;
  std::vector<DeclaredBid> coplayers;  // frozen co-declarations
  std::vector<DeviationPoint> points;
  Rational truthful_utility{0};
  bool truthful_is_max = true;
};

// Thrown when a mechanism run inside the harness violates a safety invariant;
// carries a serializable repro dump.
struct AuditFailure : std::runtime_error {
  std::string dump;
  AuditFailure(const std::string& what, std::string repro)
      : std::runtime_error(what), dump(std::move(repro)) {}
};

// Total mechanism runs (and invariant audits) performed by harness calls in
// this process. The safety suite reads these.
long long harness_run_count();
long long harness_audit_count();

// Full re-run per grid point with only the target's bid changed; utilities
// use the target's true cost. mechanism must be omz or omg.
DeviationSweep bid_deviation_sweep(const TaskUniverse& universe,
                                   const std::vector<UserProfile>& users,
                                   const OnlineConfig& config, Mechanism mechanism,
                                   UserId target, const std::vector<Rational>& grid);

// As above with the declared arrival or departure varied inside the true
// window (OMG only). Grid values outside [a_i, d_i] are invalid input.
DeviationSweep time_deviation_sweep(const TaskUniverse& universe,
                                    const std::vector<UserProfile>& users,
                                    const OnlineConfig& config, UserId target,
                                    DeviationAxis axis, const std::vector<long long>& grid);

// Bid grid anchored on the offered prices seen in the truthful run plus
// multiples of the true cost, so threshold discontinuities are sampled
// exactly.
std::vector<Rational> default_bid_grid(const TaskUniverse& universe,
                                       const std::vector<UserProfile>& users,
                                       const OnlineConfig& config, Mechanism mechanism,
                                       UserId target);

void write_deviation_csv(std::ostream& os, const DeviationSweep& sweep);

// Random auction instances for the certification and equivalence suites.
struct RandomInstanceSpec {
  int min_users = 4, max_users = 30;
  int min_tasks = 4, max_tasks = 60;
  long long max_interval = 16;  // 0 forces a zero-interval stream
  bool vary_epsilon = true;
};

struct RandomInstance {
  TaskUniverse universe;
  std::vector<UserProfile> users;
  OnlineConfig config;
};

RandomInstance make_random_instance(std::uint64_t seed, const RandomInstanceSpec& spec);

std::string dump_instance(const RandomInstance& instance);

// Dominant-strategy sweep driver: per random index it draws a zero-interval
// stream swept under OMZ (bid axis) and a general stream swept under OMG
// (bid, arrival and departure axes). Every sweep whose best deviation
// strictly beats truth-telling is tallied per axis; the first one is dumped
// as a repro file into repro_dir. stop_on_first returns at the first hit,
// include_general=false restricts to the OMZ half.
struct CertificationReport {
  int instances = 0;  // streams actually swept
  long long sweeps = 0;
  long long grid_points = 0;
  int violations = 0;
  int omz_bid_violations = 0;
  int omg_bid_violations = 0;
  int omg_arrival_violations = 0;
  int omg_departure_violations = 0;
  std::string first_repro_path;
};

CertificationReport certify_truthfulness(std::uint64_t seed, int instances,
                                         const std::string& repro_dir,
                                         std::ostream* progress = nullptr,
                                         bool stop_on_first = true, bool include_general = true);

enum class SweepAxis { budget, lambda };

struct CompetitiveCell {
  Mechanism mechanism = Mechanism::omz;
  double mean_value = 0;
  double mean_payment = 0;
};

struct CompetitivePoint {
  double axis_value = 0;
  std::vector<CompetitiveCell> cells;
};

struct CompetitiveTable {
  SweepAxis axis = SweepAxis::budget;
  std::vector<CompetitivePoint> points;

  double mean_value(double axis_value, Mechanism mechanism) const;
  // offline-over-online mean value ratio at one grid point
  double ratio(double axis_value, Mechanism offline, Mechanism online) const;
};

// Re-runs the experiment across a budget or arrival-rate grid. Requires at
// least one online and one offline mechanism.
CompetitiveTable competitive_comparison(const ScenarioConfig& base, SweepAxis axis,
                                        const std::vector<double>& values,
                                        const std::vector<Mechanism>& mechanisms,
                                        int replications, int workers = 1);

void write_sweep_csv(std::ostream& os, const CompetitiveTable& table);

}  // namespace mcs
