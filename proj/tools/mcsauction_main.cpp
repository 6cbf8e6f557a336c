#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "mcs/calibration.hpp"
#include "mcs/demo_scenarios.hpp"
#include "mcs/experiment.hpp"
#include "mcs/scenario.hpp"
#include "mcs/sweeps.hpp"
#include "mcs/trace.hpp"

namespace {

constexpr const char* kVersion = "0.2.0";

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string join_command(int argc, char** argv) {
  std::string cmd;
  for (int i = 0; i < argc; ++i) {
    if (i) cmd += ' ';
    cmd += argv[i];
  }
  return cmd;
}

// The canonical flat serialization, re-read as JSON object values.
nlohmann::json config_json(const mcs::ScenarioConfig& config) {
  std::ostringstream os;
  mcs::write_scenario_config(os, config);
  nlohmann::json j = nlohmann::json::object();
  std::istringstream in(os.str());
  std::string line;
  auto trim = [](std::string s) {
    auto from = s.find_first_not_of(" \t");
    auto to = s.find_last_not_of(" \t");
    return from == std::string::npos ? std::string() : s.substr(from, to - from + 1);
  };
  while (std::getline(in, line)) {
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    j[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return j;
}

struct ManifestWriter {
  explicit ManifestWriter(std::string dir) : out_dir(std::move(dir)) {}

  std::string out_dir;
  nlohmann::json body = nlohmann::json::object();
  std::vector<std::string> artifacts;
  Clock::time_point started = Clock::now();

  void add_artifact(const std::string& path) { artifacts.push_back(path); }

  // Written after every artifact so a manifest implies a complete run.
  void finish(const std::string& command) {
    if (out_dir.empty()) return;
    body["tool"] = "mcsauction";
    body["version"] = kVersion;
    body["command"] = command;
    body["artifacts"] = artifacts;
    body["timings_ms"]["total"] = ms_since(started);
    std::ofstream out(std::filesystem::path(out_dir) / "manifest.json");
    out << body.dump(2) << '\n';
  }
};

std::ofstream open_artifact(ManifestWriter& manifest, const std::string& name) {
  std::filesystem::create_directories(manifest.out_dir);
  std::string path = (std::filesystem::path(manifest.out_dir) / name).string();
  manifest.add_artifact(path);
  return std::ofstream(path);
}

std::string event_cell(const mcs::TraceEvent& e) {
  std::ostringstream os;
  switch (e.kind) {
    case mcs::EventKind::accept: os << "accept:"; break;
    case mcs::EventKind::reject: os << "reject:"; break;
    case mcs::EventKind::raise: os << "raise:"; break;
    case mcs::EventKind::threshold_update:
      os << "threshold@" << e.price;
      return os.str();
  }
  os << e.user << '@' << e.price;
  return os.str();
}

void print_step_table(std::ostream& os, const mcs::RunResult& run) {
  os << std::setw(4) << "t" << std::setw(6) << "stage" << std::setw(11) << "threshold"
     << std::setw(9) << "budget" << std::setw(11) << "committed" << "  events\n";
  for (const auto& step : run.trace.steps) {
    std::ostringstream threshold, budget, committed;
    threshold << step.threshold;
    budget << step.stage_budget;
    committed << step.committed_after;
    os << std::setw(4) << step.t << std::setw(6) << step.stage << std::setw(11)
       << threshold.str() << std::setw(9) << budget.str() << std::setw(11) << committed.str()
       << "  ";
    bool first = true;
    for (const auto& e : run.trace.events) {
      if (e.t != step.t) continue;
      if (!first) os << "; ";
      os << event_cell(e);
      first = false;
    }
    os << '\n';
  }
}

std::string selection_line(const mcs::AuctionOutcome& outcome) {
  std::vector<mcs::UserId> ids = outcome.winners;
  std::sort(ids.begin(), ids.end());
  std::ostringstream os;
  os << "S={";
  for (std::size_t i = 0; i < ids.size(); ++i) os << (i ? "," : "") << ids[i];
  os << "} payments ";
  for (std::size_t i = 0; i < ids.size(); ++i)
    os << (i ? "," : "") << outcome.payment_for(ids[i]);
  return os.str();
}

int audit_or_complain(const mcs::TaskUniverse& universe,
                      const std::vector<mcs::DeclaredBid>& stream,
                      const mcs::OnlineConfig& config, const mcs::RunResult& run) {
  auto issues = mcs::audit_run(universe, stream, config, run);
  for (const auto& issue : issues)
    std::cerr << "audit: t=" << issue.t << ' ' << issue.what << '\n';
  return issues.empty() ? 0 : 1;
}

int run_trace_demo(const std::string& name) {
  const mcs::DemoScenario& demo = mcs::demo_scenario(name);
  mcs::RunResult run = mcs::run_demo(demo);
  print_step_table(std::cout, run);
  std::cout << selection_line(run.outcome) << '\n';

  std::vector<mcs::DeclaredBid> stream;
  for (const auto& u : demo.users) stream.push_back(mcs::truthful_bid(u));
  int rc = audit_or_complain(demo.universe, stream, demo.config, run);

  mcs::TraceDiff diff = mcs::diff_against_expected(run, demo.expected);
  if (!diff.match) {
    std::cerr << "trace mismatch at t=" << diff.first_step << ": " << diff.detail << '\n';
    return 1;
  }
  std::cout << "trace matches the reference walkthrough\n";
  return rc;
}

int run_trace_config(const mcs::ScenarioConfig& config, const std::string& mechanism_name_arg,
                     ManifestWriter& manifest, const std::string& command) {
  mcs::Mechanism mechanism = mechanism_name_arg.empty()
                                 ? (config.interval_max > 0 ? mcs::Mechanism::omg
                                                            : mcs::Mechanism::omz)
                                 : mcs::parse_mechanism(mechanism_name_arg);
  if (mechanism != mcs::Mechanism::omz && mechanism != mcs::Mechanism::omg)
    throw CLI::ValidationError("trace", "trace wants an online mechanism (omz or omg)");

  mcs::Scenario scenario = mcs::generate_scenario(config, config.seed);
  std::vector<mcs::DeclaredBid> stream;
  for (const auto& u : scenario.users) stream.push_back(mcs::truthful_bid(u));
  mcs::RunResult run = mechanism == mcs::Mechanism::omz
                           ? mcs::run_omz(scenario.grid.universe, stream, config.online())
                           : mcs::run_omg(scenario.grid.universe, stream, config.online());

  std::cout << "users=" << scenario.users.size() << " tasks="
            << scenario.grid.universe.task_count() << " winners=" << run.outcome.winners.size()
            << " value=" << run.outcome.total_value << " payment=" << run.outcome.total_payment
            << " threshold_updates=" << run.trace.threshold_updates().size() << '\n';
  std::cout << selection_line(run.outcome) << '\n';

  if (!manifest.out_dir.empty()) {
    auto csv = open_artifact(manifest, "trace.csv");
    mcs::write_trace_csv(csv, run.trace, run.outcome);
    manifest.body["seed"] = config.seed;
    manifest.body["config"] = config_json(config);
    manifest.body["parameters"]["mechanism"] = mcs::mechanism_name(mechanism);
    manifest.finish(command);
  }
  return audit_or_complain(scenario.grid.universe, stream, config.online(), run);
}

std::vector<mcs::Mechanism> resolve_mechanisms(const std::vector<std::string>& names,
                                               const mcs::ScenarioConfig& config) {
  std::vector<mcs::Mechanism> out;
  if (names.empty() || (names.size() == 1 && names[0] == "all")) {
    for (mcs::Mechanism m : mcs::all_mechanisms()) {
      if (m == mcs::Mechanism::omz && config.interval_max > 0) continue;
      if (m == mcs::Mechanism::omg && config.interval_max == 0) continue;
      out.push_back(m);
    }
    return out;
  }
  for (const auto& name : names) out.push_back(mcs::parse_mechanism(name));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"budget-feasible online auctions for crowdsourced sensing"};
  app.set_version_flag("--version", std::string("mcsauction ") + kVersion);
  app.require_subcommand(1);

  std::string config_path, mechanism_arg, out_dir;
  std::uint64_t seed = 1;
  int reps = 20, workers = 1;
  std::vector<std::string> mechanism_list;

  auto add_common = [&](CLI::App* cmd, bool with_mechanisms) {
    cmd->add_option("--config", config_path, "flat key=value scenario config");
    cmd->add_option("--seed", seed, "master seed override");
    cmd->add_option("--reps", reps, "replications / instances");
    cmd->add_option("--out", out_dir, "artifact directory");
    cmd->add_option("--workers", workers, "worker threads");
    if (with_mechanisms)
      cmd->add_option("--mechanism", mechanism_list, "mechanism names or 'all'")
          ->delimiter(',');
  };

  auto* trace_cmd = app.add_subcommand("trace", "replay one scenario and print its decisions");
  std::string scenario_name;
  trace_cmd->add_option("scenario", scenario_name, "built-in walkthrough: example1|example2");
  trace_cmd->add_option("--mechanism", mechanism_arg, "omz|omg (default by interval mode)");
  trace_cmd->add_option("--config", config_path, "flat key=value scenario config");
  trace_cmd->add_option("--seed", seed, "master seed override");
  trace_cmd->add_option("--out", out_dir, "artifact directory");

  auto* simulate_cmd = app.add_subcommand("simulate", "replicated runs with a metrics table");
  add_common(simulate_cmd, true);

  auto* calibrate_cmd = app.add_subcommand("calibrate", "optimal damping factors per omega");
  std::string model_arg = "both";
  std::vector<double> omegas{20, 50, 100, 1000};
  calibrate_cmd->add_option("--model", model_arg, "iid|secretary|both");
  calibrate_cmd->add_option("--omega", omegas, "omega grid")->delimiter(',');
  calibrate_cmd->add_option("--out", out_dir, "artifact directory");

  auto* sweep_cmd = app.add_subcommand("sweep", "mean value across a budget or rate grid");
  std::string axis_arg = "budget";
  std::vector<double> grid_values;
  sweep_cmd->add_option("--axis", axis_arg, "budget|lambda");
  sweep_cmd->add_option("--values", grid_values, "grid points")->delimiter(',');
  add_common(sweep_cmd, true);

  auto* verify_cmd = app.add_subcommand("verify", "safety and truthfulness checks");
  std::string suite = "all";
  verify_cmd->add_option("--suite", suite, "demos|truthfulness|all");
  add_common(verify_cmd, false);

  CLI11_PARSE(app, argc, argv);
  const std::string command = join_command(argc, argv);

  try {
    mcs::ScenarioConfig config;
    if (!config_path.empty()) config = mcs::load_scenario_config(config_path);
    for (CLI::App* cmd : {trace_cmd, simulate_cmd, sweep_cmd, verify_cmd})
      if (cmd->count("--seed")) config.seed = seed;

    if (trace_cmd->parsed()) {
      if (!scenario_name.empty()) return run_trace_demo(scenario_name);
      if (config_path.empty())
        throw CLI::ValidationError("trace", "give a walkthrough name or --config");
      ManifestWriter manifest{out_dir};
      return run_trace_config(config, mechanism_arg, manifest, command);
    }

    if (simulate_cmd->parsed()) {
      if (out_dir.empty()) throw CLI::ValidationError("simulate", "--out is required");
      ManifestWriter manifest{out_dir};
      auto mechanisms = resolve_mechanisms(mechanism_list, config);
      mcs::MetricsTable table = mcs::run_experiment(config, mechanisms, reps, workers);
      {
        auto csv = open_artifact(manifest, "metrics.csv");
        mcs::write_metrics_csv(csv, table);
      }
      for (const auto& s : table.summary)
        std::cout << mcs::mechanism_name(s.mechanism) << ": mean_value=" << s.mean_value
                  << " mean_payment=" << s.mean_payment << " mean_winners=" << s.mean_winners
                  << " (" << s.replications << " reps)\n";
      manifest.body["seed"] = config.seed;
      manifest.body["config"] = config_json(config);
      manifest.body["parameters"]["replications"] = reps;
      manifest.body["parameters"]["workers"] = workers;
      for (auto m : mechanisms)
        manifest.body["parameters"]["mechanisms"].push_back(mcs::mechanism_name(m));
      manifest.finish(command);
      return 0;
    }

    if (calibrate_cmd->parsed()) {
      std::vector<mcs::RatioModel> models;
      if (model_arg == "both")
        models = {mcs::RatioModel::iid, mcs::RatioModel::secretary};
      else
        models = {mcs::parse_ratio_model(model_arg)};
      std::ostringstream csv;
      csv << "# mcs-calibration v1\nmodel,omega,feasible,delta,alpha,ratio\n";
      for (mcs::RatioModel model : models)
        for (double omega : omegas) {
          mcs::CalibrationResult r = mcs::solve_optimal_delta({omega, model});
          char line[160];
          std::snprintf(line, sizeof line, "%s,%.17g,%d,%.17g,%.17g,%.17g\n",
                        mcs::ratio_model_name(model), omega, r.feasible ? 1 : 0, r.delta,
                        r.alpha, r.ratio);
          csv << line;
          std::cout << mcs::ratio_model_name(model) << " omega=" << omega
                    << (r.feasible ? "" : " infeasible");
          if (r.feasible)
            std::cout << " delta=" << r.delta << " alpha=" << r.alpha << " ratio=" << r.ratio;
          std::cout << '\n';
        }
      if (!out_dir.empty()) {
        ManifestWriter manifest{out_dir};
        open_artifact(manifest, "calibration.csv") << csv.str();
        manifest.body["parameters"]["model"] = model_arg;
        manifest.body["parameters"]["omega"] = omegas;
        manifest.finish(command);
      }
      return 0;
    }

    if (sweep_cmd->parsed()) {
      mcs::SweepAxis axis;
      if (axis_arg == "budget")
        axis = mcs::SweepAxis::budget;
      else if (axis_arg == "lambda")
        axis = mcs::SweepAxis::lambda;
      else
        throw CLI::ValidationError("sweep", "--axis must be budget or lambda");
      if (grid_values.empty())
        grid_values = axis == mcs::SweepAxis::budget
                          ? std::vector<double>{500, 1000, 2000, 4000}
                          : std::vector<double>{0.2, 0.4, 0.6};
      std::vector<mcs::Mechanism> mechanisms = resolve_mechanisms(mechanism_list, config);
      mcs::CompetitiveTable table =
          mcs::competitive_comparison(config, axis, grid_values, mechanisms, reps, workers);
      mcs::write_sweep_csv(std::cout, table);
      if (!out_dir.empty()) {
        ManifestWriter manifest{out_dir};
        auto csv = open_artifact(manifest, "sweep.csv");
        mcs::write_sweep_csv(csv, table);
        manifest.body["seed"] = config.seed;
        manifest.body["config"] = config_json(config);
        manifest.body["parameters"]["axis"] = axis_arg;
        manifest.body["parameters"]["values"] = grid_values;
        manifest.body["parameters"]["replications"] = reps;
        manifest.finish(command);
      }
      return 0;
    }

    if (verify_cmd->parsed()) {
      int rc = 0;
      if (suite == "demos" || suite == "all") {
        for (const auto& name : mcs::demo_scenario_names()) {
          const mcs::DemoScenario& demo = mcs::demo_scenario(name);
          mcs::RunResult run = mcs::run_demo(demo);
          mcs::TraceDiff diff = mcs::diff_against_expected(run, demo.expected);
          std::cout << "demo " << name << ": " << (diff.match ? "ok" : "MISMATCH") << '\n';
          if (!diff.match) {
            std::cerr << "  t=" << diff.first_step << ' ' << diff.detail << '\n';
            rc = 1;
          }
        }
      }
      if (suite == "truthfulness" || suite == "all") {
        std::string repro_dir = out_dir.empty() ? "." : out_dir;
        mcs::CertificationReport report =
            mcs::certify_truthfulness(seed, reps, repro_dir, &std::cout);
        std::cout << "truthfulness: " << report.sweeps << " sweeps, " << report.grid_points
                  << " deviations, " << report.violations << " violations\n";
        if (report.violations > 0) {
          std::cerr << "repro written to " << report.first_repro_path << '\n';
          rc = 1;
        }
      }
      if (suite != "demos" && suite != "truthfulness" && suite != "all")
        throw CLI::ValidationError("verify", "--suite must be demos, truthfulness or all");
      return rc;
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
