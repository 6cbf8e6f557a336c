#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "mcs/scenario.hpp"

namespace mcs {
namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  size_t e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

long long parse_int(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    long long v = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key " + key + ": bad integer '" + value + "'");
  }
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key " + key + ": bad number '" + value + "'");
  }
}

}  // namespace

ScenarioConfig parse_scenario_config(std::istream& in) {
  ScenarioConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    auto eq = s.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key=value");
    std::string key = trim(s.substr(0, eq));
    std::string value = trim(s.substr(eq + 1));
    if (value.empty())
      throw std::invalid_argument("config key " + key + ": empty value");

    if (key == "roads_h") cfg.geometry.roads_h = static_cast<int>(parse_int(key, value));
    else if (key == "roads_v") cfg.geometry.roads_v = static_cast<int>(parse_int(key, value));
    else if (key == "length_m") cfg.geometry.length_m = parse_double(key, value);
    else if (key == "width_m") cfg.geometry.width_m = parse_double(key, value);
    else if (key == "spacing_m") cfg.geometry.spacing_m = parse_double(key, value);
    else if (key == "T") cfg.deadline = parse_int(key, value);
    else if (key == "B") cfg.budget = parse_rational(value);
    else if (key == "lambda") cfg.lambda = parse_double(key, value);
    else if (key == "R") cfg.radius = parse_double(key, value);
    else if (key == "cost_lo") cfg.cost_lo = parse_rational(value);
    else if (key == "cost_hi") cfg.cost_hi = parse_rational(value);
    else if (key == "interval_max") cfg.interval_max = parse_int(key, value);
    else if (key == "epsilon") cfg.epsilon = parse_rational(value);
    else if (key == "delta_initial") cfg.delta.initial = parse_rational(value);
    else if (key == "delta_target") cfg.delta.target = parse_rational(value);
    else if (key == "delta_switch") cfg.delta.switch_size = parse_int(key, value);
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(std::stoull(value));
    else throw std::invalid_argument("unknown config key: " + key);
  }
  return cfg;
}

ScenarioConfig load_scenario_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file: " + path);
  return parse_scenario_config(in);
}

void write_scenario_config(std::ostream& out, const ScenarioConfig& cfg) {
  out << std::setprecision(17);  // doubles must survive a round-trip
  out << "roads_h = " << cfg.geometry.roads_h << '\n'
      << "roads_v = " << cfg.geometry.roads_v << '\n'
      << "length_m = " << cfg.geometry.length_m << '\n'
      << "width_m = " << cfg.geometry.width_m << '\n'
      << "spacing_m = " << cfg.geometry.spacing_m << '\n'
      << "T = " << cfg.deadline << '\n'
      << "B = " << cfg.budget << '\n'
      << "lambda = " << cfg.lambda << '\n'
      << "R = " << cfg.radius << '\n'
      << "cost_lo = " << cfg.cost_lo << '\n'
      << "cost_hi = " << cfg.cost_hi << '\n'
      << "interval_max = " << cfg.interval_max << '\n'
      << "epsilon = " << cfg.epsilon << '\n'
      << "delta_initial = " << cfg.delta.initial << '\n'
      << "delta_target = " << cfg.delta.target << '\n'
      << "delta_switch = " << cfg.delta.switch_size << '\n'
      << "seed = " << cfg.seed << '\n';
}

}  // namespace mcs
