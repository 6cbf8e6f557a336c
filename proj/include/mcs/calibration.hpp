#pragma once

#include <optional>
#include <string>

namespace mcs {

// Adversary model behind the damping-factor optimization: arrivals as i.i.d.
// samples or as a secretary-style worst-case permutation.
enum class RatioModel { iid, secretary };

RatioModel parse_ratio_model(const std::string& name);
const char* ratio_model_name(RatioModel model);

struct CalibrationParams {
  double omega = 0;  // single-user value share bound: each user worth <= V/omega
  RatioModel model = RatioModel::iid;
};

struct CalibrationResult {
  bool feasible = false;
  double delta = 0;  // > 1 when feasible
  double alpha = 0;  // in (0, 1/2)
  double ratio = 0;  // 2*alpha/delta
};

// Signed residual of the model's constraint equation at (alpha, delta);
// a valid (alpha, delta) pair makes this (numerically) zero.
double constraint_residual(RatioModel model, double omega, double alpha, double delta);

// Smallest constraint root delta > 1 for a fixed alpha, from the closed-form
// quadratic. Empty when the discriminant is negative or both roots are <= 1.
std::optional<double> admissible_delta(RatioModel model, double omega, double alpha);

// Maximizes 2*alpha/delta over alpha in (0, 1/2) on a refining grid, taking
// the admissible quadratic root at each grid point. Infeasible omega yields
// an explicit infeasible result, never an exception.
CalibrationResult solve_optimal_delta(const CalibrationParams& params);

}  // namespace mcs
