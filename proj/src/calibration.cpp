#include "mcs/calibration.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace mcs {

RatioModel parse_ratio_model(const std::string& name) {
  if (name == "iid") return RatioModel::iid;
  if (name == "secretary") return RatioModel::secretary;
  throw std::invalid_argument("unknown ratio model: " + name);
}

const char* ratio_model_name(RatioModel model) {
  return model == RatioModel::iid ? "iid" : "secretary";
}

double constraint_residual(RatioModel model, double omega, double alpha, double delta) {
  const double u = 1.0 - 2.0 * alpha;
  if (model == RatioModel::iid)
    return 0.5 - (delta / u - 1.0) / omega - 1.0 / delta - 2.0 * alpha / delta;
  return 0.25 - (8.0 * delta / u - 1.0) / omega - 2.0 / delta - 2.0 * alpha / delta;
}

namespace {

// Constraint rearranged as delta^2 - p*delta + q = 0 for fixed u = 1-2*alpha.
void quadratic_coeffs(RatioModel model, double omega, double u, double* p, double* q) {
  if (model == RatioModel::iid) {
    *p = u * (omega + 2.0) / 2.0;
    *q = u * omega * (2.0 - u);
  } else {
    *p = u * (omega + 4.0) / 32.0;
    *q = u * omega * (3.0 - u) / 8.0;
  }
}

}  // namespace

std::optional<double> admissible_delta(RatioModel model, double omega, double alpha) {
  if (alpha <= 0.0 || alpha >= 0.5) return std::nullopt;
  double p = 0, q = 0;
  quadratic_coeffs(model, omega, 1.0 - 2.0 * alpha, &p, &q);
  const double disc = p * p - 4.0 * q;
  if (disc < 0.0) return std::nullopt;
  const double root = std::sqrt(disc);
  // smaller root first; it gives the better ratio whenever it is admissible
  const double lo = (p - root) / 2.0;
  const double hi = (p + root) / 2.0;
  if (lo > 1.0) return lo;
  if (hi > 1.0) return hi;
  return std::nullopt;
}

CalibrationResult solve_optimal_delta(const CalibrationParams& params) {
  if (params.omega <= 0.0) throw std::invalid_argument("omega must be positive");
  CalibrationResult best;

  auto consider = [&](double alpha) {
    auto delta = admissible_delta(params.model, params.omega, alpha);
    if (!delta) return;
    const double ratio = 2.0 * alpha / *delta;
    if (!best.feasible || ratio > best.ratio)
      best = CalibrationResult{true, *delta, alpha, ratio};
  };

  double lo = 1e-9, hi = 0.5 - 1e-12;
  int points = 4000;
  for (int round = 0; round < 8; ++round) {
    const double step = (hi - lo) / points;
    for (int k = 0; k <= points; ++k) consider(lo + step * k);
    if (!best.feasible) break;
    lo = std::max(1e-12, best.alpha - step);
    hi = std::min(0.5 - 1e-13, best.alpha + step);
    points = 400;
    if (step < 1e-14) break;
  }
  return best;
}

}  // namespace mcs
