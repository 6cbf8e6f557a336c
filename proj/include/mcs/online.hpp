#pragma once

#include <vector>

#include "mcs/model.hpp"
#include "mcs/stages.hpp"
#include "mcs/trace.hpp"

namespace mcs {

// Sample-size dependent density damping. The solver in calibration.hpp picks
// the asymptotically optimal target; runs start undamped while the sample set
// is still small.
struct DeltaPolicy {
  Rational initial{1};
  Rational target{4};
  long long switch_size = 240;

  Rational at(long long sample_size) const {
    return sample_size > switch_size ? target : initial;
  }
};

struct OnlineConfig {
  Rational budget{1};
  long long deadline = 1;
  Rational epsilon{1};
  DeltaPolicy delta;
};

// Density threshold refresh at a stage end: proportional-share greedy over the
// sample set under the stage budget, then V(J)/B' damped by delta. When the
// greedy selects nobody the previous threshold is kept.
Rational get_density_threshold(const TaskUniverse& universe,
                               const std::vector<DeclaredBid>& sample,
                               const Rational& stage_budget, const Rational& delta,
                               const Rational& previous);

// Online mechanism for zero arrival-departure intervals: at most one user per
// step, decided immediately at arrival against the current threshold and
// stage budget, then added to the sample set. Thresholds refresh at stage
// ends. Rejects streams with nonzero intervals or arrival collisions.
RunResult run_omz(const TaskUniverse& universe, const std::vector<DeclaredBid>& stream,
                  const OnlineConfig& config);

// General-case mechanism: arrivals queue up as online users and are decided
// in marginal-value order; users enter the sample set at departure. At stage
// ends every online user is re-decided and a winner's payment may only be
// raised, never lowered.
RunResult run_omg(const TaskUniverse& universe, const std::vector<DeclaredBid>& stream,
                  const OnlineConfig& config);

}  // namespace mcs
