#pragma once

#include <vector>

#include "mcs/coverage.hpp"
#include "mcs/model.hpp"

namespace mcs {

// Shared greedy core: repeatedly picks the remaining user with the highest
// marginal density V_i(J)/b_i (ties broken toward the lower id) while the
// proportional-share rule b_i <= V_i(J) * budget / V(J u {i}) admits it.
// Zero-marginal users are never picked. Returns oracle indices in pick order.
struct GreedySelection {
  std::vector<int> order;
  long long value = 0;
  long long marginal_evals = 0;
};
GreedySelection proportional_share_greedy(const TaskUniverse& universe,
                                          const std::vector<DeclaredBid>& bids,
                                          const Rational& budget);

// Budget-feasible proportional-share auction over a fully known user pool:
// greedy winner determination plus critical payments. Winners are paid the
// maximum over their admission positions against the competing pool.
AuctionOutcome proportional_share_offline(const TaskUniverse& universe,
                                          const std::vector<DeclaredBid>& bids,
                                          const Rational& budget);

// Value benchmark: density greedy that only requires bids to fit the leftover
// budget, then the better of that pick and the best affordable single user.
// Winners are paid their bids. No critical payment rule, so it is not
// truthful; it exists to bound achievable coverage.
AuctionOutcome greedy_budgeted_max_coverage(const TaskUniverse& universe,
                                            const std::vector<DeclaredBid>& bids,
                                            const Rational& budget);

// Exhaustive optimum for small instances (at most max_users users): feasible
// subset with maximal coverage value, bids charged as payments. Ties resolved
// toward the smaller winner set and then the lexicographically first one.
AuctionOutcome brute_force_optimal(const TaskUniverse& universe,
                                   const std::vector<DeclaredBid>& bids, const Rational& budget,
                                   int max_users = 15);

// Baseline with a fixed density threshold rho: users are processed in the
// given order, accepted while b_i <= V_i(S)/rho <= leftover budget, and paid
// V_i(S)/rho.
AuctionOutcome random_threshold_mechanism(const TaskUniverse& universe,
                                          const std::vector<DeclaredBid>& bids,
                                          const Rational& budget, const Rational& rho);

}  // namespace mcs
