#pragma once

#include <bit>
#include <vector>

#include "mcs/rational.hpp"

namespace mcs {

// Doubling schedule used by both online mechanisms. With L = floor(log2 T)
// there are L+1 stages; stage i ends at floor(T * 2^(i-1) / 2^L) and runs
// under the allocated budget B * 2^(i-1) / 2^L. The last stage ends exactly
// at the deadline with the full budget.
struct StagePlan {
  long long deadline = 1;
  Rational budget{1};
  int stage_count = 1;
  std::vector<long long> stage_end;
  std::vector<Rational> stage_budget;

  static StagePlan make(long long deadline, const Rational& budget);

  // 1-based stage index holding time step t.
  int stage_of(long long t) const;
};

inline StagePlan StagePlan::make(long long deadline, const Rational& budget) {
  if (deadline < 1) throw std::invalid_argument("deadline must be >= 1");
  if (budget <= 0) throw std::invalid_argument("budget must be positive");
  const int levels = std::bit_width(static_cast<unsigned long long>(deadline)) - 1;
  StagePlan plan;
  plan.deadline = deadline;
  plan.budget = budget;
  plan.stage_count = levels + 1;
  const long long denom = 1LL << levels;
  for (int i = 1; i <= plan.stage_count; ++i) {
    const long long scale = 1LL << (i - 1);
    plan.stage_end.push_back(deadline * scale / denom);
    plan.stage_budget.push_back(budget * scale / denom);
  }
  return plan;
}

inline int StagePlan::stage_of(long long t) const {
  if (t < 1 || t > deadline) throw std::invalid_argument("time step outside horizon");
  for (int i = 0; i < stage_count; ++i)
    if (t <= stage_end[i]) return i + 1;
  return stage_count;
}

}  // namespace mcs
