#include "mcs/coverage.hpp"

#include <stdexcept>

namespace mcs {

CoverageOracle::CoverageOracle(const TaskUniverse& universe, std::vector<std::vector<int>> task_sets)
    : requirement_(universe.requirement),
      task_sets_(std::move(task_sets)),
      cover_count_(universe.requirement.size(), 0),
      in_set_(task_sets_.size(), 0) {
  universe.validate();
  for (const auto& ts : task_sets_)
    for (int t : ts)
      if (t < 0 || t >= universe.task_count())
        throw std::invalid_argument("task index out of range");
}

long long CoverageOracle::marginal(int user_index) const {
  ++marginal_evals_;
  if (in_set_[user_index]) throw std::invalid_argument("marginal of a selected user");
  long long gain = 0;
  for (int t : task_sets_[user_index])
    if (cover_count_[t] < requirement_[t]) ++gain;
  return gain;
}

void CoverageOracle::add(int user_index) {
  if (in_set_[user_index]) throw std::invalid_argument("user already selected");
  in_set_[user_index] = 1;
  ++set_size_;
  for (int t : task_sets_[user_index]) {
    if (cover_count_[t] < requirement_[t]) ++value_;
    ++cover_count_[t];
  }
}

void CoverageOracle::remove(int user_index) {
  if (!in_set_[user_index]) throw std::invalid_argument("user not selected");
  in_set_[user_index] = 0;
  --set_size_;
  for (int t : task_sets_[user_index]) {
    --cover_count_[t];
    if (cover_count_[t] < requirement_[t]) --value_;
  }
}

void CoverageOracle::reset() {
  std::fill(cover_count_.begin(), cover_count_.end(), 0);
  std::fill(in_set_.begin(), in_set_.end(), 0);
  value_ = 0;
  set_size_ = 0;
}

SubmodularityReport check_value_table(const std::vector<long long>& value_by_mask, int n) {
  if (n < 0 || n > 25 || value_by_mask.size() != (size_t{1} << n))
    throw std::invalid_argument("value table size must be 2^n");
  SubmodularityReport report;
  const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
  for (std::uint32_t x = 0; x <= full; ++x) {
    for (int i = 0; i < n; ++i) {
      if (x & (1u << i)) continue;
      long long mx = value_by_mask[x | (1u << i)] - value_by_mask[x];
      if (mx < 0) {
        report.ok = false;
        report.witness = SubmodularityWitness{x, x, i, value_by_mask[x | (1u << i)],
                                              value_by_mask[x]};
        return report;
      }
      // submodularity: marginal w.r.t. any superset y of x must not exceed mx
      for (std::uint32_t rest = full & ~x & ~(1u << i);;) {
        std::uint32_t y = x | rest;
        long long my = value_by_mask[y | (1u << i)] - value_by_mask[y];
        if (my > mx) {
          report.ok = false;
          report.witness = SubmodularityWitness{x, y, i, mx, my};
          return report;
        }
        if (rest == 0) break;
        rest = (rest - 1) & full & ~x & ~(1u << i);
      }
    }
    if (x == full) break;
  }
  return report;
}

SubmodularityReport check_submodular_and_monotone(const TaskUniverse& universe,
                                                  const std::vector<std::vector<int>>& task_sets,
                                                  int max_users) {
  const int n = static_cast<int>(task_sets.size());
  if (n > max_users)
    throw std::invalid_argument("instance too large for exhaustive submodularity scan");
  CoverageOracle oracle(universe, task_sets);
  std::vector<long long> table(size_t{1} << n, 0);
  for (std::uint32_t mask = 1; mask < table.size(); ++mask) {
    oracle.reset();
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) oracle.add(i);
    table[mask] = oracle.value();
  }
  return check_value_table(table, n);
}

}  // namespace mcs
