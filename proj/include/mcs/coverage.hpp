#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "mcs/model.hpp"

namespace mcs {

// Incremental evaluator for the coverage value
//   V(S) = sum_j min(r_j, |{i in S : j in tasks_i}|).
// Mechanisms hold one oracle per run; add/remove keep per-task counts so a
// marginal query costs O(|tasks_i|). Every marginal query bumps a counter that
// the experiment layer reports as the per-run operation count.
class CoverageOracle {
 public:
  CoverageOracle(const TaskUniverse& universe, std::vector<std::vector<int>> task_sets);

  long long value() const { return value_; }
  bool contains(int user_index) const { return in_set_[user_index]; }
  int set_size() const { return set_size_; }

  long long marginal(int user_index) const;
  void add(int user_index);
  void remove(int user_index);
  void reset();

  long long marginal_evals() const { return marginal_evals_; }
  int user_count() const { return static_cast<int>(task_sets_.size()); }

 private:
  std::vector<int> requirement_;
  std::vector<std::vector<int>> task_sets_;
  std::vector<int> cover_count_;
  std::vector<char> in_set_;
  long long value_ = 0;
  int set_size_ = 0;
  mutable long long marginal_evals_ = 0;
};

// One-shot helpers over id-keyed user records (any record with .id and .tasks).
template <typename User>
std::vector<std::vector<int>> task_sets_of(const std::vector<User>& users) {
  std::vector<std::vector<int>> out;
  out.reserve(users.size());
  for (const auto& u : users) out.push_back(u.tasks);
  return out;
}

template <typename User>
int index_of_user(const std::vector<User>& users, UserId id) {
  for (size_t i = 0; i < users.size(); ++i)
    if (users[i].id == id) return static_cast<int>(i);
  throw std::invalid_argument("unknown user id " + std::to_string(id));
}

template <typename User>
long long coverage_value(const std::vector<UserId>& selected, const std::vector<User>& users,
                         const TaskUniverse& universe) {
  CoverageOracle oracle(universe, task_sets_of(users));
  for (UserId id : selected) {
    int idx = index_of_user(users, id);
    if (oracle.contains(idx))
      throw std::invalid_argument("duplicate user id " + std::to_string(id) + " in selection");
    oracle.add(idx);
  }
  return oracle.value();
}

template <typename User>
long long marginal_value(UserId candidate, const std::vector<UserId>& selected,
                         const std::vector<User>& users, const TaskUniverse& universe) {
  for (UserId id : selected)
    if (id == candidate)
      throw std::invalid_argument("candidate " + std::to_string(candidate) +
                                  " already in selection");
  CoverageOracle oracle(universe, task_sets_of(users));
  for (UserId id : selected) oracle.add(index_of_user(users, id));
  return oracle.marginal(index_of_user(users, candidate));
}

// Counterexample from an exhaustive monotonicity / submodularity scan:
// either V(X) > V(X u {x}) or a marginal of x that grew from X to Y.
struct SubmodularityWitness {
  std::uint32_t set_x = 0;
  std::uint32_t set_y = 0;  // == set_x for monotonicity violations
  int user_index = -1;
  long long lhs = 0;
  long long rhs = 0;
};

struct SubmodularityReport {
  bool ok = true;
  std::optional<SubmodularityWitness> witness;
};

// Exhaustive check over all subset pairs; refuses instances with more users
// than max_users (the scan is exponential in the user count).
SubmodularityReport check_submodular_and_monotone(const TaskUniverse& universe,
                                                  const std::vector<std::vector<int>>& task_sets,
                                                  int max_users = 8);

// Same scan over an arbitrary set function given as a value-by-bitmask table
// of size 2^n. Lets tests feed corrupted tables as a negative control.
SubmodularityReport check_value_table(const std::vector<long long>& value_by_mask, int n);

}  // namespace mcs
