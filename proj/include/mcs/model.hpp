#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "mcs/rational.hpp"

namespace mcs {

using UserId = int;

// Sensing task universe. Task j is satisfied once r_j distinct selected users
// cover it; extra coverage beyond r_j adds no value.
struct TaskUniverse {
  std::vector<int> requirement;

  int task_count() const { return static_cast<int>(requirement.size()); }

  void validate() const {
    for (int r : requirement)
      if (r < 1) throw std::invalid_argument("task requirement must be >= 1");
  }
};

// Ground-truth user: true arrival/departure window, covered task set, true cost.
struct UserProfile {
  UserId id = 0;
  long long arrival = 1;
  long long departure = 1;
  std::vector<int> tasks;
  Rational cost;
};

// What a user reports to the mechanism. Admissible declarations keep the
// declared active window inside the true one and may misreport the cost freely.
struct DeclaredBid {
  UserId id = 0;
  long long arrival = 1;
  long long departure = 1;
  std::vector<int> tasks;
  Rational bid;
};

inline DeclaredBid truthful_bid(const UserProfile& u) {
  return DeclaredBid{u.id, u.arrival, u.departure, u.tasks, u.cost};
}

inline void validate_profile(const UserProfile& u, const TaskUniverse& universe) {
  if (u.arrival < 1 || u.departure < u.arrival)
    throw std::invalid_argument("user " + std::to_string(u.id) + ": bad active window");
  if (u.cost <= 0)
    throw std::invalid_argument("user " + std::to_string(u.id) + ": cost must be positive");
  for (int t : u.tasks)
    if (t < 0 || t >= universe.task_count())
      throw std::invalid_argument("user " + std::to_string(u.id) + ": unknown task index");
}

inline void validate_bid(const DeclaredBid& b, const TaskUniverse& universe) {
  if (b.arrival < 1 || b.departure < b.arrival)
    throw std::invalid_argument("bid " + std::to_string(b.id) + ": bad declared window");
  if (b.bid <= 0)
    throw std::invalid_argument("bid " + std::to_string(b.id) + ": bid must be positive");
  for (int t : b.tasks)
    if (t < 0 || t >= universe.task_count())
      throw std::invalid_argument("bid " + std::to_string(b.id) + ": unknown task index");
}

// Checks that a declaration is admissible against the owning profile:
// arrival <= declared arrival <= declared departure <= departure, same tasks.
inline bool admissible_declaration(const DeclaredBid& b, const UserProfile& truth) {
  return b.id == truth.id && truth.arrival <= b.arrival && b.arrival <= b.departure &&
         b.departure <= truth.departure && b.tasks == truth.tasks;
}

struct AuctionOutcome {
  std::vector<UserId> winners;         // selection order
  std::map<UserId, Rational> payments; // winners only
  long long total_value = 0;
  Rational total_payment{0};

  bool is_winner(UserId id) const {
    return std::find(winners.begin(), winners.end(), id) != winners.end();
  }
  Rational payment_for(UserId id) const {
    auto it = payments.find(id);
    return it == payments.end() ? Rational(0) : it->second;
  }
};

}  // namespace mcs
