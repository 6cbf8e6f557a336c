#include "mcs/offline.hpp"

#include <bit>
#include <stdexcept>

namespace mcs {
namespace {

// density compare: mi/bi vs mj/bj by cross-multiplication
int compare_density(long long mi, const Rational& bi, long long mj, const Rational& bj) {
  BigInt lhs = BigInt(mi) * denominator(bi) * numerator(bj);
  BigInt rhs = BigInt(mj) * denominator(bj) * numerator(bi);
  return lhs.compare(rhs);
}

// proportional-share admission: bid <= marginal * budget / new_value
bool within_share(const Rational& bid, long long marginal, long long new_value,
                  const Rational& budget) {
  BigInt lhs = numerator(bid) * denominator(budget) * new_value;
  BigInt rhs = BigInt(marginal) * numerator(budget) * denominator(bid);
  return lhs <= rhs;
}

void validate_pool(const TaskUniverse& universe, const std::vector<DeclaredBid>& bids) {
  universe.validate();
  std::vector<UserId> seen;
  for (const auto& b : bids) {
    validate_bid(b, universe);
    for (UserId id : seen)
      if (id == b.id) throw std::invalid_argument("duplicate user id " + std::to_string(b.id));
    seen.push_back(b.id);
  }
}

// argmax marginal density among unused users with positive marginal,
// ties toward the lower id
int best_remaining(const CoverageOracle& oracle, const std::vector<DeclaredBid>& bids,
                   const std::vector<char>& used, long long* best_marginal) {
  int best = -1;
  long long best_m = 0;
  for (size_t j = 0; j < bids.size(); ++j) {
    if (used[j]) continue;
    long long m = oracle.marginal(static_cast<int>(j));
    if (m <= 0) continue;
    if (best < 0) {
      best = static_cast<int>(j);
      best_m = m;
      continue;
    }
    int cmp = compare_density(m, bids[j].bid, best_m, bids[best].bid);
    if (cmp > 0 || (cmp == 0 && bids[j].id < bids[best].id)) {
      best = static_cast<int>(j);
      best_m = m;
    }
  }
  *best_marginal = best_m;
  return best;
}

// Critical payment for one winner: greedy over the pool without the winner,
// taking at each position the better of the bid-matching price and the
// proportional-share cap, until the competing greedy would stop. When the
// competition runs out first, only the share cap constrains the last slot.
Rational winner_payment(const TaskUniverse& universe, const std::vector<DeclaredBid>& bids,
                        const Rational& budget, int winner) {
  CoverageOracle oracle(universe, task_sets_of(bids));
  std::vector<char> used(bids.size(), 0);
  used[winner] = 1;
  Rational pay(0);
  while (true) {
    long long mi = oracle.marginal(winner);
    long long mj = 0;
    int j = best_remaining(oracle, bids, used, &mj);
    if (j < 0) {
      if (mi > 0) {
        Rational cap = Rational(mi) * budget / Rational(oracle.value() + mi);
        if (cap > pay) pay = cap;
      }
      break;
    }
    if (mi > 0) {
      Rational match = Rational(mi) * bids[j].bid / Rational(mj);
      Rational cap = Rational(mi) * budget / Rational(oracle.value() + mi);
      Rational candidate = match < cap ? match : cap;
      if (candidate > pay) pay = candidate;
    }
    used[j] = 1;
    oracle.add(j);
    if (!within_share(bids[j].bid, mj, oracle.value(), budget)) break;
  }
  return pay;
}

}  // namespace

GreedySelection proportional_share_greedy(const TaskUniverse& universe,
                                          const std::vector<DeclaredBid>& bids,
                                          const Rational& budget) {
  if (budget <= 0) throw std::invalid_argument("budget must be positive");
  CoverageOracle oracle(universe, task_sets_of(bids));
  std::vector<char> used(bids.size(), 0);
  GreedySelection sel;
  while (true) {
    long long m = 0;
    int j = best_remaining(oracle, bids, used, &m);
    if (j < 0 || !within_share(bids[j].bid, m, oracle.value() + m, budget)) break;
    used[j] = 1;
    oracle.add(j);
    sel.order.push_back(j);
  }
  sel.value = oracle.value();
  sel.marginal_evals = oracle.marginal_evals();
  return sel;
}

AuctionOutcome proportional_share_offline(const TaskUniverse& universe,
                                          const std::vector<DeclaredBid>& bids,
                                          const Rational& budget) {
  validate_pool(universe, bids);
  GreedySelection sel = proportional_share_greedy(universe, bids, budget);
  AuctionOutcome out;
  out.total_value = sel.value;
  for (int idx : sel.order) out.winners.push_back(bids[idx].id);
  for (int idx : sel.order) {
    Rational p = winner_payment(universe, bids, budget, idx);
    out.payments[bids[idx].id] = p;
    out.total_payment += p;
  }
  return out;
}

AuctionOutcome greedy_budgeted_max_coverage(const TaskUniverse& universe,
                                            const std::vector<DeclaredBid>& bids,
                                            const Rational& budget) {
  validate_pool(universe, bids);
  if (budget <= 0) throw std::invalid_argument("budget must be positive");
  CoverageOracle oracle(universe, task_sets_of(bids));
  std::vector<char> used(bids.size(), 0);
  Rational left = budget;
  AuctionOutcome out;
  while (true) {
    int best = -1;
    long long best_m = 0;
    for (size_t j = 0; j < bids.size(); ++j) {
      if (used[j] || bids[j].bid > left) continue;
      long long m = oracle.marginal(static_cast<int>(j));
      if (m <= 0) continue;
      if (best < 0) {
        best = static_cast<int>(j);
        best_m = m;
        continue;
      }
      int cmp = compare_density(m, bids[j].bid, best_m, bids[best].bid);
      if (cmp > 0 || (cmp == 0 && bids[j].id < bids[best].id)) {
        best = static_cast<int>(j);
        best_m = m;
      }
    }
    if (best < 0) break;
    used[best] = 1;
    oracle.add(best);
    left -= bids[best].bid;
    out.winners.push_back(bids[best].id);
    out.payments[bids[best].id] = bids[best].bid;
    out.total_payment += bids[best].bid;
  }
  out.total_value = oracle.value();

  // The density pass alone can burn the budget on cheap low-value users, so
  // take the better of the greedy pick and the best affordable single user.
  oracle.reset();
  int single = -1;
  long long single_value = 0;
  for (size_t j = 0; j < bids.size(); ++j) {
    if (bids[j].bid > budget) continue;
    long long m = oracle.marginal(static_cast<int>(j));
    if (m > single_value) {
      single = static_cast<int>(j);
      single_value = m;
    }
  }
  if (single >= 0 && single_value > out.total_value) {
    out = AuctionOutcome{};
    out.winners.push_back(bids[single].id);
    out.payments[bids[single].id] = bids[single].bid;
    out.total_payment = bids[single].bid;
    out.total_value = single_value;
  }
  return out;
}

AuctionOutcome brute_force_optimal(const TaskUniverse& universe,
                                   const std::vector<DeclaredBid>& bids, const Rational& budget,
                                   int max_users) {
  validate_pool(universe, bids);
  const int n = static_cast<int>(bids.size());
  if (n > max_users) throw std::invalid_argument("instance too large for exhaustive search");
  CoverageOracle oracle(universe, task_sets_of(bids));
  long long best_value = 0;
  std::uint32_t best_mask = 0;
  std::uint32_t gray = 0;
  Rational cost(0);
  const std::uint32_t total = 1u << n;
  for (std::uint32_t k = 1; k < total; ++k) {
    std::uint32_t next = k ^ (k >> 1);
    std::uint32_t flipped = next ^ gray;
    int bit = std::countr_zero(flipped);
    if (next & flipped) {
      oracle.add(bit);
      cost += bids[bit].bid;
    } else {
      oracle.remove(bit);
      cost -= bids[bit].bid;
    }
    gray = next;
    if (cost > budget) continue;
    long long v = oracle.value();
    if (v > best_value ||
        (v == best_value && best_mask != 0 &&
         (std::popcount(gray) < std::popcount(best_mask) ||
          (std::popcount(gray) == std::popcount(best_mask) && gray < best_mask)))) {
      best_value = v;
      best_mask = gray;
    }
  }

  AuctionOutcome out;
  out.total_value = best_value;
  for (int i = 0; i < n; ++i) {
    if (!(best_mask & (1u << i))) continue;
    out.winners.push_back(bids[i].id);
    out.payments[bids[i].id] = bids[i].bid;
    out.total_payment += bids[i].bid;
  }
  return out;
}

AuctionOutcome random_threshold_mechanism(const TaskUniverse& universe,
                                          const std::vector<DeclaredBid>& bids,
                                          const Rational& budget, const Rational& rho) {
  validate_pool(universe, bids);
  if (rho <= 0) throw std::invalid_argument("density threshold must be positive");
  if (budget <= 0) throw std::invalid_argument("budget must be positive");
  CoverageOracle oracle(universe, task_sets_of(bids));
  AuctionOutcome out;
  Rational committed(0);
  for (size_t i = 0; i < bids.size(); ++i) {
    long long m = oracle.marginal(static_cast<int>(i));
    Rational price = Rational(m) / rho;
    if (bids[i].bid <= price && price <= budget - committed) {
      oracle.add(static_cast<int>(i));
      committed += price;
      out.winners.push_back(bids[i].id);
      out.payments[bids[i].id] = price;
    }
  }
  out.total_value = oracle.value();
  out.total_payment = committed;
  return out;
}

}  // namespace mcs
