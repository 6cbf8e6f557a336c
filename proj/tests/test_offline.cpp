#include "doctest.h"

#include "mcs/offline.hpp"
#include "mcs/rng.hpp"
#include "mcs/sweeps.hpp"

using namespace mcs;

TEST_SUITE_BEGIN("offline");

namespace {

// Five users on disjoint unit tasks, costs 2, 4, 5, 1, 3.
TaskUniverse walkthrough_universe() {
  TaskUniverse u;
  u.requirement.assign(5, 1);
  return u;
}

std::vector<DeclaredBid> walkthrough_pool() {
  const int costs[] = {2, 4, 5, 1, 3};
  std::vector<DeclaredBid> bids;
  for (int i = 0; i < 5; ++i)
    bids.push_back(DeclaredBid{i + 1, 1, 1, {i}, Rational(costs[i])});
  return bids;
}

}  // namespace

TEST_CASE("greedy picks by density under the proportional-share rule") {
  GreedySelection g =
      proportional_share_greedy(walkthrough_universe(), walkthrough_pool(), Rational(16));
  CHECK(g.order == std::vector<int>{3, 0, 4, 1});  // users 4, 1, 5, 2
  CHECK(g.value == 4);
  CHECK(g.marginal_evals > 0);
}

TEST_CASE("critical payments on the five-user pool") {
  AuctionOutcome out =
      proportional_share_offline(walkthrough_universe(), walkthrough_pool(), Rational(16));
  CHECK(out.winners == std::vector<UserId>{4, 1, 5, 2});
  CHECK(out.total_value == 4);
  for (UserId id : {1, 2, 4, 5}) CHECK(out.payment_for(id) == Rational(4));
  CHECK(out.payment_for(3) == Rational(0));
  CHECK(out.total_payment == Rational(16));
}

TEST_CASE("payments are critical bids") {
  TaskUniverse u = walkthrough_universe();
  const Rational cent(1, 100);
  // user 4 wins at any bid below its payment of 4 and loses above it
  auto pool = walkthrough_pool();
  pool[3].bid = Rational(4) - cent;
  CHECK(proportional_share_offline(u, pool, Rational(16)).is_winner(4));
  pool[3].bid = Rational(4) + cent;
  CHECK_FALSE(proportional_share_offline(u, pool, Rational(16)).is_winner(4));
}

TEST_CASE("winners never get less than their bid") {
  Rng rng(31);
  for (int round = 0; round < 25; ++round) {
    RandomInstanceSpec spec;
    spec.max_users = 12;
    spec.max_tasks = 15;
    RandomInstance inst = make_random_instance(derive_seed(77, round), spec);
    std::vector<DeclaredBid> bids;
    for (const auto& user : inst.users) bids.push_back(truthful_bid(user));
    AuctionOutcome out = proportional_share_offline(inst.universe, bids, inst.config.budget);
    for (UserId id : out.winners) {
      const auto& bid = bids[static_cast<std::size_t>(id) - 1];
      CHECK(out.payment_for(id) >= bid.bid);
    }
    CHECK(out.total_value ==
          coverage_value(out.winners, bids, inst.universe));
  }
}

TEST_CASE("a lone admissible user is paid the whole budget") {
  TaskUniverse u;
  u.requirement = {1};
  std::vector<DeclaredBid> bids{DeclaredBid{1, 1, 1, {0}, Rational(3)}};
  AuctionOutcome out = proportional_share_offline(u, bids, Rational(16));
  CHECK(out.winners == std::vector<UserId>{1});
  CHECK(out.payment_for(1) == Rational(16));
}

TEST_CASE("fractional bids keep payments exact") {
  TaskUniverse u;
  u.requirement = {1, 1};
  std::vector<DeclaredBid> bids{DeclaredBid{1, 1, 1, {0}, Rational(1, 3)},
                                DeclaredBid{2, 1, 1, {1}, Rational(2, 3)}};
  AuctionOutcome out = proportional_share_offline(u, bids, Rational(1));
  CHECK(out.winners == std::vector<UserId>{1});
  CHECK(out.payment_for(1) == Rational(2, 3));

  // 2/3 is exactly critical for user 1
  bids[0].bid = Rational(2, 3) + Rational(1, 1000);
  CHECK_FALSE(proportional_share_offline(u, bids, Rational(1)).is_winner(1));
  bids[0].bid = Rational(2, 3) - Rational(1, 1000);
  CHECK(proportional_share_offline(u, bids, Rational(1)).is_winner(1));
}

TEST_CASE("bid-paying greedy benchmark spends further down the list") {
  AuctionOutcome out =
      greedy_budgeted_max_coverage(walkthrough_universe(), walkthrough_pool(), Rational(16));
  CHECK(out.winners == std::vector<UserId>{4, 1, 5, 2, 3});
  CHECK(out.total_value == 5);
  CHECK(out.total_payment == Rational(15));
  CHECK(out.payment_for(3) == Rational(5));
}

TEST_CASE("exhaustive optimum on the five-user pool") {
  TaskUniverse u = walkthrough_universe();
  auto pool = walkthrough_pool();
  SUBCASE("tight budget") {
    AuctionOutcome out = brute_force_optimal(u, pool, Rational(3));
    CHECK(out.total_value == 2);
    CHECK(out.winners == std::vector<UserId>{1, 4});
    CHECK(out.total_payment == Rational(3));
  }
  SUBCASE("value grows with the budget") {
    long long previous = -1;
    for (int budget : {3, 6, 10, 16}) {
      AuctionOutcome out = brute_force_optimal(u, pool, Rational(budget));
      CHECK(out.total_value >= previous);
      previous = out.total_value;
    }
    CHECK(brute_force_optimal(u, pool, Rational(16)).total_value == 5);
    CHECK(brute_force_optimal(u, pool, Rational(10)).total_value == 4);
  }
  SUBCASE("user cap") {
    std::vector<DeclaredBid> big(16);
    for (int i = 0; i < 16; ++i) big[i] = DeclaredBid{i + 1, 1, 1, {0}, Rational(1)};
    TaskUniverse one;
    one.requirement = {1};
    CHECK_THROWS_AS(brute_force_optimal(one, big, Rational(4), 15), std::invalid_argument);
  }
}

TEST_CASE("fixed-threshold baseline replays in arrival order") {
  TaskUniverse u = walkthrough_universe();
  auto pool = walkthrough_pool();
  SUBCASE("rho = 1/4 buys four users at price 4") {
    AuctionOutcome out = random_threshold_mechanism(u, pool, Rational(16), Rational(1, 4));
    CHECK(out.winners == std::vector<UserId>{1, 2, 4, 5});
    for (UserId id : out.winners) CHECK(out.payment_for(id) == Rational(4));
    CHECK(out.total_payment == Rational(16));
  }
  SUBCASE("rho = 1 only fits the cheapest user") {
    AuctionOutcome out = random_threshold_mechanism(u, pool, Rational(16), Rational(1));
    CHECK(out.winners == std::vector<UserId>{4});
    CHECK(out.payment_for(4) == Rational(1));
  }
}

TEST_SUITE_END();
