#include <doctest.h>

#include <random>

#include "brute_force.hpp"
#include "helpers.hpp"
#include "mosp/local.hpp"

using namespace mosp;

TEST_CASE("opt_local_makespan examples") {
  CHECK(opt_local_makespan(2, std::vector<Time>{3, 3, 3}).value == 6);
  CHECK(opt_local_makespan(1, std::vector<Time>{1, 1, 1, 1, 1, 1}).value == 6);
  CHECK(opt_local_makespan(2, std::vector<Time>{2, 2, 3, 3}).value == 5);
  const auto empty = opt_local_makespan(3, std::vector<Time>{});
  CHECK(empty.value == 0);
  CHECK(empty.schedule.placements.empty());
  // LPT gives 7 here, the optimum is 6.
  const auto r = opt_local_makespan(2, std::vector<Time>{3, 3, 2, 2, 2});
  CHECK(r.value == 6);
  CHECK(r.schedule.makespan() == 6);
}

TEST_CASE("opt_local_makespan matches enumeration") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 150; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 3);
    const int n = static_cast<int>(rng() % 9);
    std::vector<Time> jobs;
    for (int j = 0; j < n; ++j) jobs.push_back(1 + static_cast<Time>(rng() % 7));
    for (bool shortcut : {true, false}) {
      const auto r = opt_local_makespan(m, jobs, {20'000'000, shortcut});
      CHECK(r.value == naive::local_makespan(m, jobs));
      CHECK(r.schedule.makespan() == r.value);
      Time total = 0, longest = 0;
      for (Time p : jobs) {
        total += p;
        longest = std::max(longest, p);
      }
      CHECK(r.value >= std::max(longest, (total + m - 1) / m));
      if (m >= n) CHECK(r.value == longest);
      // Left-justified and consistent.
      std::vector<Time> load(m, 0);
      REQUIRE(r.schedule.placements.size() == jobs.size());
      for (const auto& p : r.schedule.placements) REQUIRE((p.machine >= 0 && p.machine < m));
      for (std::size_t j = 0; j < jobs.size(); ++j) load[r.schedule.placements[j].machine] += jobs[j];
      CHECK(*std::max_element(load.begin(), load.end()) == r.value);
    }
  }
}

TEST_CASE("spt_schedule") {
  const auto one = spt_schedule(1, std::vector<Time>{1, 1, 1, 1, 1, 1});
  CHECK(one.sum_completion() == 21);
  for (int j = 0; j < 6; ++j) CHECK(one.placements[j].completion == j + 1);
  CHECK(spt_schedule(2, std::vector<Time>{3, 3, 3}).sum_completion() == 12);
  for (Time B : {1, 7, 13, 40}) CHECK(spt_schedule(2, std::vector<Time>{B, B, B}).sum_completion() == 4 * B);

  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 3);
    const int n = static_cast<int>(rng() % 8);
    std::vector<Time> jobs;
    for (int j = 0; j < n; ++j) jobs.push_back(1 + static_cast<Time>(rng() % 6));
    CHECK(spt_schedule(m, jobs).sum_completion() == naive::local_sumc(m, jobs));
  }
}

TEST_CASE("compute_local_optima") {
  const LocalOptima ex = compute_local_optima(testing_support::example1());
  CHECK(ex.makespan == std::vector<Time>{6, 6});
  CHECK(ex.sumc == std::vector<Time>{12, 21});

  const LocalOptima single = compute_local_optima(Instance(Orgs{{1, {9}}}));
  CHECK(single.makespan == std::vector<Time>{9});
  CHECK(single.sumc == std::vector<Time>{9});

  const LocalOptima wide = compute_local_optima(Instance(Orgs{{3, {5, 1}}}));
  CHECK(wide.makespan == std::vector<Time>{5});
  CHECK(wide.sumc == std::vector<Time>{6});

  const LocalOptima empty = compute_local_optima(Instance(Orgs{{2, {}}}));
  CHECK(empty.makespan == std::vector<Time>{0});
  CHECK(empty.sumc == std::vector<Time>{0});
  CHECK(compute_local_optima(testing_support::example1()) == ex);
}
