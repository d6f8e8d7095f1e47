#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "mosp/core.hpp"
#include "mosp/errors.hpp"
#include "mosp/local.hpp"

using namespace mosp;
using testing_support::example1;
using testing_support::example2_schedule;

namespace {

// Fig. 1 local schedules: org 1 on machines 0-1, org 2 on machine 2.
Schedule figure1(const Instance& inst) {
  Schedule s(inst);
  s[{0, 0}] = {0, 3};
  s[{0, 2}] = {0, 6};
  s[{0, 1}] = {1, 3};
  for (int j = 0; j < 6; ++j) s[{1, j}] = {2, j + 1};
  return s;
}

}  // namespace

TEST_CASE("instance statistics and validation") {
  const Instance inst = example1();
  CHECK(inst.org_count() == 2);
  CHECK(inst.machine_count() == 3);
  CHECK(inst.job_count() == 9);
  CHECK(inst.max_duration() == 3);
  CHECK(inst.max_jobs_per_org() == 6);
  CHECK(inst.max_machines_per_org() == 2);
  CHECK(inst.total_load() == 15);
  CHECK(inst.first_machine(1) == 2);

  CHECK_THROWS_AS(Instance({}), ValidationError);
  CHECK_THROWS_WITH_AS(Instance(Orgs{{1, {1}}, {0, {2}}}), doctest::Contains("organization 2"), ValidationError);
  CHECK_THROWS_AS(Instance(Orgs{{1, {0}}}), ValidationError);
  CHECK_THROWS_AS(Instance(Orgs{{1, {std::numeric_limits<Time>::max(), 1}}}), ValidationError);
  CHECK_NOTHROW(Instance(Orgs{{1, {}}, {2, {1}}}));
}

TEST_CASE("check_feasible") {
  const Instance inst = example1();
  CHECK(check_feasible(inst, figure1(inst)));
  CHECK(check_feasible(inst, example2_schedule(inst)));

  const Instance one(Orgs{{1, {5}}});
  Schedule s(one);
  s[{0, 0}] = {0, 5};
  CHECK(check_feasible(one, s));
  s[{0, 0}] = {0, 4};
  CHECK_FALSE(check_feasible(one, s));

  const Instance two(Orgs{{1, {2, 3}}});
  Schedule t(two);
  t[{0, 0}] = {0, 3};
  t[{0, 1}] = {0, 3};
  CHECK_FALSE(check_feasible(two, t));
  t[{0, 1}] = {0, 6};  // back to back
  CHECK(check_feasible(two, t));

  SUBCASE("nested jobs overlap") {
    const Instance nest(Orgs{{1, {1, 5}}});
    Schedule n(nest);
    n[{0, 0}] = {0, 3};  // runs in [2,3], inside [0,5]
    n[{0, 1}] = {0, 5};
    CHECK_FALSE(check_feasible(nest, n));
  }

  SUBCASE("malformed schedules are errors") {
    Schedule missing(inst);
    CHECK_THROWS_AS(check_feasible(inst, missing), MalformedScheduleError);
    Schedule bad = figure1(inst);
    bad[{0, 0}].machine = 7;
    CHECK_THROWS_AS(check_feasible(inst, bad), MalformedScheduleError);
    CHECK_THROWS_AS(check_feasible(inst, Schedule(one)), MalformedScheduleError);
  }

  SUBCASE("machine relabeling keeps feasibility") {
    Schedule r = example2_schedule(inst);
    for (const auto ref : inst.jobs()) r[ref].machine = 2 - r[ref].machine;
    CHECK(check_feasible(inst, r));
  }
}

TEST_CASE("objective_value") {
  const Instance inst = example1();
  const auto all = inst.jobs();
  CHECK(objective_value(figure1(inst), all, ObjectiveKind::Makespan) == 6);
  CHECK(objective_value(figure1(inst), {}, ObjectiveKind::Makespan) == 0);
  CHECK(objective_value(example2_schedule(inst), all, ObjectiveKind::SumCompletion) == 24);
  CHECK(org_objective(inst, example2_schedule(inst), 0, ObjectiveKind::SumCompletion) == 15);

  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const Schedule s = testing_support::random_schedule(inst, rng);
    Time worst = 0;
    for (int o = 0; o < inst.org_count(); ++o) worst = std::max(worst, org_objective(inst, s, o, ObjectiveKind::Makespan));
    CHECK(objective_value(inst, s, ObjectiveKind::Makespan) == worst);
  }
}

TEST_CASE("individual rationality") {
  const Instance inst = example1();
  const LocalOptima local = compute_local_optima(inst);
  CHECK(is_individually_rational(inst, example2_schedule(inst), ObjectiveKind::Makespan, local));
  CHECK_FALSE(is_individually_rational(inst, example2_schedule(inst), ObjectiveKind::SumCompletion, local));
  for (auto kind : {ObjectiveKind::Makespan, ObjectiveKind::SumCompletion}) {
    const Schedule u = local_union_schedule(inst, kind);
    CHECK(check_feasible(inst, u));
    CHECK(is_individually_rational(inst, u, ObjectiveKind::Makespan, local));
    if (kind == ObjectiveKind::SumCompletion) CHECK(is_individually_rational(inst, u, kind, local));
  }
  CHECK(is_individually_rational(inst, figure1(inst), ObjectiveKind::SumCompletion, local));
}

TEST_CASE("compute_phases") {
  const Instance inst = example1();
  const PhasePartition one = compute_phases(inst, compute_local_optima(inst));
  REQUIRE(one.count() == 1);
  CHECK(one.phases[0].deadline == 6);
  CHECK(one.phases[0].orgs == std::vector<int>{0, 1});

  const Instance single(Orgs{{2, {4, 1, 2}}});
  const PhasePartition s = compute_phases(single, compute_local_optima(single));
  REQUIRE(s.count() == 1);
  CHECK(s.phases[0].deadline == 4);

  const Instance three(Orgs{{1, {4}}, {2, {2, 2, 4}}, {1, {9}}});
  const LocalOptima local = compute_local_optima(three);
  CHECK(local.makespan == std::vector<Time>{4, 4, 9});
  const PhasePartition p = compute_phases(three, local);
  REQUIRE(p.count() == 2);
  CHECK(p.phases[0].deadline == 4);
  CHECK(p.phases[1].deadline == 9);
  CHECK(p.phases[0].orgs == std::vector<int>{0, 1});
  CHECK(p.phase_of_org == std::vector<int>{0, 0, 1});
  CHECK(p.phase_of({2, 0}) == 1);
}

TEST_CASE("left_justify") {
  const Instance inst = example1();
  const Schedule compact = example2_schedule(inst);
  CHECK(left_justify(inst, compact) == compact);

  const Instance one(Orgs{{1, {2}}});
  Schedule s(one);
  s[{0, 0}] = {0, 7};
  CHECK(left_justify(one, s)[{0, 0}].completion == 2);

  const Instance two(Orgs{{1, {2, 3}}});
  Schedule t(two);
  t[{0, 0}] = {0, 4};
  t[{0, 1}] = {0, 9};
  const Schedule j = left_justify(two, t);
  CHECK(j[{0, 0}].completion == 2);
  CHECK(j[{0, 1}].completion == 5);

  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const Instance r = testing_support::small_instance(100 + i);
    const Schedule x = testing_support::random_schedule(r, rng, 3);
    const Schedule y = left_justify(r, x);
    CHECK(check_feasible(r, y));
    CHECK(left_justify(r, y) == y);
    for (const auto ref : r.jobs()) {
      CHECK(y[ref].completion <= x[ref].completion);
      CHECK(y[ref].machine == x[ref].machine);
    }
  }
}

TEST_CASE("well_order") {
  const Instance inst = example1();
  const PhasePartition phases = compute_phases(inst, compute_local_optima(inst));
  CHECK(well_order(inst, example2_schedule(inst), phases) == example2_schedule(inst));

  // Equal durations: the exchange keeps the completion set.
  const Instance two(Orgs{{1, {2}}, {1, {2, 2, 2}}});
  const LocalOptima local = compute_local_optima(two);
  const PhasePartition p = compute_phases(two, local);
  REQUIRE(p.count() == 2);
  Schedule s(two);
  s[{1, 0}] = {0, 2};  // phase 2 first
  s[{0, 0}] = {0, 4};
  s[{1, 1}] = {1, 2};
  s[{1, 2}] = {1, 4};
  const Schedule w = well_order(two, s, p);
  CHECK(w[{0, 0}] == Placement{0, 2});
  CHECK(w[{1, 0}] == Placement{0, 4});
  CHECK(check_feasible(two, w));
  CHECK(is_individually_rational(two, w, ObjectiveKind::Makespan, local));

  Schedule bad(two);
  for (const auto ref : two.jobs()) bad[ref] = {0, 2};
  CHECK_THROWS_AS(well_order(two, bad, p), InvalidArgument);
}
