#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "mosp/core.hpp"
#include "mosp/errors.hpp"
#include "mosp/gadgets.hpp"
#include "mosp/local.hpp"
#include "mosp/oracle.hpp"

using namespace mosp;

namespace {

const ThreePartitionInstance kYes13{13, {4, 4, 5, 4, 4, 5}};
const ThreePartitionInstance kNo13{13, {4, 4, 4, 4, 4, 6}};

bool gadget_decide(const GadgetOutput& g, ObjectiveKind kind) {
  return decide(g.instance, kind, compute_local_optima(g.instance), g.target);
}

}  // namespace

TEST_CASE("3-Partition helpers") {
  CHECK(tp_scale(kYes13, 2) == ThreePartitionInstance{26, {8, 8, 10, 8, 8, 10}});
  CHECK(tp_scale(kYes13, 1) == kYes13);
  CHECK_THROWS_AS(tp_scale(kYes13, 0), InvalidArgument);
  CHECK_THROWS_AS(tp_scale(kYes13, std::numeric_limits<Time>::max() / 2), OverflowError);

  CHECK(tp_decide(kYes13));
  CHECK_FALSE(tp_decide(kNo13));
  CHECK(tp_decide({7, {2, 2, 3}}));
  CHECK(tp_decide(tp_scale(kYes13, 3)));
  CHECK_FALSE(tp_decide(tp_scale(kNo13, 3)));
  CHECK(kYes13.restricted());
  CHECK_FALSE(ThreePartitionInstance{12, {2, 5, 5}}.restricted());
  CHECK_THROWS_AS(ThreePartitionInstance({13, {4, 4}}).validate(), ValidationError);
  CHECK_THROWS_AS(ThreePartitionInstance({13, {4, 4, 4}}).validate(), ValidationError);
}

TEST_CASE("tp_decide matches exhaustive pairing") {
  // Plain search over all ways to split into triplets.
  auto slow = [](const ThreePartitionInstance& tp) {
    std::vector<Time> xs = tp.integers;
    std::sort(xs.begin(), xs.end());
    do {
      bool ok = true;
      for (std::size_t i = 0; i < xs.size() && ok; i += 3) ok = xs[i] + xs[i + 1] + xs[i + 2] == tp.B;
      if (ok) return true;
    } while (std::next_permutation(xs.begin(), xs.end()));
    return false;
  };
  for (Time B = 7; B <= 19; ++B) {
    for (const auto& tp : testing_support::restricted_instances(2, B)) CHECK(tp_decide(tp) == slow(tp));
    for (const auto& tp : testing_support::restricted_instances(3, B)) {
      if (tp.integers.size() <= 9) CHECK(tp_decide(tp) == slow(tp));
    }
  }
}

TEST_CASE("bp_decide") {
  CHECK(bp_decide({{2, 2, 2}, 3, 3}));
  CHECK_FALSE(bp_decide({{2, 2, 2}, 3, 1}));
  CHECK(bp_decide({{3, 3, 2, 2, 1, 1}, 6, 2}));
  CHECK_FALSE(bp_decide({{4, 4, 4}, 6, 2}));
  CHECK_THROWS_AS(bp_decide({{5}, 4, 1}), ValidationError);
}

TEST_CASE("gen_sumc_hardness") {
  const GadgetOutput yes = gen_sumc_hardness(kYes13);
  CHECK(yes.instance.org_count() == 4);
  CHECK(yes.instance.machine_count() == 6);
  CHECK(yes.instance.job_count() == 12);
  CHECK(yes.target == 130);
  CHECK(yes.certificate["target"] == 130);
  const LocalOptima local = compute_local_optima(yes.instance);
  for (int i = 2; i < 4; ++i) CHECK(local.sumc[i] == 4 * 13);
  CHECK(gadget_decide(yes, ObjectiveKind::SumCompletion));

  const GadgetOutput no = gen_sumc_hardness(kNo13);
  CHECK(no.instance.org_count() == 4);
  CHECK_FALSE(gadget_decide(no, ObjectiveKind::SumCompletion));

  CHECK(gadget_decide(gen_sumc_hardness({7, {2, 2, 3}}), ObjectiveKind::SumCompletion));
  CHECK_THROWS_AS(gen_sumc_hardness({12, {2, 5, 5}}), InvalidArgument);
}

TEST_CASE("gen_dp_hardness") {
  const ThreePartitionInstance yes1{7, {2, 2, 3}};
  const GadgetOutput g = gen_dp_hardness(yes1, kNo13);
  CHECK(g.instance.org_count() == 2);
  CHECK(g.certificate["doubled"] == true);
  CHECK(g.certificate["doubled_prime"] == true);
  CHECK(g.certificate["f"] == 3 * 26 / 2 + 1);
  CHECK(g.target == 40 * 14);
  CHECK(g.instance.organization(0).machines == 1);
  CHECK(g.instance.organization(1).machines == 2);
  CHECK(g.instance.organization(1).jobs.back() == 40 * 14 - 39);
  CHECK(gadget_decide(g, ObjectiveKind::Makespan));
  CHECK_FALSE(gadget_decide(gen_dp_hardness(yes1, kYes13), ObjectiveKind::Makespan));
  CHECK_FALSE(gadget_decide(gen_dp_hardness({10, {3, 3, 4, 3, 3, 4}}, {7, {2, 2, 3}}), ObjectiveKind::Makespan));
}

TEST_CASE("gen_binpacking_hardness") {
  const auto yes = gen_binpacking_hardness({{2, 2, 2}, 3, 3});
  CHECK(yes.target == 3 * 4 * 3 + 12);
  CHECK(yes.instance.org_count() == 4);
  CHECK(gadget_decide(yes, ObjectiveKind::SumCompletion));
  CHECK_FALSE(gadget_decide(gen_binpacking_hardness({{2, 2, 2}, 3, 1}), ObjectiveKind::SumCompletion));

  const auto stripped = gen_binpacking_hardness({{3, 1, 2}, 3, 2});
  CHECK(stripped.certificate["stripped"] == 1);
  CHECK(stripped.instance.organization(0).machines == 1);
  CHECK(gadget_decide(stripped, ObjectiveKind::SumCompletion));

  const auto trivial_no = gen_binpacking_hardness({{3, 3, 1}, 3, 2});
  CHECK(trivial_no.certificate["trivial"] == "no");
  CHECK_FALSE(gadget_decide(trivial_no, ObjectiveKind::SumCompletion));
  const auto trivial_yes = gen_binpacking_hardness({{3, 3}, 3, 2});
  CHECK(trivial_yes.certificate["trivial"] == "yes");
  CHECK(gadget_decide(trivial_yes, ObjectiveKind::SumCompletion));

  CHECK_THROWS_AS(gen_binpacking_hardness({{4}, 3, 1}), ValidationError);
}

TEST_CASE("gen_theta2p structure") {
  const ThreePartitionInstance yes{6, {2, 2, 2}};
  const GadgetOutput g = gen_theta2p({yes}, {kNo13});
  CHECK(g.instance.org_count() == 11);
  const auto& gadgets = g.certificate["gadgets"];
  REQUIRE(gadgets.size() == 2);
  CHECK(gadgets[0]["B"] == 36);
  CHECK(gadgets[0]["offset"] == 2666);
  CHECK(gadgets[0]["bound"] == 4610);
  CHECK(gadgets[1]["B"] == 234);
  CHECK(gadgets[1]["qmax"] == 2);
  CHECK(gadgets[1]["offset"] == 443126);
  CHECK(gadgets[1]["bound"] == 607394);
  CHECK(g.target == 2429576);

  int machines = 0;
  for (int i = 0; i < 5; ++i) machines += g.instance.organization(i).machines;
  CHECK(machines == 1 + 6 * 1);
  machines = 0;
  for (int i = 5; i < 10; ++i) machines += g.instance.organization(i).machines;
  CHECK(machines == 1 + 6 * 2);

  // Total load fills every machine up to the target exactly.
  CHECK(g.instance.total_load() == g.instance.machine_count() * g.target);
  for (Time p : g.instance.organization(10).jobs) CHECK(4 * p >= 3 * g.target);

  const GadgetOutput two = gen_theta2p({yes, kYes13}, {kYes13, kNo13});
  CHECK(two.instance.org_count() == 16);
  CHECK(two.instance.total_load() == two.instance.machine_count() * two.target);

  CHECK_THROWS_AS(gen_theta2p({yes}, {}), InvalidArgument);
  CHECK_THROWS_AS(gen_theta2p({{12, {2, 5, 5}}}, {yes}), InvalidArgument);
}

TEST_CASE("random_instance") {
  RandomSpec spec;
  spec.max_orgs = 4;
  spec.max_machines = 3;
  spec.max_jobs = 5;
  spec.max_duration = 9;
  spec.machine_cap = 5;
  spec.job_cap = 10;
  CHECK(random_instance(spec, 42) == random_instance(spec, 42));
  bool differs = false;
  for (std::uint64_t s = 0; s < 50; ++s) {
    const Instance inst = random_instance(spec, s);
    CHECK(inst.org_count() <= 4);
    CHECK(inst.machine_count() <= 5);
    CHECK(inst.job_count() <= 10);
    CHECK(inst.max_duration() <= 9);
    differs = differs || !(inst == random_instance(spec, 42));
  }
  CHECK(differs);
  spec.max_duration = 0;
  CHECK_THROWS_AS(random_instance(spec, 1), InvalidArgument);
}
