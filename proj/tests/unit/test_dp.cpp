#include <doctest.h>

#include "helpers.hpp"
#include "mosp/core.hpp"
#include "mosp/dp.hpp"
#include "mosp/errors.hpp"
#include "mosp/gadgets.hpp"
#include "mosp/local.hpp"
#include "mosp/oracle.hpp"

using namespace mosp;

namespace {

void check_result(const Instance& inst, const OptResult& r, ObjectiveKind kind, const LocalOptima& local) {
  CHECK(check_feasible(inst, r.schedule));
  CHECK(is_individually_rational(inst, r.schedule, kind, local));
  CHECK(objective_value(inst, r.schedule, kind) == r.value);
  CHECK(r.proven_optimal);
}

}  // namespace

TEST_CASE("dp_makespan") {
  const Instance ex = testing_support::example1();
  const LocalOptima local = compute_local_optima(ex);
  const OptResult r = dp_makespan(ex, local);
  CHECK(r.value == 5);
  check_result(ex, r, ObjectiveKind::Makespan, local);

  const Instance single(Orgs{{3, {4, 4, 3, 3, 2, 2, 2}}});
  CHECK(dp_makespan(single, compute_local_optima(single)).value ==
        opt_local_makespan(3, single.organization(0).jobs).value);
}

TEST_CASE("dp_sumc") {
  const Instance ex = testing_support::example1();
  const LocalOptima local = compute_local_optima(ex);
  const OptResult r = dp_sumc(ex, local);
  CHECK(r.value == 30);
  check_result(ex, r, ObjectiveKind::SumCompletion, local);

  const Instance single(Orgs{{1, {7}}});
  CHECK(dp_sumc(single, compute_local_optima(single)).value == 7);

  const auto gadget = gen_sumc_hardness({13, {4, 4, 5, 4, 4, 5}});
  const LocalOptima gl = compute_local_optima(gadget.instance);
  const OptResult g = dp_sumc(gadget.instance, gl);
  CHECK(g.value == 130);
  check_result(gadget.instance, g, ObjectiveKind::SumCompletion, gl);
}

TEST_CASE("dynamic programs agree with the oracle, merged and unmerged") {
  for (std::uint64_t seed = 300; seed < 340; ++seed) {
    const Instance inst = testing_support::small_instance(seed, 7, 4);
    const LocalOptima local = compute_local_optima(inst);
    CAPTURE(seed);
    const Time mk = solve_exact(inst, ObjectiveKind::Makespan, local).value;
    const Time sc = solve_exact(inst, ObjectiveKind::SumCompletion, local).value;
    for (bool canonical : {true, false}) {
      const DpOptions opts{20'000'000, canonical};
      const OptResult a = dp_makespan(inst, local, opts);
      CHECK(a.value == mk);
      check_result(inst, a, ObjectiveKind::Makespan, local);
      const OptResult b = dp_sumc(inst, local, opts);
      CHECK(b.value == sc);
      check_result(inst, b, ObjectiveKind::SumCompletion, local);
    }
  }
}

TEST_CASE("state caps raise resource errors") {
  const Instance inst(Orgs{{2, {5, 4, 4, 3, 3, 2, 2}}, {1, {3, 3, 2, 1}}});
  const LocalOptima local = compute_local_optima(inst);
  CHECK_THROWS_AS(dp_makespan(inst, local, {5, true}), ResourceError);
  CHECK_THROWS_AS(dp_sumc(inst, local, {5, true}), ResourceError);
  CHECK(estimate_sumc_states(inst) > 1.0);
}
