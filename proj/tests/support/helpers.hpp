#ifndef MOSP_TESTS_HELPERS_HPP
#define MOSP_TESTS_HELPERS_HPP

#include <algorithm>
#include <random>
#include <vector>

#include "brute_force.hpp"
#include "mosp/core.hpp"
#include "mosp/gadgets.hpp"
#include "mosp/instance.hpp"

using Orgs = std::vector<mosp::Organization>;

namespace testing_support {

inline mosp::Instance example1() { return mosp::Instance({{2, {3, 3, 3}}, {1, {1, 1, 1, 1, 1, 1}}}); }

/// Two 1-jobs of organization 2 and then one 3-job of organization 1 on every
/// machine.
inline mosp::Schedule example2_schedule(const mosp::Instance& instance) {
  mosp::Schedule s(instance);
  for (int d = 0; d < 3; ++d) {
    s[{1, 2 * d}] = {d, 1};
    s[{1, 2 * d + 1}] = {d, 2};
    s[{0, d}] = {d, 5};
  }
  return s;
}

inline std::vector<naive::Org> to_naive(const mosp::Instance& instance) {
  std::vector<naive::Org> out;
  for (const auto& org : instance.organizations()) out.push_back({org.machines, org.jobs});
  return out;
}

/// Random instances of the oracle suite: k <= 3, m <= 3, n <= 8, pmax <= 5.
inline mosp::Instance small_instance(std::uint64_t seed, int max_jobs_total = 8, mosp::Time pmax = 5) {
  mosp::RandomSpec spec;
  spec.min_orgs = 1;
  spec.max_orgs = 3;
  spec.max_machines = 3;
  spec.machine_cap = 3;
  spec.max_jobs = 4;
  spec.job_cap = max_jobs_total;
  spec.max_duration = pmax;
  return mosp::random_instance(spec, seed);
}

/// Random schedule: every job on a random machine, random order per machine,
/// random idle time in front of each job.
inline mosp::Schedule random_schedule(const mosp::Instance& instance, std::mt19937_64& rng, mosp::Time max_gap = 2) {
  const int m = instance.machine_count();
  std::vector<std::vector<mosp::JobRef>> seq(m);
  std::uniform_int_distribution<int> machine(0, m - 1);
  for (const auto ref : instance.jobs()) seq[machine(rng)].push_back(ref);
  mosp::Schedule s(instance);
  std::uniform_int_distribution<mosp::Time> gap(0, max_gap);
  for (int d = 0; d < m; ++d) {
    std::shuffle(seq[d].begin(), seq[d].end(), rng);
    mosp::Time clock = 0;
    for (const auto ref : seq[d]) {
      clock += gap(rng) + instance.duration(ref);
      s[ref] = {d, clock};
    }
  }
  return s;
}

/// All restricted 3-Partition instances with q triplets and target B, as
/// sorted integer lists (one representative per multiset).
inline std::vector<mosp::ThreePartitionInstance> restricted_instances(int q, mosp::Time B) {
  std::vector<mosp::Time> values;
  for (mosp::Time x = 1; x < B; ++x)
    if (4 * x > B && 2 * x < B) values.push_back(x);
  std::vector<mosp::ThreePartitionInstance> out;
  std::vector<mosp::Time> cur;
  auto rec = [&](auto&& self, std::size_t from, mosp::Time sum) -> void {
    if (static_cast<int>(cur.size()) == 3 * q) {
      if (sum == q * B) out.push_back({B, cur});
      return;
    }
    for (std::size_t i = from; i < values.size(); ++i) {
      if (sum + values[i] > q * B) break;
      cur.push_back(values[i]);
      self(self, i, sum + values[i]);
      cur.pop_back();
    }
  };
  rec(rec, 0, 0);
  return out;
}

}  // namespace testing_support

#endif  // MOSP_TESTS_HELPERS_HPP
