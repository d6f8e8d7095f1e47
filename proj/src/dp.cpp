#include "mosp/dp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "load_vector.hpp"
#include "mosp/core.hpp"
#include "mosp/errors.hpp"

namespace mosp {

namespace {

void check_cap(const detail::LayeredStates& layers, const DpOptions& options, const char* who) {
  if (layers.total() > options.state_cap) throw ResourceError(std::string(who) + " exceeded its state cap");
}

}  // namespace

OptResult dp_makespan(const Instance& instance, const LocalOptima& local, const DpOptions& options) {
  const PhasePartition phases = compute_phases(instance, local);
  std::vector<JobRef> order = instance.jobs();
  std::stable_sort(order.begin(), order.end(), [&](JobRef a, JobRef b) {
    return std::tuple(phases.phase_of(a), -instance.duration(a)) < std::tuple(phases.phase_of(b), -instance.duration(b));
  });

  const int m = instance.machine_count();
  detail::LayeredStates layers;
  layers.start(std::vector<Time>(m, 0));
  for (std::size_t step = 0; step < order.size(); ++step) {
    const JobRef job = order[step];
    const Time p = instance.duration(job);
    // Loads only grow along the order and deadlines never decrease, so
    // checking the receiving machine is the same as checking the maximum.
    const Time deadline = phases.phases[phases.phase_of(job)].deadline;
    layers.next_layer();
    for (std::size_t id : layers.layer(step)) {
      const std::vector<Time> loads = layers.loads(id);
      for (int slot = 0; slot < m; ++slot) {
        if (options.canonical_loads && slot > 0 && loads[slot] == loads[slot - 1]) continue;
        if (loads[slot] + p > deadline) {
          if (options.canonical_loads) break;
          continue;
        }
        auto next = loads;
        next[slot] += p;
        if (options.canonical_loads) detail::resort_after_increase(next, slot);
        layers.insert(std::move(next), id, slot, 0);
      }
      check_cap(layers, options, "makespan DP");
    }
    if (layers.layer(step + 1).empty()) throw InvalidArgument("no individually rational schedule for these local optima");
  }

  const auto& last = layers.layer(order.size());
  auto max_of = [&](std::size_t id) { return *std::max_element(layers.loads(id).begin(), layers.loads(id).end()); };
  std::size_t best = last.front();
  for (std::size_t id : last)
    if (max_of(id) < max_of(best)) best = id;

  OptResult result;
  result.value = m > 0 && !order.empty() ? max_of(best) : 0;
  result.proven_optimal = true;
  result.work = layers.total();
  result.schedule = Schedule(instance);
  const auto path = layers.path_to(best);
  std::vector<Time> physical(m, 0);
  for (std::size_t step = 0; step < order.size(); ++step) {
    const int slot = path[step].slot;
    const int machine = options.canonical_loads
                            ? detail::machine_with_load(physical, layers.loads(path[step].parent)[slot])
                            : slot;
    physical[machine] += instance.duration(order[step]);
    result.schedule[order[step]] = {machine, physical[machine]};
  }
  return result;
}

OptResult dp_sumc(const Instance& instance, const LocalOptima& local, const DpOptions& options) {
  const int m = instance.machine_count();
  const int k = instance.org_count();

  // (org, duration) classes; jobs inside a class are used in index order.
  struct Class {
    int org;
    Time duration;
    std::vector<int> jobs;
  };
  std::vector<Class> classes;
  {
    std::map<std::pair<int, Time>, int> index;
    for (const JobRef ref : instance.jobs()) {
      auto [it, fresh] = index.try_emplace({ref.org, instance.duration(ref)}, static_cast<int>(classes.size()));
      if (fresh) classes.push_back({ref.org, instance.duration(ref), {}});
      classes[it->second].jobs.push_back(ref.job);
    }
  }
  const int c_count = static_cast<int>(classes.size());
  const std::size_t t_offset = m;
  const std::size_t count_offset = m + k;

  detail::LayeredStates layers;
  layers.start(std::vector<Time>(m + k + c_count, 0));
  for (int step = 0; step < instance.job_count(); ++step) {
    layers.next_layer();
    for (std::size_t id : layers.layer(step)) {
      const std::vector<Time> key = layers.loads(id);
      for (int c = 0; c < c_count; ++c) {
        if (key[count_offset + c] == static_cast<Time>(classes[c].jobs.size())) continue;
        const int org = classes[c].org;
        for (int slot = 0; slot < m; ++slot) {
          if (options.canonical_loads && slot > 0 && key[slot] == key[slot - 1]) continue;
          const Time completion = key[slot] + classes[c].duration;
          if (key[t_offset + org] + completion > local.sumc[org]) {
            if (options.canonical_loads) break;
            continue;
          }
          auto next = key;
          next[slot] = completion;
          next[t_offset + org] += completion;
          next[count_offset + c] += 1;
          if (options.canonical_loads) detail::resort_after_increase(std::span<Time>(next.data(), m), slot);
          layers.insert(std::move(next), id, slot, c);
        }
      }
      check_cap(layers, options, "sum-of-completion-times DP");
    }
    if (layers.layer(step + 1).empty()) throw InvalidArgument("no individually rational schedule for these local optima");
  }

  auto total_of = [&](std::size_t id) {
    Time sum = 0;
    for (int i = 0; i < k; ++i) sum += layers.loads(id)[t_offset + i];
    return sum;
  };
  const auto& last = layers.layer(instance.job_count());
  std::size_t best = last.front();
  for (std::size_t id : last)
    if (total_of(id) < total_of(best)) best = id;

  OptResult result;
  result.value = total_of(best);
  result.proven_optimal = true;
  result.work = layers.total();
  result.schedule = Schedule(instance);
  const auto path = layers.path_to(best);
  std::vector<Time> physical(m, 0);
  std::vector<int> used(c_count, 0);
  for (const auto& link : path) {
    const Class& cls = classes[link.tag];
    const int machine = options.canonical_loads
                            ? detail::machine_with_load(physical, layers.loads(link.parent)[link.slot])
                            : link.slot;
    physical[machine] += cls.duration;
    result.schedule[{cls.org, cls.jobs[used[link.tag]++]}] = {machine, physical[machine]};
  }
  return result;
}

double estimate_sumc_states(const Instance& instance) {
  constexpr double kCeiling = 4.611686018427388e18;
  std::map<std::pair<int, Time>, int> counts;
  for (const JobRef ref : instance.jobs()) ++counts[{ref.org, instance.duration(ref)}];
  double estimate = 1.0;
  for (const auto& [_, c] : counts) estimate *= c + 1;
  // Sorted load vectors bounded by total load: about L^(m-1)/(m-1)!.
  const double load = static_cast<double>(instance.total_load()) + 1.0;
  const int m = std::min(instance.machine_count(), instance.job_count());
  for (int d = 1; d < m; ++d) estimate *= load / d;
  return std::min(estimate, kCeiling);
}

}  // namespace mosp
