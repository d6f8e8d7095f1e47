#include "mosp/local.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "arith.hpp"
#include "load_vector.hpp"
#include "mosp/errors.hpp"

namespace mosp {

Time LocalSchedule::makespan() const {
  Time out = 0;
  for (const auto& p : placements) out = std::max(out, p.completion);
  return out;
}

Time LocalSchedule::sum_completion() const {
  Time out = 0;
  for (const auto& p : placements) out += p.completion;
  return out;
}

namespace {

/// Stable order of job indices by duration; descending puts long jobs first.
std::vector<int> order_by_duration(std::span<const Time> jobs, bool descending) {
  std::vector<int> order(jobs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return descending ? jobs[a] > jobs[b] : jobs[a] < jobs[b];
  });
  return order;
}

/// List scheduling in the given order onto the least-loaded machine.
LocalSchedule list_schedule(int machine_count, std::span<const Time> jobs, const std::vector<int>& order) {
  LocalSchedule out;
  out.placements.resize(jobs.size());
  std::vector<Time> loads(machine_count, 0);
  for (int j : order) {
    const int m = static_cast<int>(std::min_element(loads.begin(), loads.end()) - loads.begin());
    loads[m] += jobs[j];
    out.placements[j] = {m, loads[m]};
  }
  return out;
}

}  // namespace

LocalMakespanResult opt_local_makespan(int machine_count, std::span<const Time> jobs,
                                       const LocalDpOptions& options) {
  if (machine_count < 1) throw InvalidArgument("machine count must be at least 1");
  LocalMakespanResult result;
  if (jobs.empty()) return result;

  const auto order = order_by_duration(jobs, /*descending=*/true);
  const Time total = std::accumulate(jobs.begin(), jobs.end(), Time{0});
  const Time lower = std::max(jobs[order.front()], detail::ceil_div(total, machine_count));
  LocalSchedule lpt = list_schedule(machine_count, jobs, order);
  const Time upper = lpt.makespan();
  if (static_cast<std::size_t>(machine_count) >= jobs.size() || (options.bound_shortcut && upper == lower)) {
    result.value = upper;
    result.schedule = std::move(lpt);
    result.states = 1;
    return result;
  }

  // Layer j holds the distinct sorted load vectors reachable after placing
  // the first j jobs of `order`; loads above the LPT value can never finish
  // below it and are dropped.
  detail::LayeredStates layers;
  layers.start(std::vector<Time>(machine_count, 0));
  for (std::size_t step = 0; step < order.size(); ++step) {
    const Time p = jobs[order[step]];
    layers.next_layer();
    const auto& prev = layers.layer(step);
    for (std::size_t s = 0; s < prev.size(); ++s) {
      const auto& loads = layers.loads(prev[s]);
      for (int slot = 0; slot < machine_count; ++slot) {
        if (slot > 0 && loads[slot] == loads[slot - 1]) continue;
        if (loads[slot] + p > upper) break;
        auto next = loads;
        next[slot] += p;
        detail::resort_after_increase(next, slot);
        layers.insert(std::move(next), prev[s], slot, 0);
      }
      if (layers.total() > options.state_cap) {
        throw ResourceError("local makespan DP exceeded its state cap");
      }
    }
  }
  result.states = layers.total();

  const auto& last = layers.layer(order.size());
  std::size_t best = last.front();
  for (std::size_t id : last)
    if (layers.loads(id).back() < layers.loads(best).back()) best = id;
  result.value = layers.loads(best).back();

  const auto path = layers.path_to(best);
  std::vector<Time> physical(machine_count, 0);
  result.schedule.placements.resize(jobs.size());
  for (std::size_t step = 0; step < order.size(); ++step) {
    const int m = detail::machine_with_load(physical, layers.loads(path[step].parent)[path[step].slot]);
    physical[m] += jobs[order[step]];
    result.schedule.placements[order[step]] = {m, physical[m]};
  }
  return result;
}

LocalSchedule spt_schedule(int machine_count, std::span<const Time> jobs) {
  if (machine_count < 1) throw InvalidArgument("machine count must be at least 1");
  return list_schedule(machine_count, jobs, order_by_duration(jobs, /*descending=*/false));
}

LocalOptima compute_local_optima(const Instance& instance, const LocalDpOptions& options) {
  LocalOptima out;
  for (const auto& org : instance.organizations()) {
    out.makespan.push_back(opt_local_makespan(org.machines, org.jobs, options).value);
    out.sumc.push_back(spt_schedule(org.machines, org.jobs).sum_completion());
  }
  return out;
}

Schedule local_union_schedule(const Instance& instance, ObjectiveKind kind, const LocalDpOptions& options) {
  Schedule out(instance);
  for (int i = 0; i < instance.org_count(); ++i) {
    const auto& org = instance.organization(i);
    const LocalSchedule local = kind == ObjectiveKind::Makespan
                                    ? opt_local_makespan(org.machines, org.jobs, options).schedule
                                    : spt_schedule(org.machines, org.jobs);
    for (int j = 0; j < static_cast<int>(org.jobs.size()); ++j) {
      out[{i, j}] = {instance.first_machine(i) + local.placements[j].machine, local.placements[j].completion};
    }
  }
  return out;
}

}  // namespace mosp
