#ifndef MOSP_LOCAL_HPP
#define MOSP_LOCAL_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "mosp/instance.hpp"

namespace mosp {

/// Schedule of one organization's jobs on its own machines; machine indices
/// are local (0 .. machine_count-1) and placements follow the job list order.
struct LocalSchedule {
  std::vector<Placement> placements;

  Time makespan() const;
  Time sum_completion() const;
};

struct LocalDpOptions {
  std::size_t state_cap = 20'000'000;
  /// Return the LPT schedule directly when it meets the trivial lower bound
  /// max(pmax, ceil(load / machines)).
  bool bound_shortcut = true;
};

struct LocalMakespanResult {
  Time value = 0;
  LocalSchedule schedule;
  std::uint64_t states = 0;
};

/// Minimum makespan of `jobs` on `machine_count` identical machines, via a
/// reachable-set DP over sorted machine-load vectors. Throws ResourceError past
/// the state cap.
LocalMakespanResult opt_local_makespan(int machine_count, std::span<const Time> jobs,
                                       const LocalDpOptions& options = {});

/// Shortest-processing-time list schedule (equal durations by job index,
/// equal loads by machine index). Minimizes the sum of completion times.
LocalSchedule spt_schedule(int machine_count, std::span<const Time> jobs);

LocalOptima compute_local_optima(const Instance& instance, const LocalDpOptions& options = {});

/// Each organization's optimal local schedule for `kind`, placed on its own
/// machines. Always feasible and individually rational.
Schedule local_union_schedule(const Instance& instance, ObjectiveKind kind, const LocalDpOptions& options = {});

}  // namespace mosp

#endif  // MOSP_LOCAL_HPP
