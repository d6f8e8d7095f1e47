#ifndef MOSP_CORE_HPP
#define MOSP_CORE_HPP

#include <span>
#include <vector>

#include "mosp/instance.hpp"

namespace mosp {

/// Throws MalformedScheduleError unless every job of `instance` is assigned a
/// machine in range.
void validate_schedule(const Instance& instance, const Schedule& schedule);

/// Every job completes no earlier than its duration and no two jobs on the
/// same machine overlap in time (back-to-back is allowed).
bool check_feasible(const Instance& instance, const Schedule& schedule);

/// Max (Makespan) or sum (SumCompletion) of completion times over `jobs`;
/// 0 for an empty set.
Time objective_value(const Schedule& schedule, std::span<const JobRef> jobs, ObjectiveKind kind);
Time objective_value(const Instance& instance, const Schedule& schedule, ObjectiveKind kind);
Time org_objective(const Instance& instance, const Schedule& schedule, int org, ObjectiveKind kind);

/// No organization does worse than its optimal local value for `kind`.
bool is_individually_rational(const Instance& instance, const Schedule& schedule, ObjectiveKind kind,
                              const LocalOptima& local);

PhasePartition compute_phases(const Instance& instance, const LocalOptima& local);

/// Jobs of each machine ordered by start time (ties by completion, then job).
std::vector<std::vector<JobRef>> machine_sequences(const Instance& instance, const Schedule& schedule);

/// Left-justified schedule running each machine's jobs back to back in the
/// given order.
Schedule schedule_from_sequences(const Instance& instance, const std::vector<std::vector<JobRef>>& sequences);

/// Swaps adjacent same-machine jobs that appear out of phase order until every
/// machine runs its jobs in non-decreasing phase. Completion times of other
/// jobs are untouched; the swapped pair keeps its outer envelope.
/// Throws InvalidArgument when `schedule` is not feasible.
Schedule well_order(const Instance& instance, const Schedule& schedule, const PhasePartition& phases);

/// Removes idle time while keeping each machine's job order.
Schedule left_justify(const Instance& instance, const Schedule& schedule);

}  // namespace mosp

#endif  // MOSP_CORE_HPP
