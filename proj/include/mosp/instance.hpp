#ifndef MOSP_INSTANCE_HPP
#define MOSP_INSTANCE_HPP

#include <chrono>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace mosp {

/// Processing times and completion times share one integer time axis.
using Time = std::int64_t;

enum class ObjectiveKind { Makespan, SumCompletion };

std::string_view to_string(ObjectiveKind kind);
/// Accepts "makespan"/"cmax" and "sumc"/"sum-completion".
ObjectiveKind parse_objective(std::string_view text);

struct Organization {
  int machines = 1;
  std::vector<Time> jobs;

  bool operator==(const Organization&) const = default;
};

/// A job addressed by organization and position in that organization's job
/// list. Both indices are 0-based; files use 1-based indices.
struct JobRef {
  int org = 0;
  int job = 0;

  auto operator<=>(const JobRef&) const = default;
};

/// Organizations with their machines and jobs. Machines are numbered
/// globally in organization order; machine ownership never restricts where a
/// job may run.
class Instance {
 public:
  /// Throws ValidationError on an empty organization list, a machine count
  /// below one, a non-positive duration, or a total load that does not fit in
  /// a signed 64-bit integer.
  explicit Instance(std::vector<Organization> organizations);

  const std::vector<Organization>& organizations() const { return orgs_; }
  const Organization& organization(int org) const { return orgs_[org]; }

  int org_count() const { return static_cast<int>(orgs_.size()); }
  int machine_count() const { return machine_count_; }
  int job_count() const { return job_count_; }
  Time max_duration() const { return max_duration_; }
  int max_jobs_per_org() const;
  int max_machines_per_org() const;
  Time total_load() const { return total_load_; }

  Time duration(JobRef ref) const { return orgs_[ref.org].jobs[ref.job]; }
  /// Global index of the organization's first machine.
  int first_machine(int org) const { return first_machine_[org]; }
  /// All jobs in (org, job) order.
  std::vector<JobRef> jobs() const;
  std::vector<JobRef> jobs_of(int org) const;

  bool operator==(const Instance& other) const { return orgs_ == other.orgs_; }

 private:
  std::vector<Organization> orgs_;
  std::vector<int> first_machine_;
  int machine_count_ = 0;
  int job_count_ = 0;
  Time max_duration_ = 0;
  Time total_load_ = 0;
};

struct Placement {
  int machine = -1;  // global, 0-based; -1 while unassigned
  Time completion = 0;

  bool operator==(const Placement&) const = default;
};

/// Machine and completion time for every job of an instance.
class Schedule {
 public:
  Schedule() = default;
  /// Every job unassigned.
  explicit Schedule(const Instance& instance);

  Placement& operator[](JobRef ref) { return slots_[ref.org][ref.job]; }
  const Placement& operator[](JobRef ref) const { return slots_[ref.org][ref.job]; }

  int org_count() const { return static_cast<int>(slots_.size()); }
  int job_count(int org) const { return static_cast<int>(slots_[org].size()); }
  /// True when the schedule has one slot per job of `instance`.
  bool shaped_like(const Instance& instance) const;

  bool operator==(const Schedule&) const = default;

 private:
  std::vector<std::vector<Placement>> slots_;
};

/// Optimal local makespan and optimal local sum of completion times per
/// organization.
struct LocalOptima {
  std::vector<Time> makespan;
  std::vector<Time> sumc;

  Time bound(int org, ObjectiveKind kind) const {
    return kind == ObjectiveKind::Makespan ? makespan[org] : sumc[org];
  }
  bool operator==(const LocalOptima&) const = default;
};

/// Organizations grouped by equal optimal local makespan, ordered by
/// strictly increasing deadline.
struct PhasePartition {
  struct Phase {
    Time deadline = 0;
    std::vector<int> orgs;

    bool operator==(const Phase&) const = default;
  };

  std::vector<Phase> phases;
  std::vector<int> phase_of_org;

  int count() const { return static_cast<int>(phases.size()); }
  int phase_of(JobRef ref) const { return phase_of_org[ref.org]; }
  bool operator==(const PhasePartition&) const = default;
};

struct OptResult {
  Time value = 0;
  Schedule schedule;
  bool proven_optimal = false;
  /// Search nodes or DP states visited.
  std::uint64_t work = 0;
};

/// Resource limits shared by the exact solvers.
struct Limits {
  static constexpr std::uint64_t kDefaultNodeBudget = 100'000'000;

  std::uint64_t node_budget = kDefaultNodeBudget;
  std::optional<std::chrono::milliseconds> time_limit;

  /// Node budget from MOSP_NODE_BUDGET when set, else the default.
  static Limits from_environment();
};

}  // namespace mosp

#endif  // MOSP_INSTANCE_HPP
