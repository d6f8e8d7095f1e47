#include "mosp/core.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <tuple>

#include "mosp/errors.hpp"

namespace mosp {

namespace {

std::string job_name(JobRef ref) {
  return "job (" + std::to_string(ref.org + 1) + ", " + std::to_string(ref.job + 1) + ")";
}

}  // namespace

void validate_schedule(const Instance& instance, const Schedule& schedule) {
  if (!schedule.shaped_like(instance)) {
    throw MalformedScheduleError("schedule does not cover exactly the jobs of the instance");
  }
  for (const JobRef ref : instance.jobs()) {
    const Placement& p = schedule[ref];
    if (p.machine < 0 || p.machine >= instance.machine_count()) {
      throw MalformedScheduleError(job_name(ref) + " has machine index out of range");
    }
  }
}

std::vector<std::vector<JobRef>> machine_sequences(const Instance& instance, const Schedule& schedule) {
  validate_schedule(instance, schedule);
  std::vector<std::vector<JobRef>> seqs(instance.machine_count());
  for (const JobRef ref : instance.jobs()) seqs[schedule[ref].machine].push_back(ref);
  for (auto& seq : seqs) {
    std::sort(seq.begin(), seq.end(), [&](JobRef a, JobRef b) {
      const Time ca = schedule[a].completion, cb = schedule[b].completion;
      return std::tuple(ca - instance.duration(a), ca, a) < std::tuple(cb - instance.duration(b), cb, b);
    });
  }
  return seqs;
}

bool check_feasible(const Instance& instance, const Schedule& schedule) {
  const auto seqs = machine_sequences(instance, schedule);
  for (const auto& seq : seqs) {
    Time busy_until = 0;
    for (const JobRef ref : seq) {
      const Time completion = schedule[ref].completion;
      const Time start = completion - instance.duration(ref);
      if (start < 0 || start < busy_until) return false;
      busy_until = completion;
    }
  }
  return true;
}

Time objective_value(const Schedule& schedule, std::span<const JobRef> jobs, ObjectiveKind kind) {
  Time value = 0;
  for (const JobRef ref : jobs) {
    const Time c = schedule[ref].completion;
    value = kind == ObjectiveKind::Makespan ? std::max(value, c) : value + c;
  }
  return value;
}

Time objective_value(const Instance& instance, const Schedule& schedule, ObjectiveKind kind) {
  const auto all = instance.jobs();
  return objective_value(schedule, all, kind);
}

Time org_objective(const Instance& instance, const Schedule& schedule, int org, ObjectiveKind kind) {
  const auto own = instance.jobs_of(org);
  return objective_value(schedule, own, kind);
}

bool is_individually_rational(const Instance& instance, const Schedule& schedule, ObjectiveKind kind,
                              const LocalOptima& local) {
  for (int i = 0; i < instance.org_count(); ++i) {
    if (org_objective(instance, schedule, i, kind) > local.bound(i, kind)) return false;
  }
  return true;
}

PhasePartition compute_phases(const Instance& instance, const LocalOptima& local) {
  std::map<Time, std::vector<int>> groups;
  for (int i = 0; i < instance.org_count(); ++i) groups[local.makespan[i]].push_back(i);
  PhasePartition out;
  out.phase_of_org.assign(instance.org_count(), 0);
  for (auto& [deadline, orgs] : groups) {
    for (int org : orgs) out.phase_of_org[org] = out.count();
    out.phases.push_back({deadline, std::move(orgs)});
  }
  return out;
}

Schedule schedule_from_sequences(const Instance& instance, const std::vector<std::vector<JobRef>>& sequences) {
  Schedule out(instance);
  for (int m = 0; m < static_cast<int>(sequences.size()); ++m) {
    Time t = 0;
    for (const JobRef ref : sequences[m]) {
      t += instance.duration(ref);
      out[ref] = {m, t};
    }
  }
  return out;
}

Schedule well_order(const Instance& instance, const Schedule& schedule, const PhasePartition& phases) {
  if (!check_feasible(instance, schedule)) throw InvalidArgument("well_order needs a feasible schedule");
  Schedule out = schedule;
  auto seqs = machine_sequences(instance, schedule);
  for (auto& seq : seqs) {
    // Bubble sort by phase; each swap is one exchange step: the earlier-phase
    // job moves to the front of the pair's envelope, the later-phase job to
    // its back.
    for (std::size_t pass = 0; pass < seq.size(); ++pass) {
      bool swapped = false;
      for (std::size_t k = 0; k + 1 < seq.size(); ++k) {
        const JobRef a = seq[k], b = seq[k + 1];
        if (phases.phase_of(a) <= phases.phase_of(b)) continue;
        const Time start = out[a].completion - instance.duration(a);
        const Time end = out[b].completion;
        out[b].completion = start + instance.duration(b);
        out[a].completion = end;
        std::swap(seq[k], seq[k + 1]);
        swapped = true;
      }
      if (!swapped) break;
    }
  }
  return out;
}

Schedule left_justify(const Instance& instance, const Schedule& schedule) {
  const auto seqs = machine_sequences(instance, schedule);
  return schedule_from_sequences(instance, seqs);
}

}  // namespace mosp
