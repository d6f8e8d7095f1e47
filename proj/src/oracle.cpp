#include "mosp/oracle.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <queue>
#include <tuple>

#include "arith.hpp"
#include "mosp/core.hpp"
#include "mosp/local.hpp"

namespace mosp {

namespace {

constexpr Time kInfinity = std::numeric_limits<Time>::max();

struct JobClass {
  int org = 0;
  Time duration = 0;
  int phase = 0;
  std::vector<int> jobs;
  int used = 0;

  int remaining() const { return static_cast<int>(jobs.size()) - used; }
};

// Schedules are generated chronologically: the open machine with the least
// load (lowest index on ties) either receives its next job or is closed for
// good. Every left-justified schedule arises this way.
class Search {
 public:
  Search(const Instance& instance, ObjectiveKind kind, const LocalOptima& local, const SearchOptions& options,
         std::optional<Time> target)
      : instance_(instance),
        kind_(kind),
        options_(options),
        target_(target),
        budget_(options.limits),
        best_schedule_(instance),
        current_(instance) {
    const int m = instance.machine_count();
    loads_.assign(m, 0);
    open_.assign(m, 1);
    last_class_.assign(m, -1);
    min_class_.assign(m, 0);
    org_acc_.assign(instance.org_count(), 0);
    open_count_ = m;
    remaining_jobs_ = instance.job_count();
    remaining_load_ = instance.total_load();

    for (int i = 0; i < instance.org_count(); ++i) {
      Time limit = local.bound(i, kind);
      if (kind == ObjectiveKind::Makespan && target) limit = std::min(limit, *target);
      org_limit_.push_back(limit);
    }
    build_classes(local);
  }

  void seed_incumbent(const Schedule& schedule) {
    best_ = objective_value(instance_, schedule, kind_);
    best_schedule_ = schedule;
    have_best_ = true;
  }

  void run() { dfs(); }

  bool have_best() const { return have_best_; }
  Time best() const { return best_; }
  const Schedule& best_schedule() const { return best_schedule_; }
  std::uint64_t work() const { return budget_.used(); }

 private:
  void build_classes(const LocalOptima& local) {
    const PhasePartition phases = compute_phases(instance_, local);
    std::map<std::tuple<int, Time, int>, int> index;
    for (const JobRef ref : instance_.jobs()) {
      const Time p = instance_.duration(ref);
      const int phase = phases.phase_of(ref);
      // Key sorts classes: makespan by (phase, longest first), sumc by
      // shortest first; org and job index break ties.
      const auto key = kind_ == ObjectiveKind::Makespan ? std::tuple(phase, -p, ref.org) : std::tuple(0, p, ref.org);
      if (!options_.symmetry_pruning) {
        classes_.push_back({ref.org, p, phase, {ref.job}});
        continue;
      }
      auto [it, fresh] = index.try_emplace(key, static_cast<int>(classes_.size()));
      if (fresh) classes_.push_back({ref.org, p, phase, {}});
      classes_[it->second].jobs.push_back(ref.job);
    }
    std::stable_sort(classes_.begin(), classes_.end(), [&](const JobClass& a, const JobClass& b) {
      if (kind_ == ObjectiveKind::Makespan) return std::tuple(a.phase, -a.duration, a.org) < std::tuple(b.phase, -b.duration, b.org);
      return std::tuple(a.duration, a.org) < std::tuple(b.duration, b.org);
    });
    org_classes_.assign(instance_.org_count(), {});
    for (int c = 0; c < static_cast<int>(classes_.size()); ++c) org_classes_[classes_[c].org].push_back(c);
  }

  bool decision() const { return target_.has_value(); }

  int next_machine() const {
    int best = -1;
    for (int d = 0; d < static_cast<int>(loads_.size()); ++d)
      if (open_[d] && (best < 0 || loads_[d] < loads_[best])) best = d;
    return best;
  }

  bool tied(int d, int e, Time load, int last) const {
    return e != d && open_[e] && loads_[e] == load && (kind_ == ObjectiveKind::SumCompletion || last_class_[e] == last);
  }

  // Minimum sum of completion times of the remaining jobs in `class_ids`
  // (ascending duration) on the open machines; SPT is optimal when machines
  // become available at different times.
  Time spt_bound(const std::vector<int>& class_ids) const {
    std::priority_queue<Time, std::vector<Time>, std::greater<>> heap;
    for (int d = 0; d < static_cast<int>(loads_.size()); ++d)
      if (open_[d]) heap.push(loads_[d]);
    Time total = 0;
    for (int c : class_ids) {
      for (int r = classes_[c].remaining(); r > 0; --r) {
        const Time done = heap.top() + classes_[c].duration;
        heap.pop();
        heap.push(done);
        total += done;
      }
    }
    return total;
  }

  Time limit() const {
    if (decision()) return *target_;
    return have_best_ ? best_ - 1 : kInfinity;
  }

  bool bound_ok(int d) const {
    const Time start = loads_[d];
    if (kind_ == ObjectiveKind::Makespan) {
      Time open_sum = 0;
      for (int e = 0; e < static_cast<int>(loads_.size()); ++e)
        if (open_[e]) open_sum += loads_[e];
      Time lower = std::max(current_value_, detail::ceil_div(open_sum + remaining_load_, open_count_));
      for (const auto& cls : classes_) {
        if (cls.remaining() == 0) continue;
        if (start + cls.duration > org_limit_[cls.org]) return false;
        lower = std::max(lower, start + cls.duration);
      }
      return lower <= limit();
    }
    if (current_value_ + spt_bound(all_classes()) > limit()) return false;
    for (int i = 0; i < instance_.org_count(); ++i) {
      if (org_acc_[i] + spt_bound(org_classes_[i]) > org_limit_[i]) return false;
    }
    return true;
  }

  const std::vector<int>& all_classes() const {
    if (all_ids_.size() != classes_.size()) {
      all_ids_.resize(classes_.size());
      for (int c = 0; c < static_cast<int>(classes_.size()); ++c) all_ids_[c] = c;
    }
    return all_ids_;
  }

  void leaf() {
    const Time value = current_value_;
    if (decision()) {
      if (value <= *target_) {
        best_ = value;
        best_schedule_ = current_;
        have_best_ = true;
        stop_ = true;
      }
      return;
    }
    if (!have_best_ || value < best_) {
      best_ = value;
      best_schedule_ = current_;
      have_best_ = true;
    }
  }

  void dfs() {
    if (remaining_jobs_ == 0) {
      leaf();
      return;
    }
    if (!budget_.tick()) {
      std::optional<OptResult> incumbent;
      if (have_best_) incumbent = OptResult{best_, best_schedule_, false, budget_.used()};
      throw BudgetExceeded("exact search exhausted its node budget", std::move(incumbent));
    }
    const int d = next_machine();
    if (d < 0 || !bound_ok(d)) return;

    const Time load = loads_[d];
    const int last = last_class_[d];
    const bool makespan = kind_ == ObjectiveKind::Makespan;
    const int first = options_.symmetry_pruning ? min_class_[d] : 0;

    for (int c = first; c < static_cast<int>(classes_.size()) && !stop_; ++c) {
      JobClass& cls = classes_[c];
      if (cls.remaining() == 0) continue;
      if (makespan && last >= 0) {
        // Well-ordered by phase; within a phase only the assignment matters.
        if (options_.symmetry_pruning ? c < last : cls.phase < classes_[last].phase) continue;
      }
      const Time completion = load + cls.duration;
      if (makespan) {
        if (completion > org_limit_[cls.org] || completion > limit()) continue;
      } else if (org_acc_[cls.org] + completion > org_limit_[cls.org]) {
        continue;
      }

      const JobRef ref{cls.org, cls.jobs[cls.used]};
      ++cls.used;
      --remaining_jobs_;
      remaining_load_ -= cls.duration;
      current_[ref] = {d, completion};
      const Time saved_acc = org_acc_[cls.org];
      const Time saved_value = current_value_;
      const int saved_min = min_class_[d];
      org_acc_[cls.org] = makespan ? std::max(saved_acc, completion) : saved_acc + completion;
      current_value_ = makespan ? std::max(saved_value, completion) : saved_value + completion;
      loads_[d] = completion;
      last_class_[d] = c;
      min_class_[d] = 0;

      int partner = -1;
      int partner_min = 0;
      if (options_.symmetry_pruning) {
        for (int e = d + 1; e < static_cast<int>(loads_.size()); ++e) {
          if (tied(d, e, load, last)) {
            partner = e;
            partner_min = min_class_[e];
            min_class_[e] = std::max(min_class_[e], c);
            break;
          }
        }
      }

      dfs();

      if (partner >= 0) min_class_[partner] = partner_min;
      min_class_[d] = saved_min;
      last_class_[d] = last;
      loads_[d] = load;
      current_value_ = saved_value;
      org_acc_[cls.org] = saved_acc;
      current_[ref] = {};
      remaining_load_ += cls.duration;
      ++remaining_jobs_;
      --cls.used;
    }
    if (stop_) return;

    // Close d; an empty future sorts after every job, so machines tied with d
    // close with it.
    std::vector<int> closed{d};
    if (options_.symmetry_pruning) {
      for (int e = d + 1; e < static_cast<int>(loads_.size()); ++e)
        if (tied(d, e, load, last)) closed.push_back(e);
    }
    if (open_count_ > static_cast<int>(closed.size())) {
      for (int e : closed) open_[e] = 0;
      open_count_ -= static_cast<int>(closed.size());
      dfs();
      open_count_ += static_cast<int>(closed.size());
      for (int e : closed) open_[e] = 1;
    }
  }

  const Instance& instance_;
  ObjectiveKind kind_;
  const SearchOptions& options_;
  std::optional<Time> target_;
  detail::Budget budget_;

  std::vector<JobClass> classes_;
  std::vector<std::vector<int>> org_classes_;
  mutable std::vector<int> all_ids_;
  std::vector<Time> org_limit_;

  std::vector<Time> loads_;
  std::vector<char> open_;
  std::vector<int> last_class_;
  std::vector<int> min_class_;
  std::vector<Time> org_acc_;
  int open_count_ = 0;
  int remaining_jobs_ = 0;
  Time remaining_load_ = 0;
  Time current_value_ = 0;

  bool have_best_ = false;
  bool stop_ = false;
  Time best_ = 0;
  Schedule best_schedule_;
  Schedule current_;
};

}  // namespace

OptResult solve_exact(const Instance& instance, ObjectiveKind kind, const LocalOptima& local,
                      const SearchOptions& options) {
  Search search(instance, kind, local, options, std::nullopt);
  const Schedule fallback = left_justify(instance, local_union_schedule(instance, kind));
  if (is_individually_rational(instance, fallback, kind, local)) search.seed_incumbent(fallback);
  search.run();
  if (!search.have_best()) throw InvalidArgument("no individually rational schedule exists for the given local optima");
  return {search.best(), search.best_schedule(), true, search.work()};
}

std::optional<Schedule> find_within(const Instance& instance, ObjectiveKind kind, const LocalOptima& local,
                                    Time target, const SearchOptions& options) {
  Search search(instance, kind, local, options, target);
  search.run();
  if (!search.have_best()) return std::nullopt;
  return search.best_schedule();
}

bool decide(const Instance& instance, ObjectiveKind kind, const LocalOptima& local, Time target,
            const SearchOptions& options) {
  return find_within(instance, kind, local, target, options).has_value();
}

}  // namespace mosp
