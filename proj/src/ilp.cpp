#include "mosp/ilp.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "arith.hpp"
#include "mosp/core.hpp"
#include "mosp/errors.hpp"

namespace mosp {

// ---------------------------------------------------------------------------
// IntegerProgram

int IntegerProgram::add_variable(std::string name, std::int64_t lower, std::int64_t upper) {
  variables.push_back({std::move(name), lower, upper});
  return static_cast<int>(variables.size()) - 1;
}

void IntegerProgram::add_constraint(std::vector<Term> terms, Relation relation, std::int64_t rhs, std::string label) {
  for (const Term& term : terms) {
    if (term.var < 0 || term.var >= static_cast<int>(variables.size())) {
      throw InvalidArgument("constraint '" + label + "' references undeclared variable " + std::to_string(term.var));
    }
  }
  constraints.push_back({std::move(terms), relation, rhs, std::move(label)});
}

namespace {

using Wide = __int128;

Wide floor_div(Wide n, Wide d) {
  Wide q = n / d;
  if (n % d != 0 && ((n < 0) != (d < 0))) --q;
  return q;
}
Wide ceil_div(Wide n, Wide d) { return -floor_div(-n, d); }

std::int64_t clamp64(Wide v) {
  constexpr Wide lo = std::numeric_limits<std::int64_t>::min();
  constexpr Wide hi = std::numeric_limits<std::int64_t>::max();
  return static_cast<std::int64_t>(std::clamp(v, lo, hi));
}

class IpSolver {
 public:
  IpSolver(const IntegerProgram& program, const IpOptions& options) : options_(options) {
    const int n = static_cast<int>(program.variables.size());
    for (const auto& var : program.variables) {
      lo_.push_back(var.lower);
      hi_.push_back(var.upper);
    }
    rows_of_var_.assign(n, {});
    for (const auto& c : program.constraints) {
      for (const auto& t : c.terms) {
        if (t.var < 0 || t.var >= n) throw InvalidArgument("constraint '" + c.label + "' references an undeclared variable");
      }
      add_row(c.terms, c.relation == IntegerProgram::Relation::Equal, c.rhs);
    }
    if (!program.objective.empty()) {
      for (const auto& t : program.objective) {
        if (t.var < 0 || t.var >= n) throw InvalidArgument("objective references an undeclared variable");
      }
      objective_row_ = static_cast<int>(rows_.size());
      add_row(program.objective, false, std::numeric_limits<std::int64_t>::max());
    }
    in_queue_.assign(rows_.size(), 0);
  }

  IpResult run() {
    IpResult result;
    for (std::size_t v = 0; v < lo_.size(); ++v)
      if (lo_[v] > hi_[v]) return finish(result);
    std::vector<int> all(rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r) all[r] = static_cast<int>(r);
    if (propagate(all)) dfs();
    return finish(result);
  }

 private:
  struct Row {
    std::vector<IntegerProgram::Term> terms;
    bool equal = false;
    std::int64_t rhs = 0;
  };
  struct Saved {
    int var;
    std::int64_t lo, hi;
  };

  void add_row(const std::vector<IntegerProgram::Term>& terms, bool equal, std::int64_t rhs) {
    const int r = static_cast<int>(rows_.size());
    rows_.push_back({terms, equal, rhs});
    for (const auto& t : terms) rows_of_var_[t.var].push_back(r);
  }

  IpResult& finish(IpResult& result) {
    result.feasible = found_;
    result.values = best_;
    result.objective = best_objective_;
    result.nodes = nodes_;
    return result;
  }

  bool tighten(int var, Wide lo, Wide hi, std::vector<int>& queue) {
    const std::int64_t new_lo = std::max(lo_[var], clamp64(lo));
    const std::int64_t new_hi = std::min(hi_[var], clamp64(hi));
    if (new_lo == lo_[var] && new_hi == hi_[var]) return true;
    trail_.push_back({var, lo_[var], hi_[var]});
    lo_[var] = new_lo;
    hi_[var] = new_hi;
    if (new_lo > new_hi) return false;
    for (int r : rows_of_var_[var]) {
      if (!in_queue_[r]) {
        in_queue_[r] = 1;
        queue.push_back(r);
      }
    }
    return true;
  }

  bool propagate(std::vector<int> queue) {
    for (int r : queue) in_queue_[r] = 1;
    bool ok = true;
    while (ok && !queue.empty()) {
      const int r = queue.back();
      queue.pop_back();
      in_queue_[r] = 0;
      ok = propagate_row(r, queue);
    }
    for (int r : queue) in_queue_[r] = 0;
    return ok;
  }

  bool propagate_row(int r, std::vector<int>& queue) {
    const Row& row = rows_[r];
    Wide min_act = 0, max_act = 0;
    for (const auto& t : row.terms) {
      const Wide a = t.coef;
      min_act += a > 0 ? a * lo_[t.var] : a * hi_[t.var];
      max_act += a > 0 ? a * hi_[t.var] : a * lo_[t.var];
    }
    const Wide rhs = row.rhs;
    if (min_act > rhs) return false;
    if (row.equal && max_act < rhs) return false;
    for (const auto& t : row.terms) {
      const Wide a = t.coef;
      if (a == 0) continue;
      const Wide lo = lo_[t.var], hi = hi_[t.var];
      Wide new_lo = lo, new_hi = hi;
      // Upper side: a*x <= rhs - (min activity of the other terms).
      const Wide up = rhs - (min_act - (a > 0 ? a * lo : a * hi));
      if (a > 0) new_hi = std::min(new_hi, floor_div(up, a));
      else new_lo = std::max(new_lo, ceil_div(up, a));
      if (row.equal) {
        const Wide down = rhs - (max_act - (a > 0 ? a * hi : a * lo));
        if (a > 0) new_lo = std::max(new_lo, ceil_div(down, a));
        else new_hi = std::min(new_hi, floor_div(down, a));
      }
      if (new_lo != lo || new_hi != hi) {
        if (!tighten(t.var, new_lo, new_hi, queue)) return false;
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      const Saved s = trail_.back();
      trail_.pop_back();
      lo_[s.var] = s.lo;
      hi_[s.var] = s.hi;
    }
  }

  // Unfixed variable from the equality row with the fewest unfixed
  // variables; any unfixed variable when no such row remains.
  int pick_variable() const {
    int best_var = -1;
    std::size_t best_free = std::numeric_limits<std::size_t>::max();
    for (const Row& row : rows_) {
      if (!row.equal) continue;
      std::size_t free = 0;
      int first = -1;
      for (const auto& t : row.terms) {
        if (lo_[t.var] != hi_[t.var]) {
          ++free;
          if (first < 0) first = t.var;
        }
      }
      if (free > 0 && free < best_free) {
        best_free = free;
        best_var = first;
        if (free == 1) break;
      }
    }
    if (best_var >= 0) return best_var;
    for (std::size_t v = 0; v < lo_.size(); ++v)
      if (lo_[v] != hi_[v]) return static_cast<int>(v);
    return -1;
  }

  void record_solution() {
    Wide value = 0;
    if (objective_row_ >= 0) {
      for (const auto& t : rows_[objective_row_].terms) value += Wide(t.coef) * lo_[t.var];
    }
    found_ = true;
    best_ = lo_;
    best_objective_ = clamp64(value);
    if (objective_row_ >= 0) rows_[objective_row_].rhs = best_objective_ - 1;
  }

  // Returns true to stop the search.
  bool dfs() {
    if (++nodes_ > options_.node_limit) throw ResourceError("integer program search exceeded its node limit");
    const int var = pick_variable();
    if (var < 0) {
      record_solution();
      return objective_row_ < 0;
    }
    for (std::int64_t value = hi_[var]; value >= lo_[var]; --value) {
      const std::size_t mark = trail_.size();
      std::vector<int> queue;
      bool ok = tighten(var, value, value, queue);
      if (ok && objective_row_ >= 0 && !in_queue_[objective_row_]) {
        in_queue_[objective_row_] = 1;
        queue.push_back(objective_row_);
      }
      for (int r : queue) in_queue_[r] = 0;
      if (ok) ok = propagate(std::move(queue));
      const bool stop = ok && dfs();
      undo(mark);
      if (stop) return true;
    }
    return false;
  }

  const IpOptions& options_;
  std::vector<Row> rows_;
  std::vector<std::vector<int>> rows_of_var_;
  std::vector<char> in_queue_;
  std::vector<std::int64_t> lo_, hi_;
  std::vector<Saved> trail_;
  int objective_row_ = -1;
  std::uint64_t nodes_ = 0;
  bool found_ = false;
  std::vector<std::int64_t> best_;
  std::int64_t best_objective_ = 0;
};

}  // namespace

IpResult solve_ip(const IntegerProgram& program, const IpOptions& options) {
  return IpSolver(program, options).run();
}

// ---------------------------------------------------------------------------
// Phase layout and configurations

std::int64_t deviation_bound(std::int64_t pmax) {
  if (pmax < 1) throw InvalidArgument("deviation bound needs pmax >= 1");
  const char* what = "deviation bound";
  Time factorial = 1;
  for (Time i = 2; i <= pmax + 1; ++i) factorial = detail::checked_mul(factorial, i, what);
  const Time cube = detail::checked_mul(detail::checked_mul(pmax, pmax, what), pmax, what);
  const Time g = detail::checked_add(detail::checked_mul(3, cube, what), 2 * pmax, what);
  return detail::checked_mul(factorial / 2, g, what);
}

int PhaseLayout::count_lo(int phase, int t) const {
  const int n = job_counts[phase][t - 1];
  if (!deviation) return 0;
  const Time base = n / machines;
  return static_cast<int>(std::max<Time>(0, base - *deviation));
}

int PhaseLayout::count_hi(int phase, int t) const {
  const int n = job_counts[phase][t - 1];
  if (!deviation) return n;
  const Time base = n / machines;
  return static_cast<int>(std::min<Time>(n, detail::checked_add(base, *deviation)));
}

PhaseLayout make_phase_layout(const Instance& instance, const PhasePartition& phases, Time target,
                              std::optional<std::int64_t> deviation_override) {
  PhaseLayout layout;
  layout.target = target;
  layout.machines = instance.machine_count();
  layout.pmax = static_cast<int>(instance.max_duration());
  const Time p = layout.pmax;
  layout.slack = detail::checked_add(detail::checked_mul(detail::checked_mul(p, p), p), p, "window slack");
  if (deviation_override) {
    if (*deviation_override < 0) throw InvalidArgument("deviation override must be non-negative");
    layout.deviation = deviation_override;
  } else if (p >= 1) {
    try {
      layout.deviation = deviation_bound(p);
    } catch (const OverflowError&) {
      layout.deviation.reset();
    }
  }

  layout.phase_of_org.assign(instance.org_count(), 0);
  for (const auto& phase : phases.phases) {
    const bool merged = phase.deadline >= target;
    if (!merged || layout.deadlines.empty() || layout.deadlines.back() != target) {
      layout.deadlines.push_back(std::min(phase.deadline, target));
      layout.orgs.emplace_back();
    }
    for (int org : phase.orgs) {
      layout.orgs.back().push_back(org);
      layout.phase_of_org[org] = layout.count() - 1;
    }
  }

  const int b_count = layout.count();
  const Time m = layout.machines;
  layout.job_counts.assign(b_count, std::vector<int>(layout.pmax, 0));
  layout.cumulative_load.assign(b_count, 0);
  for (const JobRef ref : instance.jobs()) {
    const int b = layout.phase_of_org[ref.org];
    ++layout.job_counts[b][instance.duration(ref) - 1];
    layout.cumulative_load[b] += instance.duration(ref);
  }
  for (int b = 1; b < b_count; ++b) layout.cumulative_load[b] += layout.cumulative_load[b - 1];

  const Time spread = detail::checked_mul(layout.slack, m, "window slack");
  auto lower = [&](Time load) { return std::max<Time>(0, detail::floor_div(load - spread, m)); };
  auto upper = [&](Time load) { return detail::ceil_div(detail::checked_add(load, spread), m); };
  for (int b = 0; b < b_count; ++b) {
    PhaseLayout::Window w;
    if (b > 0) {
      w.start_lo = lower(layout.cumulative_load[b - 1]);
      w.start_hi = std::min(upper(layout.cumulative_load[b - 1]), layout.deadlines[b - 1]);
    }
    w.end_lo = lower(layout.cumulative_load[b]);
    w.end_hi = std::min(upper(layout.cumulative_load[b]), layout.deadlines[b]);
    layout.windows.push_back(w);
  }
  return layout;
}

std::vector<PhaseConfig> enumerate_configs(const Instance& instance, const PhasePartition& phases, Time target,
                                           const ConfigOptions& options) {
  const PhaseLayout layout = make_phase_layout(instance, phases, target, options.deviation_override);
  const int pmax = layout.pmax;
  std::vector<PhaseConfig> out;

  for (int b = 0; b < layout.count(); ++b) {
    const auto& w = layout.windows[b];
    std::vector<int> lo(pmax + 1), hi(pmax + 1);
    // most[t]: largest work achievable with durations 1..t.
    std::vector<Time> most(pmax + 1, 0);
    for (int t = 1; t <= pmax; ++t) {
      lo[t] = layout.count_lo(b, t);
      hi[t] = layout.count_hi(b, t);
      most[t] = most[t - 1] + Time(hi[t]) * t;
    }
    const std::size_t before = out.size();
    std::vector<int> counts(pmax, 0);
    for (Time s = w.start_lo; s <= w.start_hi; ++s) {
      // Durations from longest to shortest; `work` is what is placed so far.
      auto rec = [&](auto&& self, int t, Time work) -> void {
        if (s + work > w.end_hi) return;
        if (t == 0) {
          if (s + work >= w.end_lo) {
            out.push_back({b, s, s + work, counts});
            if (out.size() > options.config_cap) throw ResourceError("configuration count exceeded its cap");
          }
          return;
        }
        if (s + work + most[t] < w.end_lo) return;
        for (int c = lo[t]; c <= hi[t]; ++c) {
          const Time next = work + Time(c) * t;
          if (s + next > w.end_hi) break;
          counts[t - 1] = c;
          self(self, t - 1, next);
        }
        counts[t - 1] = 0;
      };
      rec(rec, pmax, 0);
    }
    if (out.size() == before) return {};
  }
  return out;
}

IntegerProgram build_decision_program(const Instance& instance, const PhasePartition& phases,
                                      const std::vector<PhaseConfig>& configs, Time target) {
  using Relation = IntegerProgram::Relation;
  const PhaseLayout layout = make_phase_layout(instance, phases, target);
  const int b_count = layout.count();
  const int m = layout.machines;

  IntegerProgram program;
  std::vector<std::vector<int>> by_phase(b_count);
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const PhaseConfig& c = configs[i];
    if (c.phase < 0 || c.phase >= b_count || static_cast<int>(c.counts.size()) != layout.pmax) {
      throw InvalidArgument("configuration does not match the phase layout");
    }
    std::ostringstream name;
    name << "v[" << c.phase + 1 << ',' << c.start << ',' << c.end << ",(";
    for (std::size_t t = 0; t < c.counts.size(); ++t) name << (t ? "," : "") << c.counts[t];
    name << ")]";
    program.add_variable(name.str(), 0, m);
    by_phase[c.phase].push_back(static_cast<int>(i));
  }

  for (int b = 0; b < b_count; ++b) {
    std::vector<IntegerProgram::Term> terms;
    for (int i : by_phase[b]) terms.push_back({i, 1});
    program.add_constraint(std::move(terms), Relation::Equal, m, "machines in phase " + std::to_string(b + 1));
  }

  for (int b = 1; b < b_count; ++b) {
    std::set<Time> times;
    for (int i : by_phase[b - 1]) times.insert(configs[i].end);
    for (int i : by_phase[b]) times.insert(configs[i].start);
    for (const Time tau : times) {
      std::vector<IntegerProgram::Term> terms;
      for (int i : by_phase[b - 1])
        if (configs[i].end == tau) terms.push_back({i, 1});
      for (int i : by_phase[b])
        if (configs[i].start == tau) terms.push_back({i, -1});
      program.add_constraint(std::move(terms), Relation::Equal, 0,
                             "handover " + std::to_string(b) + "->" + std::to_string(b + 1) + " at " + std::to_string(tau));
    }
  }

  for (int b = 0; b < b_count; ++b) {
    for (int t = 1; t <= layout.pmax; ++t) {
      std::vector<IntegerProgram::Term> terms;
      for (int i : by_phase[b])
        if (configs[i].counts[t - 1] > 0) terms.push_back({i, configs[i].counts[t - 1]});
      const int need = layout.job_counts[b][t - 1];
      if (terms.empty() && need == 0) continue;
      program.add_constraint(std::move(terms), Relation::Equal, need,
                             "jobs of duration " + std::to_string(t) + " in phase " + std::to_string(b + 1));
    }
  }
  return program;
}

Schedule reconstruct_schedule(const Instance& instance, const PhasePartition& phases,
                              const std::vector<PhaseConfig>& configs, const std::vector<std::int64_t>& values,
                              Time target) {
  const PhaseLayout layout = make_phase_layout(instance, phases, target);
  if (values.size() != configs.size()) throw InvalidArgument("solution size does not match the configurations");
  const int m = layout.machines;

  // pools[b][t-1]: unplaced jobs of phase b with duration t.
  std::vector<std::vector<std::vector<JobRef>>> pools(layout.count(), std::vector<std::vector<JobRef>>(layout.pmax));
  for (const JobRef ref : instance.jobs()) pools[layout.phase_of_org[ref.org]][instance.duration(ref) - 1].push_back(ref);
  for (auto& phase : pools)
    for (auto& pool : phase) std::reverse(pool.begin(), pool.end());

  Schedule schedule(instance);
  std::vector<Time> end(m, 0);
  for (int b = 0; b < layout.count(); ++b) {
    std::vector<char> taken(m, 0);
    for (std::size_t i = 0; i < configs.size(); ++i) {
      const PhaseConfig& c = configs[i];
      if (c.phase != b) continue;
      for (std::int64_t copy = 0; copy < values[i]; ++copy) {
        int machine = -1;
        for (int d = 0; d < m && machine < 0; ++d)
          if (!taken[d] && end[d] == c.start) machine = d;
        if (machine < 0) throw InvalidArgument("solution does not hand machines over between phases");
        taken[machine] = 1;
        Time clock = c.start;
        for (int t = layout.pmax; t >= 1; --t) {
          auto& pool = pools[b][t - 1];
          for (int k = 0; k < c.counts[t - 1]; ++k) {
            if (pool.empty()) throw InvalidArgument("solution places more jobs than the phase has");
            clock += t;
            schedule[pool.back()] = {machine, clock};
            pool.pop_back();
          }
        }
        end[machine] = clock;
      }
    }
    if (std::count(taken.begin(), taken.end(), 1) != m) throw InvalidArgument("solution leaves machines without a configuration");
  }
  for (const auto& phase : pools)
    for (const auto& pool : phase)
      if (!pool.empty()) throw InvalidArgument("solution leaves jobs unplaced");
  return schedule;
}

namespace {

std::optional<Schedule> probe(const Instance& instance, const PhasePartition& phases, Time target,
                              std::optional<std::int64_t> deviation, const FptOptions& options, std::uint64_t& work) {
  const auto configs = enumerate_configs(instance, phases, target, {deviation, options.config_cap});
  if (configs.empty()) return std::nullopt;
  const IntegerProgram program = build_decision_program(instance, phases, configs, target);
  const IpResult solution = solve_ip(program, options.ip);
  work += solution.nodes + configs.size();
  if (!solution.feasible) return std::nullopt;
  return reconstruct_schedule(instance, phases, configs, solution.values, target);
}

std::optional<Schedule> decide_at(const Instance& instance, const LocalOptima& local, const PhasePartition& phases,
                                  Time target, const FptOptions& options, std::uint64_t& work) {
  if (target < instance.max_duration()) return std::nullopt;
  Time capacity;
  if (!__builtin_mul_overflow(target, Time(instance.machine_count()), &capacity) && capacity < instance.total_load()) {
    return std::nullopt;
  }
  auto found = probe(instance, phases, target, options.deviation_override, options, work);
  if (!found && options.deviation_override) {
    std::optional<std::int64_t> full;
    try {
      full = deviation_bound(instance.max_duration());
    } catch (const OverflowError&) {
    }
    if (!full || *options.deviation_override < *full) found = probe(instance, phases, target, std::nullopt, options, work);
  }
  if (found) {
    if (!check_feasible(instance, *found) || objective_value(instance, *found, ObjectiveKind::Makespan) > target ||
        !is_individually_rational(instance, *found, ObjectiveKind::Makespan, local)) {
      throw std::logic_error("configuration program produced an invalid schedule");
    }
  }
  return found;
}

}  // namespace

std::optional<Schedule> fpt_decide(const Instance& instance, const LocalOptima& local, Time target,
                                   const FptOptions& options) {
  std::uint64_t work = 0;
  if (instance.job_count() == 0) return Schedule(instance);
  return decide_at(instance, local, compute_phases(instance, local), target, options, work);
}

OptResult fpt_makespan(const Instance& instance, const LocalOptima& local, const FptOptions& options) {
  OptResult result;
  result.proven_optimal = true;
  result.schedule = Schedule(instance);
  if (instance.job_count() == 0) return result;

  const PhasePartition phases = compute_phases(instance, local);
  Time lo = std::max(instance.max_duration(), detail::ceil_div(instance.total_load(), instance.machine_count()));
  Time hi = *std::max_element(local.makespan.begin(), local.makespan.end());
  if (lo > hi) throw InvalidArgument("local optima are below the global lower bound");

  std::optional<Schedule> witness;
  while (lo < hi) {
    const Time mid = lo + (hi - lo) / 2;
    if (auto s = decide_at(instance, local, phases, mid, options, result.work)) {
      witness = std::move(s);
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  if (!witness || objective_value(instance, *witness, ObjectiveKind::Makespan) > lo) {
    witness = decide_at(instance, local, phases, lo, options, result.work);
    if (!witness) throw InvalidArgument("no individually rational schedule for these local optima");
  }
  result.schedule = std::move(*witness);
  result.value = objective_value(instance, result.schedule, ObjectiveKind::Makespan);
  return result;
}

}  // namespace mosp
