#ifndef MOSP_ILP_HPP
#define MOSP_ILP_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mosp/instance.hpp"

namespace mosp {

// ---------------------------------------------------------------------------
// Bounded integer programs.

struct IntegerProgram {
  struct Variable {
    std::string name;
    std::int64_t lower = 0;
    std::int64_t upper = 0;
  };
  enum class Relation { Equal, LessEqual };
  struct Term {
    int var = 0;
    std::int64_t coef = 0;
  };
  struct Constraint {
    std::vector<Term> terms;
    Relation relation = Relation::Equal;
    std::int64_t rhs = 0;
    std::string label;
  };

  std::vector<Variable> variables;
  std::vector<Constraint> constraints;
  /// Minimized when non-empty; otherwise the program is a feasibility check.
  std::vector<Term> objective;

  int add_variable(std::string name, std::int64_t lower, std::int64_t upper);
  /// Throws InvalidArgument when a term names an undeclared variable.
  void add_constraint(std::vector<Term> terms, Relation relation, std::int64_t rhs, std::string label = {});
};

struct IpOptions {
  std::uint64_t node_limit = 50'000'000;
};

struct IpResult {
  bool feasible = false;
  std::vector<std::int64_t> values;
  std::int64_t objective = 0;
  std::uint64_t nodes = 0;
};

/// Exact solve by depth-first search with bound propagation over the linear
/// constraints. `feasible == false` is a proof of infeasibility; running out of
/// nodes throws ResourceError instead.
IpResult solve_ip(const IntegerProgram& program, const IpOptions& options = {});

// ---------------------------------------------------------------------------
// Phase-configuration program for makespan.

/// Per-machine deviation bound on jobs of one duration and phase:
/// h(1) * g(pmax) with h(1) = (pmax+1)!/2 and g(pmax) = 3 pmax^3 + 2 pmax.
/// Throws OverflowError when the value leaves 64 bits.
std::int64_t deviation_bound(std::int64_t pmax);

/// One machine's share of one phase: it finishes the previous phase at
/// `start`, runs counts[t-1] jobs of duration t, and finishes at `end`.
struct PhaseConfig {
  int phase = 0;
  Time start = 0;
  Time end = 0;
  std::vector<int> counts;

  bool operator==(const PhaseConfig&) const = default;
};

/// Phases as seen by one decision probe with makespan target T. Phases whose
/// deadline is at least T are merged into a final phase with deadline T.
struct PhaseLayout {
  struct Window {
    Time start_lo = 0, start_hi = 0;
    Time end_lo = 0, end_hi = 0;
  };

  Time target = 0;
  int machines = 0;
  int pmax = 0;
  Time slack = 0;                           // pmax^3 + pmax
  std::optional<std::int64_t> deviation;    // empty: no bound beyond job counts
  std::vector<Time> deadlines;              // per phase, capped at T
  std::vector<std::vector<int>> orgs;       // organizations per phase
  std::vector<int> phase_of_org;
  std::vector<std::vector<int>> job_counts; // [phase][t-1]
  std::vector<Time> cumulative_load;        // load of phases 0..b
  std::vector<Window> windows;

  int count() const { return static_cast<int>(deadlines.size()); }
  int count_lo(int phase, int t) const;
  int count_hi(int phase, int t) const;
};

PhaseLayout make_phase_layout(const Instance& instance, const PhasePartition& phases, Time target,
                              std::optional<std::int64_t> deviation_override = std::nullopt);

struct ConfigOptions {
  std::optional<std::int64_t> deviation_override;
  std::size_t config_cap = 2'000'000;
};

/// All configurations inside the start/end windows and count ranges. Empty
/// when some phase admits none, which means no schedule meets T.
std::vector<PhaseConfig> enumerate_configs(const Instance& instance, const PhasePartition& phases, Time target,
                                           const ConfigOptions& options = {});

/// One variable per configuration in [0, m]; per phase the variables sum to
/// m, machines ending phase b-1 at a time equal those starting phase b there,
/// and each phase's jobs of every duration are all placed.
IntegerProgram build_decision_program(const Instance& instance, const PhasePartition& phases,
                                      const std::vector<PhaseConfig>& configs, Time target);

/// Turns a solution of build_decision_program into a left-justified schedule,
/// phase by phase.
Schedule reconstruct_schedule(const Instance& instance, const PhasePartition& phases,
                              const std::vector<PhaseConfig>& configs, const std::vector<std::int64_t>& values,
                              Time target);

struct FptOptions {
  /// Smaller deviation bound for speed; an infeasible probe is retried with
  /// the full bound before T is rejected.
  std::optional<std::int64_t> deviation_override;
  IpOptions ip;
  std::size_t config_cap = 2'000'000;
};

/// Individually rational schedule with makespan at most `target`, if any.
std::optional<Schedule> fpt_decide(const Instance& instance, const LocalOptima& local, Time target,
                                   const FptOptions& options = {});

/// Binary search over T in [max(pmax, ceil(load/m)), max L_i].
OptResult fpt_makespan(const Instance& instance, const LocalOptima& local, const FptOptions& options = {});

}  // namespace mosp

#endif  // MOSP_ILP_HPP
