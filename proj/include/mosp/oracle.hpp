#ifndef MOSP_ORACLE_HPP
#define MOSP_ORACLE_HPP

#include <optional>
#include <string>

#include "mosp/errors.hpp"
#include "mosp/instance.hpp"

namespace mosp {

struct SearchOptions {
  Limits limits;
  /// Treat same-organization, same-duration jobs as interchangeable and
  /// identical idle machines as interchangeable. Off enumerates every
  /// left-justified schedule.
  bool symmetry_pruning = true;
};

/// Node budget or time limit ran out. Carries the best schedule found so far,
/// which is never reported as optimal.
class BudgetExceeded : public ResourceError {
 public:
  BudgetExceeded(const std::string& what, std::optional<OptResult> incumbent)
      : ResourceError(what), incumbent_(std::move(incumbent)) {}

  const std::optional<OptResult>& incumbent() const { return incumbent_; }

 private:
  std::optional<OptResult> incumbent_;
};

/// Minimum objective over all feasible, individually rational schedules, by
/// exhaustive branch and bound over left-justified schedules.
OptResult solve_exact(const Instance& instance, ObjectiveKind kind, const LocalOptima& local,
                      const SearchOptions& options = {});

/// An individually rational schedule with objective at most `target`, if any.
std::optional<Schedule> find_within(const Instance& instance, ObjectiveKind kind, const LocalOptima& local,
                                    Time target, const SearchOptions& options = {});

bool decide(const Instance& instance, ObjectiveKind kind, const LocalOptima& local, Time target,
            const SearchOptions& options = {});

}  // namespace mosp

#endif  // MOSP_ORACLE_HPP
