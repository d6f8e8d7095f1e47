#ifndef MOSP_DP_HPP
#define MOSP_DP_HPP

#include <cstddef>

#include "mosp/instance.hpp"

namespace mosp {

struct DpOptions {
  /// Stored states across all layers before a ResourceError.
  std::size_t state_cap = 20'000'000;
  /// Store machine loads as a sorted multiset. Off indexes machines
  /// individually, as in the textbook table.
  bool canonical_loads = true;
};

/// Optimal individually rational makespan. Jobs are taken in phase order;
/// a state is the load vector after a job prefix and a job may only be
/// appended where it still meets its phase deadline.
OptResult dp_makespan(const Instance& instance, const LocalOptima& local, const DpOptions& options = {});

/// Optimal individually rational sum of completion times. A state is the load
/// vector, the per-organization completion sums so far and the number of
/// jobs placed from every (organization, duration) class.
OptResult dp_sumc(const Instance& instance, const LocalOptima& local, const DpOptions& options = {});

/// Rough upper estimate of the dp_sumc state count, saturating at 2^62.
double estimate_sumc_states(const Instance& instance);

}  // namespace mosp

#endif  // MOSP_DP_HPP
