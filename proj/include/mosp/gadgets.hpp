#ifndef MOSP_GADGETS_HPP
#define MOSP_GADGETS_HPP

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "mosp/instance.hpp"

namespace mosp {

/// 3q positive integers to be split into q triplets of sum B.
struct ThreePartitionInstance {
  Time B = 0;
  std::vector<Time> integers;

  int q() const { return static_cast<int>(integers.size() / 3); }
  /// Throws ValidationError unless the length is a positive multiple of 3,
  /// every integer is positive and the integers sum to qB.
  void validate() const;
  /// Every integer strictly between B/4 and B/2.
  bool restricted() const;

  bool operator==(const ThreePartitionInstance&) const = default;
};

/// Pack `integers` into `bins` bins of capacity `capacity`.
struct BinPackingInstance {
  std::vector<Time> integers;
  Time capacity = 0;
  int bins = 0;

  void validate() const;
  bool operator==(const BinPackingInstance&) const = default;
};

struct GadgetOutput {
  Instance instance;
  Time target = 0;
  /// Symbol values of the construction (scaling factors, offsets, bounds...).
  nlohmann::json certificate;
};

/// Multiplies B and every integer by `factor`; throws OverflowError.
ThreePartitionInstance tp_scale(const ThreePartitionInstance& tp, Time factor);

/// Exact 3-Partition by backtracking; the smallest unused integer always
/// opens the next triplet.
bool tp_decide(const ThreePartitionInstance& tp);

/// Exact bin packing by backtracking, never trying two bins of equal load.
bool bp_decide(const BinPackingInstance& bp);

/// q one-machine integer organizations and q two-machine triplet
/// organizations; an IR schedule with sum of completion times at most 5qB
/// exists iff tp is a yes-instance. Throws InvalidArgument unless restricted.
GadgetOutput gen_sumc_hardness(const ThreePartitionInstance& tp);

/// Two organizations; an IR schedule with makespan at most fB exists iff tp
/// is a yes-instance and tp2 a no-instance. Odd triplet sums are doubled.
GadgetOutput gen_dp_hardness(const ThreePartitionInstance& tp, const ThreePartitionInstance& tp2);

/// One integer organization and `bins` bin organizations; an IR schedule
/// with sum of completion times at most k(y+1)B + 2 sum(x) exists iff bp
/// packs. Integers equal to the capacity are packed alone beforehand.
GadgetOutput gen_binpacking_hardness(const BinPackingInstance& bp);

/// Five organizations per (set_a[i], set_b[i-1]) pair plus one global
/// equalizing organization. With each list sorted yes-instances first, an IR
/// schedule with makespan at most the target exists iff set_a holds strictly
/// more yes-instances than set_b.
GadgetOutput gen_theta2p(const std::vector<ThreePartitionInstance>& set_a,
                         const std::vector<ThreePartitionInstance>& set_b);

/// Ranges for random instances; every bound is inclusive.
struct RandomSpec {
  int min_orgs = 1, max_orgs = 3;
  int min_machines = 1, max_machines = 2;
  int min_jobs = 0, max_jobs = 3;
  Time max_duration = 5;
  /// Total machine and job caps; 0 means unbounded.
  int machine_cap = 0;
  int job_cap = 0;
};

/// Deterministic for a given spec and seed.
Instance random_instance(const RandomSpec& spec, std::uint64_t seed);

}  // namespace mosp

#endif  // MOSP_GADGETS_HPP
