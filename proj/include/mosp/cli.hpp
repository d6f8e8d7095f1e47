#ifndef MOSP_CLI_HPP
#define MOSP_CLI_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mosp/gadgets.hpp"
#include "mosp/instance.hpp"

namespace mosp::cli {

enum ExitCode : int { kOk = 0, kNo = 1, kUsage = 2, kResource = 3 };

/// Algorithm names: "auto", "bruteforce", "dp", "ilp".
struct SolveRequest {
  ObjectiveKind objective = ObjectiveKind::Makespan;
  std::string algorithm = "auto";
  std::optional<Time> target;
  Limits limits = Limits::from_environment();
};

struct SolveOutcome {
  std::string algorithm;  // resolved, never "auto"
  /// Optimization: value and schedule. Decision: the witness when the answer
  /// is yes. After a budget stop: the incumbent, if any.
  std::optional<OptResult> result;
  std::optional<bool> decision;
  /// Set when a state cap, node budget or time limit stopped the solver.
  std::optional<std::string> resource_error;
};

/// Resolves "auto": ilp for makespan when m > 3, dp otherwise; dp for sum of
/// completion times when its state estimate fits, bruteforce otherwise.
std::string resolve_algorithm(const Instance& instance, ObjectiveKind objective, const std::string& algorithm,
                              const Limits& limits);

/// Throws InvalidArgument for unknown algorithms and for ilp with sumc.
SolveOutcome solve(const Instance& instance, const SolveRequest& request);

/// {"objective", "algorithm", "value", "proven_optimal", "schedule"} plus
/// "target"/"decision" in decision mode.
nlohmann::json result_to_json(const SolveOutcome& outcome, const SolveRequest& request);

struct VerifyReport {
  bool well_formed = false;
  std::string problem;  // why the schedule is malformed
  bool feasible = false;
  bool individually_rational = false;
  Time value = 0;
  std::vector<Time> org_values;
  LocalOptima local;

  bool ok() const { return well_formed && feasible && individually_rational; }
};

VerifyReport verify(const Instance& instance, const Schedule& schedule, ObjectiveKind objective);
void print_report(const VerifyReport& report, ObjectiveKind objective, std::ostream& out);

/// 3-Partition text form "B:x1,x2,...". Throws ParseError.
ThreePartitionInstance parse_three_partition(const std::string& text);

struct GenerateRequest {
  std::string kind;  // random, sumc-np, dp-hard, binpack, theta2p
  std::uint64_t seed = 1;
  RandomSpec random;
  std::vector<std::string> tp;      // sumc-np: one; dp-hard: two
  std::vector<std::string> set_a;   // theta2p
  std::vector<std::string> set_b;   // theta2p
  std::vector<Time> integers;       // binpack
  Time capacity = 0;
  int bins = 0;
};

struct Generated {
  Instance instance;
  std::optional<GadgetOutput> gadget;
};

Generated generate(const GenerateRequest& request);

struct BenchRequest {
  std::filesystem::path directory;
  std::vector<std::string> algorithms;  // empty: every algorithm for the objective
  ObjectiveKind objective = ObjectiveKind::Makespan;
  Limits limits = Limits::from_environment();
  int workers = 1;
};

/// Writes the CSV report; returns the number of value mismatches between
/// algorithms that each claim optimality.
int bench(const BenchRequest& request, std::ostream& out);

/// Full command line: solve, verify, generate, bench.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace mosp::cli

#endif  // MOSP_CLI_HPP
