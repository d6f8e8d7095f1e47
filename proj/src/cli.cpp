#include "mosp/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "mosp/core.hpp"
#include "mosp/dp.hpp"
#include "mosp/errors.hpp"
#include "mosp/ilp.hpp"
#include "mosp/io.hpp"
#include "mosp/local.hpp"
#include "mosp/oracle.hpp"

namespace mosp::cli {

using json = nlohmann::json;

namespace {

DpOptions dp_options(const Limits& limits) {
  DpOptions options;
  options.state_cap = static_cast<std::size_t>(std::min<std::uint64_t>(options.state_cap, limits.node_budget));
  return options;
}

FptOptions fpt_options(const Limits& limits) {
  FptOptions options;
  options.ip.node_limit = limits.node_budget;
  return options;
}

}  // namespace

std::string resolve_algorithm(const Instance& instance, ObjectiveKind objective, const std::string& algorithm,
                              const Limits& limits) {
  if (algorithm != "auto") return algorithm;
  if (objective == ObjectiveKind::Makespan) return instance.machine_count() > 3 ? "ilp" : "dp";
  const double cap = static_cast<double>(dp_options(limits).state_cap);
  return estimate_sumc_states(instance) <= cap ? "dp" : "bruteforce";
}

SolveOutcome solve(const Instance& instance, const SolveRequest& request) {
  SolveOutcome outcome;
  outcome.algorithm = resolve_algorithm(instance, request.objective, request.algorithm, request.limits);
  const std::string& algo = outcome.algorithm;
  if (algo != "bruteforce" && algo != "dp" && algo != "ilp") {
    throw InvalidArgument("unknown algorithm '" + algo + "' (expected auto, bruteforce, dp or ilp)");
  }
  if (algo == "ilp" && request.objective != ObjectiveKind::Makespan) {
    throw InvalidArgument("the ilp algorithm only handles makespan");
  }
  const LocalOptima local = compute_local_optima(instance);
  const bool makespan = request.objective == ObjectiveKind::Makespan;
  const SearchOptions search{request.limits, true};

  try {
    if (request.target) {
      const Time target = *request.target;
      std::optional<Schedule> witness;
      if (algo == "bruteforce") {
        witness = find_within(instance, request.objective, local, target, search);
      } else if (algo == "ilp") {
        witness = fpt_decide(instance, local, target, fpt_options(request.limits));
      } else {
        OptResult best = makespan ? dp_makespan(instance, local, dp_options(request.limits))
                                  : dp_sumc(instance, local, dp_options(request.limits));
        if (best.value <= target) witness = std::move(best.schedule);
      }
      outcome.decision = witness.has_value();
      if (witness) {
        const Time value = objective_value(instance, *witness, request.objective);
        outcome.result = OptResult{value, std::move(*witness), false, 0};
      }
    } else if (algo == "bruteforce") {
      outcome.result = solve_exact(instance, request.objective, local, search);
    } else if (algo == "ilp") {
      outcome.result = fpt_makespan(instance, local, fpt_options(request.limits));
    } else {
      outcome.result = makespan ? dp_makespan(instance, local, dp_options(request.limits))
                                : dp_sumc(instance, local, dp_options(request.limits));
    }
  } catch (const BudgetExceeded& e) {
    outcome.resource_error = e.what();
    outcome.result = e.incumbent();
    outcome.decision.reset();
  } catch (const ResourceError& e) {
    outcome.resource_error = e.what();
    outcome.result.reset();
    outcome.decision.reset();
  }
  return outcome;
}

json result_to_json(const SolveOutcome& outcome, const SolveRequest& request) {
  json doc = {{"objective", std::string(to_string(request.objective))}, {"algorithm", outcome.algorithm}};
  if (outcome.result) {
    doc["value"] = outcome.result->value;
    doc["proven_optimal"] = outcome.result->proven_optimal && !outcome.resource_error;
    doc["schedule"] = schedule_to_json(outcome.result->schedule);
  } else {
    doc["value"] = nullptr;
    doc["proven_optimal"] = false;
    doc["schedule"] = json::array();
  }
  if (request.target) {
    doc["target"] = *request.target;
    doc["decision"] = outcome.decision ? json(*outcome.decision) : json(nullptr);
  }
  if (outcome.resource_error) doc["error"] = {{"kind", "resource"}, {"reason", *outcome.resource_error}};
  return doc;
}

VerifyReport verify(const Instance& instance, const Schedule& schedule, ObjectiveKind objective) {
  VerifyReport report;
  report.local = compute_local_optima(instance);
  try {
    validate_schedule(instance, schedule);
    report.well_formed = true;
  } catch (const MalformedScheduleError& e) {
    report.problem = e.what();
    return report;
  }
  report.feasible = check_feasible(instance, schedule);
  report.value = objective_value(instance, schedule, objective);
  for (int i = 0; i < instance.org_count(); ++i) report.org_values.push_back(org_objective(instance, schedule, i, objective));
  report.individually_rational = is_individually_rational(instance, schedule, objective, report.local);
  return report;
}

void print_report(const VerifyReport& report, ObjectiveKind objective, std::ostream& out) {
  if (!report.well_formed) {
    out << "malformed schedule: " << report.problem << '\n';
    return;
  }
  out << "feasible: " << (report.feasible ? "yes" : "no") << '\n';
  for (std::size_t i = 0; i < report.org_values.size(); ++i) {
    const Time bound = report.local.bound(static_cast<int>(i), objective);
    out << "organization " << i + 1 << ": " << report.org_values[i] << " (local optimum " << bound << ")"
        << (report.org_values[i] <= bound ? "" : " VIOLATED") << '\n';
  }
  out << "individually rational: " << (report.individually_rational ? "yes" : "no") << '\n';
  out << to_string(objective) << ": " << report.value << '\n';
}

ThreePartitionInstance parse_three_partition(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ParseError("3-Partition instance '" + text + "': expected B:x1,x2,...");
  ThreePartitionInstance tp;
  auto number = [&](const std::string& token) -> Time {
    std::size_t used = 0;
    Time value = 0;
    try {
      value = std::stoll(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != token.size()) throw ParseError("3-Partition instance '" + text + "': bad number '" + token + "'");
    return value;
  };
  tp.B = number(text.substr(0, colon));
  std::stringstream rest(text.substr(colon + 1));
  std::string token;
  while (std::getline(rest, token, ',')) tp.integers.push_back(number(token));
  tp.validate();
  return tp;
}

Generated generate(const GenerateRequest& request) {
  const std::string& kind = request.kind;
  if (kind == "random") return {random_instance(request.random, request.seed), std::nullopt};

  std::optional<GadgetOutput> gadget;
  if (kind == "sumc-np") {
    if (request.tp.size() != 1) throw InvalidArgument("sumc-np needs exactly one --tp instance");
    gadget = gen_sumc_hardness(parse_three_partition(request.tp[0]));
  } else if (kind == "dp-hard") {
    if (request.tp.size() != 2) throw InvalidArgument("dp-hard needs exactly two --tp instances");
    gadget = gen_dp_hardness(parse_three_partition(request.tp[0]), parse_three_partition(request.tp[1]));
  } else if (kind == "binpack") {
    gadget = gen_binpacking_hardness({request.integers, request.capacity, request.bins});
  } else if (kind == "theta2p") {
    std::vector<ThreePartitionInstance> a, b;
    for (const auto& s : request.set_a) a.push_back(parse_three_partition(s));
    for (const auto& s : request.set_b) b.push_back(parse_three_partition(s));
    gadget = gen_theta2p(a, b);
  } else {
    throw InvalidArgument("unknown generator '" + kind + "' (expected random, sumc-np, dp-hard, binpack or theta2p)");
  }
  Instance instance = gadget->instance;
  return {std::move(instance), std::move(gadget)};
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

struct BenchRow {
  std::string algorithm;
  std::string status;  // ok, budget, error
  std::optional<Time> value;
  bool optimal = false;
  double wall_ms = 0;
  std::uint64_t work = 0;
  std::string note;
};

std::vector<BenchRow> bench_one(const std::filesystem::path& path, const std::vector<std::string>& algorithms,
                                const BenchRequest& request) {
  std::vector<BenchRow> rows;
  std::optional<Instance> instance;
  try {
    instance = parse_instance(path);
  } catch (const Error& e) {
    rows.push_back({"-", "error", std::nullopt, false, 0, 0, e.what()});
    return rows;
  }
  for (const auto& algo : algorithms) {
    BenchRow row{algo, "ok", std::nullopt, false, 0, 0, {}};
    const auto start = std::chrono::steady_clock::now();
    try {
      SolveRequest req{request.objective, algo, std::nullopt, request.limits};
      const SolveOutcome outcome = solve(*instance, req);
      if (outcome.result) {
        row.value = outcome.result->value;
        row.optimal = outcome.result->proven_optimal && !outcome.resource_error;
        row.work = outcome.result->work;
      }
      if (outcome.resource_error) {
        row.status = "budget";
        row.note = *outcome.resource_error;
      }
    } catch (const std::exception& e) {
      row.status = "error";
      row.note = e.what();
    }
    row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

int bench(const BenchRequest& request, std::ostream& out) {
  if (!std::filesystem::is_directory(request.directory)) {
    throw InvalidArgument(request.directory.string() + ": not a directory");
  }
  std::vector<std::string> algorithms = request.algorithms;
  if (algorithms.empty()) {
    algorithms = {"bruteforce", "dp"};
    if (request.objective == ObjectiveKind::Makespan) algorithms.push_back("ilp");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(request.directory)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  std::vector<std::vector<BenchRow>> results(files.size());
  const std::size_t workers = static_cast<std::size_t>(std::max(1, request.workers));
  for (std::size_t begin = 0; begin < files.size(); begin += workers) {
    std::vector<std::future<std::vector<BenchRow>>> batch;
    const std::size_t end = std::min(files.size(), begin + workers);
    for (std::size_t i = begin; i < end; ++i) {
      batch.push_back(std::async(workers > 1 ? std::launch::async : std::launch::deferred, bench_one, files[i],
                                 std::cref(algorithms), std::cref(request)));
    }
    for (std::size_t i = begin; i < end; ++i) results[i] = batch[i - begin].get();
  }

  out << "instance,algorithm,status,value,optimal,wall_ms,work,note\n";
  int mismatches = 0;
  std::vector<std::pair<std::string, std::string>> conflicts;
  for (std::size_t i = 0; i < files.size(); ++i) {
    const std::string name = files[i].filename().string();
    std::set<Time> values;
    std::string detail;
    for (const auto& row : results[i]) {
      out << csv_field(name) << ',' << row.algorithm << ',' << row.status << ','
          << (row.value ? std::to_string(*row.value) : "") << ',' << (row.optimal ? 1 : 0) << ',' << std::fixed
          << std::setprecision(3) << row.wall_ms << ',' << row.work << ',' << csv_field(row.note) << '\n';
      if (row.status == "ok" && row.optimal && row.value) {
        values.insert(*row.value);
        detail += (detail.empty() ? "" : " ") + row.algorithm + "=" + std::to_string(*row.value);
      }
    }
    if (values.size() > 1) {
      ++mismatches;
      conflicts.emplace_back(name, detail);
    }
  }
  out << "\n# consistency\ninstance,values\n";
  for (const auto& [name, detail] : conflicts) out << csv_field(name) << ',' << csv_field(detail) << '\n';
  out << "# mismatches: " << mismatches << '\n';
  return mismatches;
}

// ---------------------------------------------------------------------------
// Command line

namespace {

std::filesystem::path certificate_path(const std::filesystem::path& output) {
  std::filesystem::path cert = output;
  cert.replace_extension(".cert.json");
  return cert;
}

void report_resource(const std::string& reason, std::ostream& err) {
  err << json{{"error", "resource"}, {"reason", reason}}.dump() << '\n';
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact multi-organization scheduling under individual rationality"};
  app.require_subcommand(1);

  std::string objective_text = "makespan";
  std::optional<std::uint64_t> node_budget;
  std::optional<double> time_limit;

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "Optimize or decide an instance");
  std::string solve_input, solve_output, algorithm = "auto";
  std::optional<Time> target;
  solve_cmd->add_option("instance", solve_input, "Instance file")->required();
  solve_cmd->add_option("-O,--objective", objective_text, "makespan or sumc");
  solve_cmd->add_option("-a,--algorithm", algorithm, "auto, bruteforce, dp or ilp");
  solve_cmd->add_option("-t,--target", target, "Decide whether the objective can be at most T");
  solve_cmd->add_option("-o,--output", solve_output, "Result file");
  solve_cmd->add_option("--node-budget", node_budget, "Search nodes or states before giving up");
  solve_cmd->add_option("--time-limit", time_limit, "Seconds before the exhaustive search gives up");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Check a schedule for feasibility and individual rationality");
  std::string verify_instance, verify_schedule;
  verify_cmd->add_option("instance", verify_instance, "Instance file")->required();
  verify_cmd->add_option("schedule", verify_schedule, "Schedule or result file")->required();
  verify_cmd->add_option("-O,--objective", objective_text, "makespan or sumc");

  // generate
  auto* gen_cmd = app.add_subcommand("generate", "Write a random or gadget instance");
  GenerateRequest gen;
  std::string gen_output, gen_cert;
  gen_cmd->add_option("kind", gen.kind, "random, sumc-np, dp-hard, binpack or theta2p")->required();
  gen_cmd->add_option("-o,--output", gen_output, "Instance file (default: stdout)");
  gen_cmd->add_option("--certificate", gen_cert, "Certificate file (default: <output>.cert.json)");
  gen_cmd->add_option("--seed", gen.seed, "Random seed");
  gen_cmd->add_option("--min-orgs", gen.random.min_orgs);
  gen_cmd->add_option("--max-orgs", gen.random.max_orgs);
  gen_cmd->add_option("--min-machines", gen.random.min_machines);
  gen_cmd->add_option("--max-machines", gen.random.max_machines);
  gen_cmd->add_option("--min-jobs", gen.random.min_jobs);
  gen_cmd->add_option("--max-jobs", gen.random.max_jobs);
  gen_cmd->add_option("--pmax", gen.random.max_duration, "Largest job duration");
  gen_cmd->add_option("--machine-cap", gen.random.machine_cap, "Total machines at most this (0: no cap)");
  gen_cmd->add_option("--job-cap", gen.random.job_cap, "Total jobs at most this (0: no cap)");
  gen_cmd->add_option("--tp", gen.tp, "3-Partition instance B:x1,x2,... (sumc-np: one, dp-hard: two)");
  gen_cmd->add_option("--set-a", gen.set_a, "theta2p: instances of the first list");
  gen_cmd->add_option("--set-b", gen.set_b, "theta2p: instances of the second list");
  gen_cmd->add_option("--integers", gen.integers, "binpack: integers")->delimiter(',');
  gen_cmd->add_option("--capacity", gen.capacity, "binpack: bin capacity");
  gen_cmd->add_option("--bins", gen.bins, "binpack: number of bins");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Run solvers over a directory of instances");
  BenchRequest bench_req;
  std::string bench_dir, bench_output;
  bench_cmd->add_option("directory", bench_dir, "Directory of instance files")->required();
  bench_cmd->add_option("-a,--algorithms", bench_req.algorithms, "Algorithms to run")->delimiter(',');
  bench_cmd->add_option("-O,--objective", objective_text, "makespan or sumc");
  bench_cmd->add_option("-o,--output", bench_output, "CSV file (default: stdout)");
  bench_cmd->add_option("-j,--jobs", bench_req.workers, "Parallel workers");
  bench_cmd->add_option("--node-budget", node_budget, "Search nodes or states before giving up");
  bench_cmd->add_option("--time-limit", time_limit, "Seconds per solver run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    const ObjectiveKind objective = parse_objective(objective_text);
    Limits limits = Limits::from_environment();
    if (node_budget) limits.node_budget = *node_budget;
    if (time_limit) {
      if (*time_limit <= 0) throw InvalidArgument("time limit must be positive");
      limits.time_limit = std::chrono::milliseconds(static_cast<std::int64_t>(*time_limit * 1000));
    }

    if (*solve_cmd) {
      const Instance instance = parse_instance(solve_input);
      SolveRequest request{objective, algorithm, target, limits};
      const SolveOutcome outcome = solve(instance, request);
      if (!solve_output.empty()) write_json_file(result_to_json(outcome, request), solve_output);
      if (outcome.resource_error) {
        report_resource(*outcome.resource_error, err);
        return kResource;
      }
      if (target) {
        out << (*outcome.decision ? "yes" : "no") << '\n';
        return *outcome.decision ? kOk : kNo;
      }
      out << to_string(objective) << " " << outcome.result->value << " (" << outcome.algorithm
          << (outcome.result->proven_optimal ? ", optimal" : "") << ")\n";
      return kOk;
    }

    if (*verify_cmd) {
      const Instance instance = parse_instance(verify_instance);
      const Schedule schedule = parse_schedule(instance, verify_schedule);
      const VerifyReport report = verify(instance, schedule, objective);
      print_report(report, objective, out);
      return report.ok() ? kOk : kNo;
    }

    if (*gen_cmd) {
      const Generated generated = generate(gen);
      json instance_doc = instance_to_json(generated.instance);
      if (gen_output.empty()) {
        if (generated.gadget) {
          instance_doc["target"] = generated.gadget->target;
          instance_doc["certificate"] = generated.gadget->certificate;
        }
        out << instance_doc.dump(2) << '\n';
        return kOk;
      }
      write_json_file(instance_doc, gen_output);
      if (generated.gadget) {
        const std::filesystem::path cert = gen_cert.empty() ? certificate_path(gen_output) : std::filesystem::path(gen_cert);
        json doc = generated.gadget->certificate;
        doc["target"] = generated.gadget->target;
        write_json_file(doc, cert);
      }
      return kOk;
    }

    if (*bench_cmd) {
      bench_req.directory = bench_dir;
      bench_req.objective = objective;
      bench_req.limits = limits;
      int mismatches = 0;
      if (bench_output.empty()) {
        mismatches = bench(bench_req, out);
      } else {
        std::ofstream file(bench_output);
        if (!file) throw InvalidArgument(bench_output + ": cannot write file");
        mismatches = bench(bench_req, file);
      }
      return mismatches == 0 ? kOk : kNo;
    }
  } catch (const ResourceError& e) {
    report_resource(e.what(), err);
    return kResource;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace mosp::cli
