#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mosp/cli.hpp"
#include "mosp/errors.hpp"
#include "mosp/ilp.hpp"
#include "mosp/io.hpp"
#include "mosp/local.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace {

// Documents cross the boundary through Python's json module.
py::object to_py(const json& doc) { return py::module_::import("json").attr("loads")(doc.dump()); }

json from_py(const py::handle& obj) {
  return json::parse(py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

mosp::Instance instance_arg(const py::handle& obj) { return mosp::instance_from_json(from_py(obj)); }

mosp::Limits limits_arg(std::optional<std::uint64_t> node_budget, std::optional<double> time_limit) {
  mosp::Limits limits = mosp::Limits::from_environment();
  if (node_budget) limits.node_budget = *node_budget;
  if (time_limit) limits.time_limit = std::chrono::milliseconds(static_cast<std::int64_t>(*time_limit * 1000));
  return limits;
}

py::object solve(const py::handle& instance, const std::string& objective, const std::string& algorithm,
                 std::optional<mosp::Time> target, std::optional<std::uint64_t> node_budget,
                 std::optional<double> time_limit) {
  const mosp::Instance inst = instance_arg(instance);
  const mosp::cli::SolveRequest request{mosp::parse_objective(objective), algorithm, target,
                                        limits_arg(node_budget, time_limit)};
  mosp::cli::SolveOutcome outcome;
  {
    py::gil_scoped_release release;
    outcome = mosp::cli::solve(inst, request);
  }
  return to_py(mosp::cli::result_to_json(outcome, request));
}

py::object local_optima(const py::handle& instance) {
  const mosp::LocalOptima local = mosp::compute_local_optima(instance_arg(instance));
  return to_py({{"makespan", local.makespan}, {"sumc", local.sumc}});
}

py::object verify(const py::handle& instance, const py::handle& schedule, const std::string& objective) {
  const mosp::Instance inst = instance_arg(instance);
  const mosp::Schedule s = mosp::schedule_from_json(inst, from_py(schedule));
  const auto r = mosp::cli::verify(inst, s, mosp::parse_objective(objective));
  return to_py({{"ok", r.ok()},
                {"feasible", r.feasible},
                {"individually_rational", r.individually_rational},
                {"value", r.value},
                {"org_values", r.org_values},
                {"local", objective == "sumc" ? r.local.sumc : r.local.makespan}});
}

py::object generate(const std::string& kind, std::uint64_t seed, const std::vector<std::string>& tp,
                    const std::vector<std::string>& set_a, const std::vector<std::string>& set_b,
                    const std::vector<mosp::Time>& integers, mosp::Time capacity, int bins) {
  mosp::cli::GenerateRequest req;
  req.kind = kind;
  req.seed = seed;
  req.tp = tp;
  req.set_a = set_a;
  req.set_b = set_b;
  req.integers = integers;
  req.capacity = capacity;
  req.bins = bins;
  const auto out = mosp::cli::generate(req);
  json doc = mosp::instance_to_json(out.instance);
  if (out.gadget) {
    doc["target"] = out.gadget->target;
    doc["certificate"] = out.gadget->certificate;
  }
  return to_py(doc);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact multi-organization scheduling under individual rationality";

  auto base = py::register_exception<mosp::Error>(m, "Error", PyExc_ValueError);
  py::register_exception<mosp::ResourceError>(m, "ResourceError", base.ptr());

  m.def("solve", &solve, py::arg("instance"), py::arg("objective") = "makespan", py::arg("algorithm") = "auto",
        py::arg("target") = std::nullopt, py::arg("node_budget") = std::nullopt, py::arg("time_limit") = std::nullopt);
  m.def("local_optima", &local_optima, py::arg("instance"));
  m.def("verify", &verify, py::arg("instance"), py::arg("schedule"), py::arg("objective") = "makespan");
  m.def("generate", &generate, py::arg("kind"), py::arg("seed") = 1, py::arg("tp") = std::vector<std::string>{},
        py::arg("set_a") = std::vector<std::string>{}, py::arg("set_b") = std::vector<std::string>{},
        py::arg("integers") = std::vector<mosp::Time>{}, py::arg("capacity") = 0, py::arg("bins") = 0);
  m.def("deviation_bound", &mosp::deviation_bound, py::arg("pmax"));
}
