#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "geocast/acceptance.hpp"
#include "geocast/bounds.hpp"
#include "geocast/engine.hpp"
#include "geocast/experiments.hpp"
#include "geocast/oracles.hpp"

namespace py = pybind11;
using namespace geocast;

namespace {

Scenario make_scenario(int n, int k, std::optional<int> radius) {
  Scenario sc = radius ? Scenario::bounded(n, *radius, k) : Scenario::unbounded(n, k);
  sc.validate();
  return sc;
}

ProtocolConfig make_config(const std::string& name, std::optional<int> M, std::optional<int> T,
                           std::optional<std::string> cancel, std::optional<std::string> delay,
                           std::optional<double> md) {
  return make_protocol({name, M, T, cancel, delay, md});
}

py::dict result_dict(const RunResult& r) {
  py::dict d;
  d["rec_mess"] = r.rec_mess;
  d["per_node_receptions"] = r.per_node_receptions;
  d["per_node_transmissions"] = r.per_node_transmissions;
  d["transmissions"] = r.transmissions_total;
  d["activations"] = r.activations;
  d["delivered_all"] = r.delivered_all;
  d["per_message_delivered"] = r.per_message_delivered;
  d["terminated"] = r.terminated;
  d["end_time"] = r.end_time;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "1D beaconless geocast simulator";
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const std::invalid_argument& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def(
      "run",
      [](const std::string& protocol, int n, int k, std::optional<int> radius, const std::string& schedule,
         std::uint64_t seed, std::optional<int> M, std::optional<int> T, std::optional<std::string> cancel,
         std::optional<std::string> delay, std::optional<double> md) {
        const ProtocolConfig p = make_config(protocol, M, T, cancel, delay, md);
        const ActivationSource src = p.is<protocol::DelayBased>() ? ActivationSource{activation::DelayDriven{seed}}
                                                                   : parse_activation_source(schedule, seed);
        py::gil_scoped_release release;
        const RunResult r = run(make_scenario(n, k, radius), p, src);
        py::gil_scoped_acquire acquire;
        return result_dict(r);
      },
      py::arg("protocol"), py::arg("n"), py::arg("k") = 1, py::arg("radius") = py::none(),
      py::arg("schedule") = "fair", py::arg("seed") = 1, py::arg("M") = py::none(), py::arg("T") = py::none(),
      py::arg("cancel") = py::none(), py::arg("delay") = py::none(), py::arg("md") = py::none(),
      "One run; radius=None is the unbounded scenario.");

  m.def(
      "enumerate_runs",
      [](const std::string& protocol, int n, int k, std::optional<int> radius, std::optional<int> M,
         std::optional<int> T, std::int64_t cap) {
        const Scenario sc = make_scenario(n, k, radius);
        const ProtocolConfig p = make_config(protocol, M, T, {}, {}, {});
        const auto e = oracles::enumerate_runs(sc, p, cap);
        py::dict d;
        d["min_rec_mess"] = e.min_rec_mess;
        d["max_rec_mess"] = e.max_rec_mess;
        d["runs"] = e.runs;
        d["complete"] = e.complete;
        d["every_run_delivered"] = e.every_run_delivered;
        if (const auto b = table1_bounds(p, sc)) {
          d["bound_lower"] = b->lower;
          d["bound_upper"] = b->upper;
          d["conforms"] = e.complete && table1_conforms(p, sc, e.min_rec_mess, e.max_rec_mess);
        }
        return d;
      },
      py::arg("protocol"), py::arg("n"), py::arg("k") = 1, py::arg("radius") = py::none(),
      py::arg("M") = py::none(), py::arg("T") = py::none(), py::arg("cap") = 10'000'000);

  m.def(
      "table1_bounds",
      [](const std::string& protocol, int n, int k, std::optional<int> radius, std::optional<int> M,
         std::optional<int> T) -> std::optional<std::pair<std::int64_t, std::int64_t>> {
        const auto b = table1_bounds(make_config(protocol, M, T, {}, {}, {}), make_scenario(n, k, radius));
        if (!b) return std::nullopt;
        return std::make_pair(b->lower, b->upper);
      },
      py::arg("protocol"), py::arg("n"), py::arg("k") = 1, py::arg("radius") = py::none(),
      py::arg("M") = py::none(), py::arg("T") = py::none());

  m.def(
      "sweep",
      [](const std::map<std::string, std::string>& config) {
        const ExperimentSpec spec = spec_from_config(config);
        SweepTable table;
        {
          py::gil_scoped_release release;
          table = run_sweep(spec);
        }
        py::list rows;
        for (const SweepPoint& p : table.points) {
          py::dict row;
          row["n"] = p.params.n;
          row["k"] = p.params.k;
          row["r"] = p.params.r;
          row["trials"] = p.trials;
          row["mean"] = p.mean;
          row["stderr"] = p.stderr_;
          row["min"] = p.min_value;
          row["max"] = p.max_value;
          if (const ReferenceFn ref = table2_reference_fn(spec)) row["reference"] = ref(p.params);
          rows.append(row);
        }
        return rows;
      },
      py::arg("config"), "Sweep from the same keys as a config file (values as strings).");

  m.def("lnis", [](const std::vector<int>& v) { return oracles::lnis(v); });
  m.def(
      "cdp_chain_run",
      [](int n, int k, std::uint64_t seed) {
        SplitMix64 rng(seed);
        return oracles::cdp_chain_run(n, k, rng);
      },
      py::arg("n"), py::arg("k"), py::arg("seed") = 1);
  m.def(
      "grid_fill_run",
      [](int n, int k, std::uint64_t seed) {
        SplitMix64 rng(seed);
        const auto g = oracles::grid_fill_run(n, k, rng);
        py::dict d;
        d["completion"] = g.completion;
        d["first_full"] = g.first_full;
        d["selections"] = g.selections;
        return d;
      },
      py::arg("n"), py::arg("k"), py::arg("seed") = 1);

  m.def(
      "verify",
      [](int criterion, std::uint64_t seed) {
        acceptance::Options o;
        o.seed = seed;
        acceptance::CriterionResult r;
        {
          py::gil_scoped_release release;
          r = acceptance::run_criterion(criterion, o);
        }
        py::dict d;
        d["id"] = r.id;
        d["title"] = r.title;
        d["passed"] = r.passed;
        d["blocking"] = r.blocking;
        d["details"] = r.details;
        d["warnings"] = r.warnings;
        return d;
      },
      py::arg("criterion"), py::arg("seed") = acceptance::Options{}.seed);
}
