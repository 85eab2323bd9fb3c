// Python front end: the json-level command dispatch shared with the CLI,
// plus direct entry points for the scalar information measures.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twwc/commands.hpp"
#include "twwc/errors.hpp"
#include "twwc/measures.hpp"
#include "twwc/pmf.hpp"
#include "twwc/serialize.hpp"

namespace py = pybind11;
using namespace twwc;

namespace {

CondPmf chan_from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw ValidationError("channel needs at least one row");
  const std::size_t nb = rows.front().size();
  Vec flat;
  flat.reserve(rows.size() * nb);
  for (const auto& row : rows) {
    if (row.size() != nb) throw ValidationError("channel rows must have equal length");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return CondPmf(rows.size(), nb, flat);
}

JointPmf joint_from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw ValidationError("joint law needs at least one row");
  const std::size_t nb = rows.front().size();
  Vec flat;
  flat.reserve(rows.size() * nb);
  for (const auto& row : rows) {
    if (row.size() != nb) throw ValidationError("joint rows must have equal length");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return JointPmf(rows.size(), nb, flat);
}

UpOrder up_order(const std::string& s) {
  if (s == "1/(1+s)") return UpOrder::OneOverOnePlusS;
  if (s == "1/(1-s)") return UpOrder::OneOverOneMinusS;
  throw ValidationError("order must be '1/(1+s)' or '1/(1-s)'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "two-way wiretap channel toolbox (C++ core)";

  py::register_exception<SizingError>(m, "SizingError", PyExc_RuntimeError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

  m.def(
      "run",
      [](const std::string& command, const std::string& spec, const std::string& format,
         bool bits, std::uint64_t seed, std::optional<int> s_grid, std::optional<int> grid,
         std::optional<long> trials, std::optional<std::string> factor_mode,
         std::optional<std::string> flavor, std::optional<std::pair<double, double>> cost,
         std::vector<std::string> eliminate) {
        CommandOptions opt;
        opt.format = format;
        opt.bits = bits;
        opt.seed = seed;
        opt.s_grid = s_grid;
        opt.grid = grid;
        opt.trials = trials;
        opt.factor_mode = std::move(factor_mode);
        opt.flavor = std::move(flavor);
        opt.cost_budgets = cost;
        opt.eliminate = std::move(eliminate);
        std::string csv;
        const Json out = run_command(command, Json::parse(spec), opt,
                                     opt.format == "csv" ? &csv : nullptr);
        return opt.format == "csv" ? csv : out.dump(2);
      },
      py::arg("command"), py::arg("spec"), py::kw_only(), py::arg("format") = "json",
      py::arg("bits") = false, py::arg("seed") = 1, py::arg("s_grid") = std::nullopt,
      py::arg("grid") = std::nullopt, py::arg("trials") = std::nullopt,
      py::arg("factor_mode") = std::nullopt, py::arg("flavor") = std::nullopt,
      py::arg("cost") = std::nullopt, py::arg("eliminate") = std::vector<std::string>{},
      "Run a named command on a json spec string; returns json (or csv) text.");

  m.def("shannon_entropy",
        [](std::vector<double> p) { return shannon_entropy(Pmf(std::move(p))); });
  m.def("renyi_entropy", [](std::vector<double> p, double order) {
    return renyi_entropy(Pmf(std::move(p)), order);
  });
  m.def("kl_divergence", [](std::vector<double> p, std::vector<double> q) {
    return kl_divergence(Pmf(std::move(p)), Pmf(std::move(q)));
  });
  m.def("renyi_relative_entropy",
        [](std::vector<double> p, std::vector<double> q, double order) {
          return renyi_relative_entropy(Pmf(std::move(p)), Pmf(std::move(q)), order);
        });
  m.def("shannon_mi", [](const std::vector<std::vector<double>>& joint) {
    return shannon_mi(joint_from_rows(joint));
  });
  m.def("mi_down", [](const std::vector<std::vector<double>>& joint, double s) {
    return mi_down(joint_from_rows(joint), s);
  });
  m.def(
      "mi_up",
      [](const std::vector<std::vector<double>>& chan, std::vector<double> input, double s,
         const std::string& order) {
        return mi_up(chan_from_rows(chan), Pmf(std::move(input)), s, up_order(order));
      },
      py::arg("chan"), py::arg("input"), py::arg("s"), py::arg("order") = "1/(1+s)");
  m.def("mi_up_conditional",
        [](const std::vector<std::vector<double>>& chan,
           const std::vector<std::vector<double>>& inputs_ac, double s) {
          return mi_up_conditional(chan_from_rows(chan), joint_from_rows(inputs_ac), s);
        });
  m.def("breve_mi",
        [](const std::vector<std::vector<double>>& chan, std::vector<double> input,
           double order) {
          return breve_mi(chan_from_rows(chan), Pmf(std::move(input)), order);
        });
  m.def("breve_mi_conditional",
        [](const std::vector<std::vector<double>>& chan, std::vector<double> pa,
           std::vector<double> pc, double order) {
          return breve_mi_conditional(chan_from_rows(chan), Pmf(std::move(pa)),
                                      Pmf(std::move(pc)), order);
        });
  m.def("log_sum_exp", [](std::vector<double> terms) { return log_sum_exp(terms); });
}
