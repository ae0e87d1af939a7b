// Python module exposing the main operations: dataset parsing, deterministic
// scaling, and the three mining entry points.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdio>
#include <optional>
#include <string>

#include "osum/ingest.hpp"
#include "osum/miner.hpp"
#include "osum/oracle.hpp"
#include "osum/types.hpp"

namespace py = pybind11;

namespace {

struct PyMinedPattern {
  std::vector<std::vector<osum::ItemId>> itemsets;
  osum::Utility ou;
  double our;
  std::vector<osum::PeriodId> ot;
  std::string text;
};

struct PyReport {
  std::vector<PyMinedPattern> patterns;
  std::uint64_t candidates;
  std::uint64_t nodes_visited;
  double wall_ms;
  std::uint64_t peak_struct_bytes;
  bool aborted;
  std::string abort_reason;
};

PyMinedPattern convert(const osum::MinedPattern& p) {
  return {p.pattern.itemsets, p.ou, p.our(), p.ot, p.pattern.to_string()};
}

osum::Ratio threshold_from(const py::object& value) {
  if (py::isinstance<py::str>(value)) {
    return osum::Ratio::parse(value.cast<std::string>());
  }
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.9f", value.cast<double>());
  return osum::Ratio::parse(buffer);
}

PyReport mine(const osum::TemporalDatabase& db, const py::object& threshold,
              const std::string& algo, std::uint32_t max_len, bool ldp, bool lwp, bool arc,
              bool gdp, bool gwp, double time_limit, std::uint64_t mem_limit, unsigned threads,
              std::uint64_t budget) {
  PyReport out{};
  if (algo == "oracle") {
    osum::oracle::OracleConfig config;
    config.xi = threshold_from(threshold);
    config.max_pattern_length = max_len;
    config.budget = budget;
    config.time_limit_sec = time_limit;
    osum::oracle::OracleReport report = osum::oracle::mine(db, config);
    for (const auto& p : report.patterns) out.patterns.push_back(convert(p));
    out.candidates = report.candidates;
    return out;
  }

  osum::MiningOptions options;
  options.xi = threshold_from(threshold);
  options.strategies = {ldp, lwp, arc, gdp, gwp};
  options.max_length = max_len;
  options.time_limit_sec = time_limit;
  options.memory_limit_bytes = mem_limit;
  options.threads = threads;

  osum::MiningReport report;
  if (algo == "osums") {
    report = osum::mine_osums(db, options);
  } else if (algo == "osums-plus") {
    report = osum::mine_osums_plus(db, options);
  } else {
    throw osum::ValidationError("unknown algorithm '" + algo +
                                "' (expected osums, osums-plus, or oracle)");
  }
  for (const auto& p : report.patterns) out.patterns.push_back(convert(p));
  out.candidates = report.candidates_generated;
  out.nodes_visited = report.nodes_visited;
  out.wall_ms = report.wall_ms;
  out.peak_struct_bytes = report.peak_struct_bytes;
  out.aborted = report.aborted;
  out.abort_reason = report.abort_reason;
  return out;
}

}  // namespace

PYBIND11_MODULE(_osum, m) {
  m.doc() = "on-shelf high-utility sequential pattern mining";
  m.attr("__version__") = "0.1.0";

  py::register_exception<osum::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<osum::ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<osum::BudgetError>(m, "BudgetError", PyExc_RuntimeError);
  py::register_exception<osum::LimitError>(m, "LimitError", PyExc_RuntimeError);

  py::class_<osum::TemporalDatabase>(m, "TemporalDatabase")
      .def_property_readonly("num_sequences",
                             [](const osum::TemporalDatabase& db) { return db.sequences.size(); })
      .def_property_readonly("num_items",
                             [](const osum::TemporalDatabase& db) { return db.items().size(); })
      .def_property_readonly("periods",
                             [](const osum::TemporalDatabase& db) { return db.periods; })
      .def("__repr__", [](const osum::TemporalDatabase& db) {
        return "<TemporalDatabase: " + std::to_string(db.sequences.size()) + " q-sequences, " +
               std::to_string(db.items().size()) + " items, " + std::to_string(db.periods.size()) +
               " periods>";
      });

  py::class_<PyMinedPattern>(m, "MinedPattern")
      .def_readonly("itemsets", &PyMinedPattern::itemsets)
      .def_readonly("ou", &PyMinedPattern::ou)
      .def_readonly("our", &PyMinedPattern::our)
      .def_readonly("ot", &PyMinedPattern::ot)
      .def_readonly("text", &PyMinedPattern::text)
      .def("__repr__", [](const PyMinedPattern& p) {
        return "<MinedPattern " + p.text + " ou=" + std::to_string(p.ou) + ">";
      });

  py::class_<PyReport>(m, "MiningReport")
      .def_readonly("patterns", &PyReport::patterns)
      .def_readonly("candidates", &PyReport::candidates)
      .def_readonly("nodes_visited", &PyReport::nodes_visited)
      .def_readonly("wall_ms", &PyReport::wall_ms)
      .def_readonly("peak_struct_bytes", &PyReport::peak_struct_bytes)
      .def_readonly("aborted", &PyReport::aborted)
      .def_readonly("abort_reason", &PyReport::abort_reason);

  m.def(
      "parse_database",
      [](const std::string& db_path, const std::string& utils_path,
         const std::optional<std::string>& shelf_path, bool relax_shelf) {
        osum::DatasetBundle bundle{db_path, utils_path, shelf_path};
        osum::ParseOptions options;
        options.relax_shelf = relax_shelf;
        return osum::parse_database(bundle, options);
      },
      py::arg("db"), py::arg("utils"), py::arg("shelf") = std::nullopt,
      py::arg("relax_shelf") = false, "Read and validate a dataset from its three files.");

  m.def(
      "generate_scaled",
      [](const osum::TemporalDatabase& base, std::uint32_t scale, std::uint32_t periods,
         std::uint64_t seed) {
        return osum::generate_scaled(base, osum::GeneratorConfig{scale, periods, seed});
      },
      py::arg("base"), py::arg("scale"), py::arg("periods"), py::arg("seed"),
      "Deterministically scale a base dataset.");

  m.def(
      "write_dataset",
      [](const osum::TemporalDatabase& db, const std::string& prefix) {
        osum::write_dataset(db, prefix);
      },
      py::arg("db"), py::arg("prefix"), "Write <prefix>.db/.utils/.shelf.");

  m.def("mine", &mine, py::arg("db"), py::arg("threshold"), py::arg("algo") = "osums-plus",
        py::arg("max_len") = 0, py::arg("ldp") = true, py::arg("lwp") = true,
        py::arg("arc") = true, py::arg("gdp") = true, py::arg("gwp") = true,
        py::arg("time_limit") = 10000.0, py::arg("mem_limit") = 0, py::arg("threads") = 1,
        py::arg("budget") = 256,
        "Mine on-shelf high-utility sequential patterns with the chosen algorithm.");
}
