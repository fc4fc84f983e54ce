#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ivme/driver.hpp"
#include "ivme/workload.hpp"

#include <sstream>

namespace py = pybind11;
using namespace ivme;

namespace {

Rel rel_from(const std::string& name) {
  if (name.size() != 1 || std::string("RST").find(name[0]) == std::string::npos)
    throw py::value_error("relation must be R, S or T");
  return parse_rel(name[0]);
}

py::tuple to_py(const Tuple& t) {
  py::tuple out(t.n);
  for (int i = 0; i < t.n; ++i) out[i] = t[i];
  return out;
}

py::dict to_py(const ResultMap& r) {
  py::dict out;
  for (const auto& [t, m] : r) out[to_py(t)] = m;
  return out;
}

py::tuple update_to_py(const Update& u) {
  return py::make_tuple(std::string(1, rel_name(u.rel)), u.x, u.y, u.m);
}

Update update_from(const std::string& rel, Value a, Value b, Mult m) {
  return Update{rel_from(rel), a, b, m};
}

PlainDatabase database_from(const std::vector<std::tuple<std::string, Value, Value, Mult>>& ups) {
  PlainDatabase db;
  for (const auto& [r, a, b, m] : ups) db.apply(update_from(r, a, b, m));
  return db;
}

}  // namespace

PYBIND11_MODULE(ivme, m) {
  m.doc() = "Incremental maintenance of triangle queries under single-tuple updates";

  py::register_exception<RejectedDelete>(m, "RejectedDelete", PyExc_RuntimeError);
  py::register_exception<StaleIterator>(m, "StaleIterator", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<DimensionMismatch>(m, "DimensionMismatch", PyExc_ValueError);

  py::class_<Engine>(m, "Engine")
      .def(py::init([](const std::string& query, double eps, bool dbl) {
             return Engine(parse_query(query, dbl), eps);
           }),
           py::arg("query"), py::arg("epsilon") = 0.5, py::arg("double_partition") = false)
      .def("update",
           [](Engine& e, const std::string& rel, Value a, Value b, Mult m) {
             e.on_update(rel_from(rel), a, b, m);
           },
           py::arg("rel"), py::arg("a"), py::arg("b"), py::arg("m") = 1)
      .def("apply_stream",
           [](Engine& e, const std::vector<std::tuple<std::string, Value, Value, Mult>>& ups) {
             for (const auto& [r, a, b, mult] : ups) e.on_update(rel_from(r), a, b, mult);
           })
      .def("result", [](const Engine& e) { return to_py(e.result()); })
      .def("count", &Engine::count)
      .def_property_readonly("query", [](const Engine& e) { return query_name(e.query()); })
      .def_property_readonly("epsilon", &Engine::epsilon)
      .def_property_readonly("db_size", &Engine::db_size)
      .def_property_readonly("base", &Engine::base)
      .def_property_readonly("major_count", &Engine::major_count)
      .def_property_readonly("minor_count", &Engine::minor_count)
      .def("costs",
           [](const Engine& e) {
             py::dict d;
             const CostMeter& c = e.meter();
             d["total"] = c.total();
             for (int p = 0; p < kPhaseCount; ++p)
               d[phase_name(static_cast<Phase>(p))] = c.bucket(static_cast<Phase>(p));
             d["max_update"] = c.max_update_cost();
             return d;
           })
      .def("max_delay", [](const Engine& e) { return measure_delay(e).max_delay; })
      .def("check_invariants", &Engine::check_invariants)
      .def("check_views", &Engine::check_views);

  m.def("oracle_triangle",
        [](const std::vector<std::tuple<std::string, Value, Value, Mult>>& ups, int k) {
          if (k < 0 || k > 3) throw py::value_error("k must be 0..3");
          return to_py(oracle_triangle(database_from(ups), k));
        },
        py::arg("updates"), py::arg("k"));

  m.def("generate_workload",
        [](std::uint64_t seed, std::uint32_t domain, std::size_t updates, double delete_frac,
           const std::string& skew) {
          WorkloadSpec spec;
          spec.seed = seed;
          spec.domain = domain;
          spec.updates = updates;
          spec.delete_frac = delete_frac;
          spec.skew = parse_skew(skew);
          py::list out;
          for (const auto& u : generate_workload(spec)) out.append(update_to_py(u));
          return out;
        },
        py::arg("seed") = 1, py::arg("domain") = 32, py::arg("updates") = 1000,
        py::arg("delete_frac") = 0.0, py::arg("skew") = "uniform");

  m.def("parse_stream", [](const std::string& text) {
    std::istringstream in(text);
    py::list out;
    for (const auto& u : parse_stream(in)) out.append(update_to_py(u));
    return out;
  });

  m.def("solve_oumv",
        [](const BitMatrix& M, const std::vector<std::pair<BitVector, BitVector>>& rounds,
           double eps) { return solve_oumv(M, rounds, eps).bits; },
        py::arg("matrix"), py::arg("rounds"), py::arg("epsilon") = 0.5);
  m.def("oracle_oumv", &oracle_oumv, py::arg("matrix"), py::arg("u"), py::arg("v"));
}
