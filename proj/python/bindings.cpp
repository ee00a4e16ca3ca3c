#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "aopc/errors.hpp"
#include "aopc/exact_rank.hpp"
#include "aopc/fap.hpp"
#include "aopc/io.hpp"
#include "aopc/named_graphs.hpp"
#include "aopc/polytope_lab.hpp"
#include "aopc/solver.hpp"

namespace py = pybind11;
using namespace aopc;

namespace {

SolveOptions makeOptions(double timeLimit, int threads, std::uint64_t seed) {
  SolveOptions o;
  o.timeLimitSeconds = timeLimit;
  o.threads = threads;
  o.seed = seed;
  o.separation.seed = seed;
  return o;
}

std::vector<std::pair<int, int>> arcsOf(const UndirectedGraph& g, const Orientation& o) {
  std::vector<std::pair<int, int>> arcs;
  for (int e = 0; e < g.edgeCount(); ++e) {
    const Edge& ed = g.edge(e);
    arcs.push_back(o.forward.at(e) ? std::pair{ed.u, ed.v} : std::pair{ed.v, ed.u});
  }
  return arcs;
}

py::dict cutCounts(const std::array<long, kRowClassCount>& counts) {
  py::dict d;
  for (int c = 0; c < kRowClassCount; ++c)
    d[py::str(std::string(rowClassName(static_cast<RowClass>(c))))] = counts[c];
  return d;
}

py::dict rowDict(const LinearRow& row) {
  py::dict d;
  d["coeffs"] = row.coeffs;
  d["z_coeff"] = row.zCoeff;
  d["rhs"] = row.rhs;
  d["tag"] = std::string(rowClassName(row.tag));
  return d;
}

}  // namespace

PYBIND11_MODULE(_aopc, m) {
  m.doc() = "Acyclic-orientation branch-and-cut: coloring, path-bounded orientations, FAP";

  static py::exception<ParseError> parseError(m, "ParseError", PyExc_ValueError);
  static py::exception<UnsupportedInstance> unsupported(m, "UnsupportedInstance",
                                                        PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      py::set_error(parseError, e.what());
    } catch (const UnsupportedInstance& e) {
      py::set_error(unsupported, e.what());
    }
  });

  py::class_<UndirectedGraph>(m, "Graph")
      .def(py::init([](int n, const std::vector<std::pair<int, int>>& edges) {
             std::vector<Edge> es;
             for (auto [u, v] : edges) es.push_back({u, v});
             return UndirectedGraph(n, es);
           }),
           py::arg("n"), py::arg("edges"))
      .def_property_readonly("n", &UndirectedGraph::vertexCount)
      .def_property_readonly("m", &UndirectedGraph::edgeCount)
      .def_property_readonly("edges",
                             [](const UndirectedGraph& g) {
                               std::vector<std::pair<int, int>> out;
                               for (const Edge& e : g.edges()) out.push_back({e.u, e.v});
                               return out;
                             })
      .def("__repr__", [](const UndirectedGraph& g) {
        return "Graph(n=" + std::to_string(g.vertexCount()) +
               ", m=" + std::to_string(g.edgeCount()) + ")";
      });

  m.def("parse_dimacs", [](std::string_view text) { return io::parseDimacs(text); },
        py::arg("text"));
  m.def("named_graph", [](std::string_view name) { return graphs::byName(name); },
        py::arg("name"));

  m.def(
      "solve_ao",
      [](const UndirectedGraph& g, int kappa, double timeLimit, int threads, std::uint64_t seed) {
        SolveReport rep;
        {
          py::gil_scoped_release release;
          rep = solveAO(g, kappa, makeOptions(timeLimit, threads, seed));
        }
        py::dict out;
        out["status"] = std::string(solveStatusName(rep.status));
        out["z"] = rep.bestPoint ? py::cast(rep.objective) : py::none();
        if (rep.bestPoint) {
          const BidirectedDigraph d(g);
          out["orientation"] = arcsOf(g, Orientation::fromArcSet(d, rep.bestPoint->support()));
        }
        out["bound_history"] = rep.boundHistory;
        out["nodes"] = rep.nodes;
        out["cut_counts"] = cutCounts(rep.cutCounts);
        return out;
      },
      py::arg("graph"), py::arg("kappa"), py::arg("time_limit") = 300.0, py::arg("threads") = 1,
      py::arg("seed") = 1);

  m.def(
      "chromatic_number",
      [](const UndirectedGraph& g, double timeLimit, int threads, std::uint64_t seed) {
        ColoringResult res;
        {
          py::gil_scoped_release release;
          res = chromaticNumber(g, makeOptions(timeLimit, threads, seed));
        }
        py::dict out;
        out["status"] = std::string(solveStatusName(res.status));
        out["chromatic"] = res.chromatic;
        out["classes"] = res.classes;
        out["diameter"] = res.diameter.diameter;
        out["orientation"] = arcsOf(g, res.diameter.orientation);
        out["kappa_sequence"] = res.diameter.kappaSequence;
        return out;
      },
      py::arg("graph"), py::arg("time_limit") = 300.0, py::arg("threads") = 1,
      py::arg("seed") = 1);

  m.def(
      "solve_fap_json",
      [](std::string_view text, double timeLimit, int threads, std::uint64_t seed) {
        const fap::FapInstance inst = io::parseFapJson(text);
        fap::FapResult res;
        {
          py::gil_scoped_release release;
          res = fap::solve(inst, makeOptions(timeLimit, threads, seed));
        }
        py::dict out;
        out["status"] = std::string(solveStatusName(res.status));
        if (res.assignment) {
          out["spectrum"] = res.spectrum;
          out["frequencies"] = res.assignment->freq;
          out["violated_pairs"] = res.assignment->violatedPairs;
          out["cost"] = res.assignment->totalCost;
        }
        return out;
      },
      py::arg("text"), py::arg("time_limit") = 300.0, py::arg("threads") = 1, py::arg("seed") = 1);

  m.def(
      "polytope_dimension",
      [](const UndirectedGraph& g, int kappa) { return lab::polytopeDimension(g, kappa); },
      py::arg("graph"), py::arg("kappa"));

  m.def(
      "classify",
      [](const UndirectedGraph& g, int kappa, std::string_view cls) {
        const auto points = lab::enumerateFeasiblePoints(g, kappa);
        const int dim = exact::affineDimension(points);
        py::list rows;
        for (const LinearRow& row : lab::rowsOfClass(g, kappa, cls)) {
          const auto rep = lab::classifyFace(points, dim, row);
          py::dict d = rowDict(row);
          d["class"] = std::string(lab::faceClassName(rep.cls));
          d["tight_dimension"] = rep.tightDimension;
          rows.append(d);
        }
        return rows;
      },
      py::arg("graph"), py::arg("kappa"), py::arg("row_class"));

  m.def("brute_force_chromatic", &lab::bruteForceChromatic, py::arg("graph"));
  m.def("brute_force_min_diameter", &lab::bruteForceMinDiameter, py::arg("graph"));
}
