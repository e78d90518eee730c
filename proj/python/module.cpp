// Python bindings for the planted-subgraph toolkit. Results cross the
// boundary as plain dicts so downstream analysis needs no wrapper types.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <vector>

#include "planted/detect.hpp"
#include "planted/errors.hpp"
#include "planted/graph.hpp"
#include "planted/oracle.hpp"
#include "planted/plant.hpp"
#include "planted/reconstruct.hpp"
#include "planted/theory.hpp"

namespace py = pybind11;
using namespace planted;

namespace {

py::dict detection_dict(const DetectionResult& r) {
    py::dict d;
    d["test"] = to_string(r.test);
    d["decision"] = to_string(r.decision);
    d["exact"] = r.exact;
    d["stats"] = py::cast(r.stats);
    return d;
}

py::dict reconstruction_dict(const ReconstructionResult& r) {
    py::dict d;
    d["estimated"] = py::cast(r.estimated);
    d["overlap"] = r.overlap ? py::cast(*r.overlap) : py::none();
    d["method"] = r.method;
    d["diagnostics"] = py::cast(r.diagnostics);
    return d;
}

} // namespace

PYBIND11_MODULE(planted, m) {
    m.doc() = "detection and reconstruction of planted paths, stars, and "
              "D-ary trees in sparse random graphs";

    py::register_exception<budget_error>(m, "BudgetError");
    py::register_exception<regime_error>(m, "RegimeError");
    py::register_exception<usage_error>(m, "UsageError", PyExc_ValueError);

    py::class_<Graph>(m, "Graph")
        .def(py::init<>())
        .def(py::init<Vertex, std::vector<Edge>>(), py::arg("n"),
             py::arg("edges"))
        .def("vertex_count", &Graph::vertex_count)
        .def("edge_count", &Graph::edge_count)
        .def("degree", &Graph::degree, py::arg("v"))
        .def("has_edge", &Graph::has_edge, py::arg("u"), py::arg("v"))
        .def("neighbors",
             [](const Graph& g, Vertex v) {
                 const auto span = g.neighbors(v);
                 return std::vector<Vertex>(span.begin(), span.end());
             },
             py::arg("v"))
        .def("edges", &Graph::edges)
        .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
        .def("__repr__", [](const Graph& g) {
            return "Graph(n=" + std::to_string(g.vertex_count()) +
                   ", m=" + std::to_string(g.edge_count()) + ")";
        });

    m.def("sample_er", &sample_er, py::arg("n"), py::arg("lambda_"),
          py::arg("seed"),
          "G(n, lambda/n) Erdos-Renyi sample, deterministic in the seed");

    m.def("plant",
          [](const Graph& base, const std::string& spec, std::uint64_t seed,
             double lambda) {
              const auto inst =
                  plant(base, parse_plant_spec(spec), seed, lambda);
              py::dict d;
              d["graph"] = py::cast(inst.graph);
              d["spec"] = spec;
              d["planted_vertices"] = py::cast(inst.truth->planted_vertices);
              d["planted_edges"] = py::cast(inst.truth->planted_edges);
              d["seed"] = inst.seed;
              d["lambda"] = inst.lambda;
              return d;
          },
          py::arg("base"), py::arg("spec"), py::arg("seed"),
          py::arg("lambda_") = 0.0,
          "plant 'line:K', 'star:K', or 'dary:D,h' at a random placement");

    m.def("component_count_test",
          [](const Graph& g, std::uint64_t K) {
              return detection_dict(component_count_test(g, K));
          },
          py::arg("g"), py::arg("K"));
    m.def("k_path_test",
          [](const Graph& g, std::uint64_t K, std::uint64_t budget) {
              return detection_dict(k_path_test(g, K, budget));
          },
          py::arg("g"), py::arg("K"), py::arg("budget") = 1'000'000);
    m.def("star_test",
          [](const Graph& g, std::uint64_t K) {
              return detection_dict(star_test(g, K));
          },
          py::arg("g"), py::arg("K"));
    m.def("dary_test",
          [](const Graph& g, std::uint32_t D, std::uint32_t h) {
              return detection_dict(dary_test(g, D, h));
          },
          py::arg("g"), py::arg("D"), py::arg("h"));

    m.def("longest_path",
          [](const Graph& g, std::uint64_t budget, std::uint64_t target) {
              const auto lp = longest_path(g, budget, target);
              py::dict d;
              d["length"] = lp.length;
              d["witness"] = py::cast(lp.witness);
              d["exact"] = lp.exact;
              return d;
          },
          py::arg("g"), py::arg("budget") = 1'000'000, py::arg("target") = 0);

    m.def("reconstruct_line",
          [](const Graph& g, std::uint64_t K, std::uint64_t budget) {
              return reconstruction_dict(reconstruct_line(g, K, budget));
          },
          py::arg("g"), py::arg("K"), py::arg("budget") = 1'000'000);
    m.def("reconstruct_star",
          [](const Graph& g, std::uint64_t K, std::uint64_t seed) {
              return reconstruction_dict(reconstruct_star(g, K, seed));
          },
          py::arg("g"), py::arg("K"), py::arg("seed"));
    m.def("overlap", &overlap, py::arg("a"), py::arg("b"),
          "size of the intersection of two vertex sets");

    m.def("count_copies",
          [](const Graph& g, const std::string& spec, std::uint64_t budget) {
              const auto cc =
                  count_copies(g, parse_plant_spec(spec), budget);
              py::dict d;
              d["embeddings"] = cc.embeddings;
              d["copies"] = cc.copies;
              d["aut_size"] = cc.aut_size;
              return d;
          },
          py::arg("g"), py::arg("spec"),
          py::arg("budget") = kDefaultOracleBudget);
    m.def("exact_likelihood_ratio",
          [](const Graph& g, const std::string& spec, double lambda,
             std::uint64_t budget) {
              return exact_likelihood_ratio(g, parse_plant_spec(spec), lambda,
                                            budget);
          },
          py::arg("g"), py::arg("spec"), py::arg("lambda_"),
          py::arg("budget") = kDefaultOracleBudget);

    m.def("psi_d", &psi_d, py::arg("mu"), py::arg("D"),
          "P(Poisson(mu) >= D)");
    m.def("gw_sequence",
          [](std::uint32_t D, double lambda, std::uint32_t h_max) {
              return gw_sequence(D, lambda, h_max).p;
          },
          py::arg("D"), py::arg("lambda_"), py::arg("h_max"),
          "height-survival probabilities p_1..p_{h_max}");
    m.def("p_star", [](std::uint32_t D, double lambda) {
              return p_star(D, lambda);
          },
          py::arg("D"), py::arg("lambda_"));
    m.def("lambda_d", [](std::uint32_t D) { return lambda_d(D); },
          py::arg("D"), "critical intensity for D-ary height survival");
    m.def("dary_thresholds",
          [](std::uint32_t D, double lambda, double n) {
              const auto t = dary_thresholds(D, lambda, n);
              py::dict d;
              d["h_under"] = t.h_under;
              d["h_bar"] = t.h_bar;
              d["gap"] = t.gap;
              return d;
          },
          py::arg("D"), py::arg("lambda_"), py::arg("n"));
    m.def("line_threshold", &line_threshold, py::arg("lambda_"), py::arg("n"));
    m.def("star_threshold", &star_threshold, py::arg("n"));
    m.def("markov_bound",
          [](double n, std::uint32_t K, double lambda) {
              const auto rep = markov_bound_e0l2(n, K, lambda);
              py::dict d;
              d["n"] = rep.n;
              d["K"] = rep.K;
              d["lambda"] = rep.lambda;
              d["M"] = py::cast(rep.M);
              d["F1"] = py::cast(rep.F1);
              d["bound"] = rep.bound;
              d["eigvals_M"] = py::cast(rep.eigvals_M);
              d["eigvals_M0"] = py::cast(rep.eigvals_M0);
              d["m0_degenerate"] = rep.m0_degenerate;
              return d;
          },
          py::arg("n"), py::arg("K"), py::arg("lambda_"),
          "upper bound on the null second moment of the likelihood ratio");
    m.def("m0_eigensystem",
          [](double lambda) {
              const auto sys = m0_eigensystem(lambda);
              py::dict d;
              d["eigenvalues"] = py::cast(sys.eigenvalues);
              d["left_eigenvectors"] = py::cast(sys.left_eigenvectors);
              d["max_residual"] = sys.max_residual;
              return d;
          },
          py::arg("lambda_"));
}
