#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gqc/certificates.hpp"
#include "gqc/connectivity.hpp"
#include "gqc/experiment.hpp"
#include "gqc/graph.hpp"
#include "gqc/oracle.hpp"

namespace py = pybind11;
using namespace gqc;

namespace {

// Rationals cross the boundary as canonical "p/q" strings.
RatMatrix rows_from_py(const std::vector<std::vector<std::string>>& rows) {
  RatMatrix out;
  for (const auto& row : rows) {
    std::vector<Rat> r;
    for (const auto& cell : row) r.push_back(parse_rational(cell));
    out.push_back(std::move(r));
  }
  return out;
}

WeightedGraph graph_from_py(int n,
                            const std::vector<std::tuple<int, int, std::string>>& edges) {
  std::vector<std::tuple<int, int, Rat>> converted;
  for (const auto& [u, v, w] : edges) converted.emplace_back(u, v, parse_rational(w));
  return make_graph(n, converted);
}

std::vector<std::pair<int, int>> edge_list(const WeightedGraph& g) {
  std::vector<std::pair<int, int>> out;
  for (const auto& [e, w] : g.edges()) out.push_back(e);
  return out;
}

py::dict ledger_dict(const QueryLedger& ledger) {
  py::dict d;
  for (int m = 0; m < kQueryModelCount; ++m) {
    QueryModel qm = static_cast<QueryModel>(m);
    d[query_model_name(qm)] = ledger.count(qm);
  }
  return d;
}

// One hidden graph, one oracle, one algorithm-facing adapter.
struct Session {
  WeightedGraph graph;
  std::unique_ptr<OracleSession> inner;

  Session(WeightedGraph g, const std::string& model, std::uint64_t seed)
      : graph(std::move(g)) {
    inner = std::make_unique<OracleSession>(
        make_session(graph, parse_model(model), seed));
  }
};

}  // namespace

PYBIND11_MODULE(_gqc, m) {
  m.doc() = "spanning forests from global graph queries, with exact certificate tools";

  py::class_<WeightedGraph>(m, "Graph")
      .def_property_readonly("n", &WeightedGraph::n)
      .def_property_readonly("edge_count", &WeightedGraph::edge_count)
      .def("edges", &edge_list)
      .def("weight",
           [](const WeightedGraph& g, int u, int v) { return rat_to_string(g.weight(u, v)); })
      .def("is_simple", &WeightedGraph::is_simple)
      .def("to_json", &write_graph_json)
      .def("__repr__", [](const WeightedGraph& g) {
        return "<gqc.Graph n=" + std::to_string(g.n()) +
               " edges=" + std::to_string(g.edge_count()) + ">";
      });

  m.def("make_graph", &graph_from_py, py::arg("n"), py::arg("edges"),
        "Build a graph from (u, v, weight) triples; weights are rational strings.");
  m.def(
      "generate",
      [](const std::string& family, int n, std::uint64_t seed) {
        return generate(parse_family(family), n, seed);
      },
      py::arg("family"), py::arg("n"), py::arg("seed") = 0);
  m.def("load_graph", &load_graph_file, py::arg("path"));
  m.def("component_count", &component_count);
  m.def("is_spanning_forest", &is_spanning_forest, py::arg("graph"), py::arg("forest"));
  m.def(
      "min_cut_brute",
      [](const WeightedGraph& g) {
        MinCutResult r = min_cut_brute(g);
        return py::make_tuple(rat_to_string(r.value), r.shore);
      },
      "Brute-force minimum cut: (value, shore) with the shore excluding vertex 1.");

  py::class_<Session>(m, "Session")
      .def(py::init([](const WeightedGraph& g, const std::string& model,
                       std::uint64_t seed) { return new Session(g, model, seed); }),
           py::arg("graph"), py::arg("model") = "master", py::arg("seed") = 0)
      .def_property_readonly("n", [](const Session& s) { return s.graph.n(); })
      .def("ledger", [](const Session& s) { return ledger_dict(s.inner->ledger()); })
      .def("master_calls", [](const Session& s) { return s.inner->master->master_calls(); })
      .def(
          "find_spanning_forest",
          [](Session& s, std::uint64_t seed) {
            return find_spanning_forest(*s.inner->master, s.graph.n(), seed);
          },
          py::arg("seed") = 0)
      .def(
          "recover_one_from_all",
          [](Session& s, const std::vector<int>& r_set, const std::vector<int>& s_set,
             double delta, std::uint64_t seed) {
            Rng rng(derive_seed(seed, 0x7079ULL));
            RecoverResult res = recover_one_from_all(*s.inner->master, r_set, s_set,
                                                     delta, rng);
            py::dict d;
            d["pairs"] = res.pairs;
            d["failed_rows"] = res.failed_rows;
            d["master_queries"] = res.master_queries_used;
            return d;
          },
          py::arg("r"), py::arg("s"), py::arg("delta") = 0.01, py::arg("seed") = 0);

  m.def(
      "learn_simple_graph_one_query",
      [](const WeightedGraph& g) {
        QueryOracle oracle(g, {QueryModel::Linear});
        WeightedGraph learned = learn_simple_graph_one_query(oracle);
        return py::make_tuple(learned, ledger_dict(oracle.ledger()));
      },
      "Reconstruct a simple hidden graph with a single powers-of-two linear query.");

  m.def("exact_rank", [](const std::vector<std::vector<std::string>>& rows) {
    return exact_rank(rows_from_py(rows));
  });

  m.def(
      "universal_cut_incidence",
      [](int n) {
        UniversalCutIncidence mn = universal_cut_incidence(n);
        std::vector<std::vector<int>> rows;
        for (const auto& row : mn.rows) {
          std::vector<int> r;
          for (int j = 0; j < row.size(); ++j) r.push_back(row.get(j));
          rows.push_back(std::move(r));
        }
        return rows;
      },
      py::arg("n"));

  m.def(
      "verify_con_cert",
      [](const std::vector<std::vector<std::string>>& cert_rows, const WeightedGraph& g) {
        CutCertificate a;
        a.n = g.n();
        a.rows = rows_from_py(cert_rows);
        ConCertVerdict v = verify_con_cert(a, g);
        py::dict d;
        d["ok"] = v.ok;
        d["tau_star"] = rat_to_string(v.tau_star);
        if (v.counterexample_weights) {
          std::vector<std::string> w;
          for (const auto& x : *v.counterexample_weights) w.push_back(rat_to_string(x));
          d["counterexample_w"] = w;
        }
        return d;
      },
      py::arg("cert_rows"), py::arg("graph"));

  m.def(
      "verify_at_least_tau",
      [](const std::vector<std::vector<std::string>>& cert_rows, const WeightedGraph& g,
         const std::string& tau) {
        CutCertificate a;
        a.n = g.n();
        a.rows = rows_from_py(cert_rows);
        return verify_at_least_tau(a, g, parse_rational(tau));
      },
      py::arg("cert_rows"), py::arg("graph"), py::arg("tau"));

  m.def(
      "cycle_rank_check_mn",
      [](int n, const std::string& tau) {
        UniversalCutIncidence mn = universal_cut_incidence(n);
        CutRankWitness x;
        x.n = n;
        x.tau = parse_rational(tau);
        long long slots = edge_slot_count(n);
        for (long long idx = 0; idx < shore_count(n); ++idx) {
          std::vector<Rat> row(slots, Rat(0));
          for (long long j = 0; j < slots; ++j)
            if (mn.entry(idx, j)) row[j] = 1;
          x.shore_masks.push_back(static_cast<std::uint32_t>(idx + 1));
          x.rows.push_back(std::move(row));
        }
        CycleRankReport rep = cycle_rank_check(x, n);
        py::dict d;
        d["certified"] = rep.certified;
        d["bound"] = rat_to_string(rep.bound);
        d["rank_y_prime"] = rep.rank_y_prime;
        d["rank_x"] = rep.rank_x;
        return d;
      },
      py::arg("n"), py::arg("tau") = "2",
      "Run the even-cycle rank bound against the full universal incidence witness.");
}
