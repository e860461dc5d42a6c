#include "gqc/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "gqc/rng.hpp"

namespace gqc {

std::pair<int, int> edge_slot_pair(long long index, int n) {
  for (int u = 1; u < n; ++u) {
    long long row = n - u;
    if (index < row) return {u, u + 1 + static_cast<int>(index)};
    index -= row;
  }
  throw std::out_of_range("edge slot index out of range");
}

Rat WeightedGraph::weight(int u, int v) const {
  if (u > v) std::swap(u, v);
  auto it = weights_.find({u, v});
  return it == weights_.end() ? Rat(0) : it->second;
}

bool WeightedGraph::has_edge(int u, int v) const {
  if (u > v) std::swap(u, v);
  return weights_.count({u, v}) != 0;
}

bool WeightedGraph::is_simple() const {
  for (const auto& [e, w] : weights_)
    if (w != 1) return false;
  return true;
}

bool WeightedGraph::has_integer_weights() const {
  for (const auto& [e, w] : weights_)
    if (!is_integer(w)) return false;
  return true;
}

Rat WeightedGraph::total_weight() const {
  Rat t = 0;
  for (const auto& [e, w] : weights_) t += w;
  return t;
}

std::vector<Rat> WeightedGraph::weight_vector() const {
  std::vector<Rat> w(edge_slot_count(n_), Rat(0));
  for (const auto& [e, wt] : weights_) w[edge_slot_index(e.first, e.second, n_)] = wt;
  return w;
}

WeightedGraph WeightedGraph::scaled_by(const Rat& factor) const {
  if (factor <= 0) throw std::invalid_argument("scale factor must be positive");
  WeightedGraph out(n_);
  Rat maxw = 0;
  for (const auto& [e, w] : weights_) {
    out.weights_[e] = w * factor;
    maxw = std::max(maxw, out.weights_[e]);
  }
  out.max_weight_bound_ = pow2_weight_bound(maxw);
  return out;
}

WeightedGraph make_graph(int n, const std::vector<std::tuple<int, int, Rat>>& edges) {
  if (n < 1) throw std::invalid_argument("make_graph: n must be >= 1");
  WeightedGraph g(n);
  Rat maxw = 0;
  std::map<std::pair<int, int>, bool> seen;
  for (const auto& [u0, v0, w] : edges) {
    int u = u0, v = v0;
    if (u < 1 || u > n || v < 1 || v > n)
      throw std::invalid_argument("make_graph: vertex out of range");
    if (u == v) throw std::invalid_argument("make_graph: self-loop");
    if (w < 0) throw std::invalid_argument("make_graph: negative weight");
    if (u > v) std::swap(u, v);
    if (seen.count({u, v})) throw std::invalid_argument("make_graph: duplicate pair");
    seen[{u, v}] = true;
    if (w > 0) {
      g.weights_[{u, v}] = w;
      maxw = std::max(maxw, w);
    }
  }
  g.max_weight_bound_ = pow2_weight_bound(maxw);
  return g;
}

DisjointSets::DisjointSets(int n)
    : parent_(n + 1), rank_(n + 1, 0), members_(n + 1), sets_(n) {
  for (int v = 1; v <= n; ++v) {
    parent_[v] = v;
    members_[v] = {v};
  }
}

int DisjointSets::find(int v) {
  while (parent_[v] != v) {
    parent_[v] = parent_[parent_[v]];
    v = parent_[v];
  }
  return v;
}

bool DisjointSets::unite(int u, int v) {
  int a = find(u), b = find(v);
  if (a == b) return false;
  if (rank_[a] < rank_[b]) std::swap(a, b);
  parent_[b] = a;
  if (rank_[a] == rank_[b]) ++rank_[a];
  auto& ma = members_[a];
  auto& mb = members_[b];
  ma.insert(ma.end(), mb.begin(), mb.end());
  mb.clear();
  mb.shrink_to_fit();
  --sets_;
  return true;
}

const std::vector<int>& DisjointSets::elts(int v) { return members_[find(v)]; }

std::vector<int> DisjointSets::roots() {
  std::vector<int> out;
  for (int v = 1; v < static_cast<int>(parent_.size()); ++v)
    if (find(v) == v) out.push_back(v);
  return out;
}

std::string GraphFamily::name() const {
  switch (kind) {
    case Kind::Cycle: return "cycle";
    case Kind::Path: return "path";
    case Kind::Star: return "star";
    case Kind::ErdosRenyi: {
      std::ostringstream os;
      os << "erdos_renyi(" << p << ")";
      return os.str();
    }
    case Kind::DisjointUnion: {
      std::ostringstream os;
      os << "disjoint_union(";
      for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? "," : "") << parts[i];
      os << ")";
      return os.str();
    }
  }
  return "?";
}

GraphFamily parse_family(const std::string& text) {
  auto open = text.find('(');
  std::string head = open == std::string::npos ? text : text.substr(0, open);
  std::string args;
  if (open != std::string::npos) {
    auto close = text.rfind(')');
    if (close == std::string::npos || close < open)
      throw std::invalid_argument("malformed family: " + text);
    args = text.substr(open + 1, close - open - 1);
  }
  if (head == "cycle") return GraphFamily::cycle();
  if (head == "path") return GraphFamily::path();
  if (head == "star") return GraphFamily::star();
  if (head == "erdos_renyi" || head == "er") {
    if (args.empty()) throw std::invalid_argument("erdos_renyi needs a probability");
    return GraphFamily::erdos_renyi(std::stod(args));
  }
  if (head == "disjoint_union" || head == "union") {
    std::vector<int> parts;
    std::stringstream ss(args);
    std::string tok;
    while (std::getline(ss, tok, ',')) parts.push_back(std::stoi(tok));
    if (parts.empty()) throw std::invalid_argument("disjoint_union needs part sizes");
    return GraphFamily::disjoint_union(parts);
  }
  throw std::invalid_argument("unknown family: " + text);
}

namespace {

void add_unit_path_or_cycle(std::vector<std::tuple<int, int, Rat>>& edges, int lo,
                            int hi, bool close) {
  for (int v = lo; v < hi; ++v) edges.emplace_back(v, v + 1, Rat(1));
  if (close && hi - lo >= 2) edges.emplace_back(lo, hi, Rat(1));
}

}  // namespace

WeightedGraph generate(const GraphFamily& family, int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("generate: n must be >= 1");
  std::vector<std::tuple<int, int, Rat>> edges;
  switch (family.kind) {
    case GraphFamily::Kind::Cycle:
      add_unit_path_or_cycle(edges, 1, n, true);
      break;
    case GraphFamily::Kind::Path:
      add_unit_path_or_cycle(edges, 1, n, false);
      break;
    case GraphFamily::Kind::Star:
      for (int v = 2; v <= n; ++v) edges.emplace_back(1, v, Rat(1));
      break;
    case GraphFamily::Kind::ErdosRenyi: {
      if (family.p < 0.0 || family.p > 1.0)
        throw std::invalid_argument("erdos_renyi: p must be in [0,1]");
      Rng rng(derive_seed(seed, 0x6772617068ULL));
      for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v)
          if (family.p >= 1.0 || rng.bernoulli(family.p)) edges.emplace_back(u, v, Rat(1));
      break;
    }
    case GraphFamily::Kind::DisjointUnion: {
      long long total = 0;
      for (int part : family.parts) {
        if (part < 1) throw std::invalid_argument("disjoint_union: part size must be >= 1");
        total += part;
      }
      if (total != n)
        throw std::invalid_argument("disjoint_union: part sizes must sum to n");
      int lo = 1;
      for (int part : family.parts) {
        // Each part is a unit cycle (an edge / a vertex for tiny parts).
        add_unit_path_or_cycle(edges, lo, lo + part - 1, part >= 3);
        lo += part;
      }
      break;
    }
  }
  return make_graph(n, edges);
}

DisjointSets connected_components(const WeightedGraph& g) {
  DisjointSets ds(g.n());
  for (const auto& [e, w] : g.edges()) ds.unite(e.first, e.second);
  return ds;
}

int component_count(const WeightedGraph& g) { return connected_components(g).set_count(); }

bool is_spanning_forest(const WeightedGraph& g, const Forest& f) {
  DisjointSets ds(g.n());
  for (const auto& [u, v] : f) {
    if (u < 1 || u > g.n() || v < 1 || v > g.n() || u == v) return false;
    if (!g.has_edge(u, v)) return false;
    if (!ds.unite(u, v)) return false;  // cycle
  }
  return ds.set_count() == component_count(g);
}

MinCutResult min_cut_brute(const WeightedGraph& g) {
  int n = g.n();
  if (n > 22) throw std::invalid_argument("min_cut_brute: n exceeds enumeration guard (22)");
  if (n == 1) return {Rat(0), {}};
  // Shores are the sides not containing vertex 1; bit b of the mask selects
  // vertex b+2.
  std::uint64_t shores = (std::uint64_t{1} << (n - 1)) - 1;
  MinCutResult best;
  bool first = true;
  std::vector<std::tuple<int, int, Rat>> edge_list;
  for (const auto& [e, w] : g.edges()) edge_list.emplace_back(e.first, e.second, w);
  for (std::uint64_t mask = 1; mask <= shores; ++mask) {
    Rat cut = 0;
    for (const auto& [u, v, w] : edge_list) {
      bool us = u >= 2 && ((mask >> (u - 2)) & 1);
      bool vs = v >= 2 && ((mask >> (v - 2)) & 1);
      if (us != vs) cut += w;
    }
    if (first || cut < best.value) {
      first = false;
      best.value = cut;
      best.shore.clear();
      for (int v = 2; v <= n; ++v)
        if ((mask >> (v - 2)) & 1) best.shore.push_back(v);
      if (best.value == 0) break;
    }
  }
  return best;
}

WeightedGraph read_graph_text(std::istream& in) {
  int n = 0;
  long long m = 0;
  if (!(in >> n >> m)) throw std::invalid_argument("graph text: missing header");
  std::vector<std::tuple<int, int, Rat>> edges;
  for (long long i = 0; i < m; ++i) {
    int u, v;
    std::string w;
    if (!(in >> u >> v >> w)) throw std::invalid_argument("graph text: truncated edge list");
    edges.emplace_back(u, v, parse_rational(w));
  }
  return make_graph(n, edges);
}

void write_graph_text(std::ostream& out, const WeightedGraph& g) {
  out << g.n() << " " << g.edge_count() << "\n";
  for (const auto& [e, w] : g.edges())
    out << e.first << " " << e.second << " " << rat_to_string(w) << "\n";
}

WeightedGraph read_graph_json(const std::string& json_text) {
  auto j = nlohmann::json::parse(json_text);
  int n = j.at("n").get<int>();
  std::vector<std::tuple<int, int, Rat>> edges;
  for (const auto& e : j.at("edges")) {
    Rat w = e[2].is_string() ? parse_rational(e[2].get<std::string>())
                             : Rat(e[2].get<long long>());
    edges.emplace_back(e[0].get<int>(), e[1].get<int>(), w);
  }
  return make_graph(n, edges);
}

std::string write_graph_json(const WeightedGraph& g) {
  nlohmann::ordered_json j;
  j["n"] = g.n();
  auto& edges = j["edges"] = nlohmann::ordered_json::array();
  for (const auto& [e, w] : g.edges())
    edges.push_back({e.first, e.second, rat_to_string(w)});
  return j.dump();
}

WeightedGraph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  // Peek: JSON files start with '{'.
  int c = in.peek();
  while (c == ' ' || c == '\n' || c == '\t' || c == '\r') {
    in.get();
    c = in.peek();
  }
  if (c == '{') {
    std::ostringstream buf;
    buf << in.rdbuf();
    return read_graph_json(buf.str());
  }
  return read_graph_text(in);
}

}  // namespace gqc
