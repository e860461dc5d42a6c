#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gqc/rational.hpp"

namespace gqc {

// Edge slots are 2-element subsets of 1..n in lexicographic (min,max) order.
// This canonical order fixes the coordinate layout of linear queries, of the
// universal cut-edge incidence matrix and of every certificate file.
inline long long edge_slot_count(int n) { return static_cast<long long>(n) * (n - 1) / 2; }

inline long long edge_slot_index(int u, int v, int n) {
  if (u > v) std::swap(u, v);
  return static_cast<long long>(u - 1) * n - static_cast<long long>(u) * (u + 1) / 2 + v - 1;
}

std::pair<int, int> edge_slot_pair(long long index, int n);

// Undirected weighted graph on vertices 1..n with non-negative exact rational
// weights.  Absent pair = weight 0; only positive-weight pairs are stored, so
// the stored pairs are exactly the edges.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  explicit WeightedGraph(int n) : n_(n), max_weight_bound_(1) {}

  int n() const { return n_; }
  const std::map<std::pair<int, int>, Rat>& edges() const { return weights_; }
  std::size_t edge_count() const { return weights_.size(); }

  // Smallest power of two strictly greater than every weight (>= 1).
  const Rat& max_weight_bound() const { return max_weight_bound_; }

  Rat weight(int u, int v) const;
  bool has_edge(int u, int v) const;
  bool is_simple() const;          // all weights in {0,1}
  bool has_integer_weights() const;
  Rat total_weight() const;

  // Weight vector over the canonical edge slots.
  std::vector<Rat> weight_vector() const;

  // Copy with all weights multiplied by a positive factor.
  WeightedGraph scaled_by(const Rat& factor) const;

 private:
  friend WeightedGraph make_graph(int n,
                                  const std::vector<std::tuple<int, int, Rat>>& edges);
  int n_ = 0;
  std::map<std::pair<int, int>, Rat> weights_;
  Rat max_weight_bound_ = 1;
};

WeightedGraph make_graph(int n, const std::vector<std::tuple<int, int, Rat>>& edges);

// Union-find over 1..n with member lists (MakeSet / FindSet / Union / Elts).
class DisjointSets {
 public:
  explicit DisjointSets(int n);

  int find(int v);
  // Merges the sets of u and v; returns false when they were already merged.
  bool unite(int u, int v);
  const std::vector<int>& elts(int v);
  std::vector<int> roots();
  int set_count() const { return sets_; }
  int n() const { return static_cast<int>(parent_.size()) - 1; }

 private:
  std::vector<int> parent_;
  std::vector<int> rank_;
  std::vector<std::vector<int>> members_;
  int sets_ = 0;
};

using Forest = std::vector<std::pair<int, int>>;

struct GraphFamily {
  enum class Kind { Cycle, Path, Star, ErdosRenyi, DisjointUnion };
  Kind kind = Kind::Cycle;
  double p = 0.0;              // ErdosRenyi only
  std::vector<int> parts;      // DisjointUnion only

  static GraphFamily cycle() { return {Kind::Cycle, 0.0, {}}; }
  static GraphFamily path() { return {Kind::Path, 0.0, {}}; }
  static GraphFamily star() { return {Kind::Star, 0.0, {}}; }
  static GraphFamily erdos_renyi(double p) { return {Kind::ErdosRenyi, p, {}}; }
  static GraphFamily disjoint_union(std::vector<int> parts) {
    return {Kind::DisjointUnion, 0.0, std::move(parts)};
  }

  std::string name() const;
};

// Parses "cycle", "path", "star", "erdos_renyi(0.25)" / "er(0.25)",
// "disjoint_union(3,5)" / "union(3,5)".
GraphFamily parse_family(const std::string& text);

// Deterministic for fixed (family, n, seed).  Cycle/path/star and union parts
// have unit weights; erdos_renyi draws unit-weight edges i.i.d.
WeightedGraph generate(const GraphFamily& family, int n, std::uint64_t seed);

DisjointSets connected_components(const WeightedGraph& g);
int component_count(const WeightedGraph& g);

bool is_spanning_forest(const WeightedGraph& g, const Forest& f);

// Brute force over all 2^(n-1)-1 shores not containing vertex 1.
struct MinCutResult {
  Rat value;
  std::vector<int> shore;
};
MinCutResult min_cut_brute(const WeightedGraph& g);

// Text format: "n m" then m lines "u v w" (w decimal or p/q).  JSON format:
// {"n":..., "edges":[[u,v,"p/q"],...]}.
WeightedGraph read_graph_text(std::istream& in);
void write_graph_text(std::ostream& out, const WeightedGraph& g);
WeightedGraph read_graph_json(const std::string& json_text);
std::string write_graph_json(const WeightedGraph& g);
WeightedGraph load_graph_file(const std::string& path);

}  // namespace gqc
