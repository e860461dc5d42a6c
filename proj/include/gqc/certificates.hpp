#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gqc/bitvec.hpp"
#include "gqc/graph.hpp"
#include "gqc/linalg.hpp"
#include "gqc/lp.hpp"
#include "gqc/oracle.hpp"

namespace gqc {

// Shore-indexed objects enumerate all non-empty vertex sets excluding the
// distinguished vertex 1; this guard caps that blowup at 8191 shores.
inline constexpr int kShoreEnumerationGuard = 14;

// A side of a cut, canonically the side not containing vertex 1.  Bit b of
// the mask selects vertex b+2, so masks 1 .. 2^(n-1)-1 enumerate the shores
// in canonical order.
struct Shore {
  int n = 0;
  std::uint32_t mask = 0;

  bool contains(int v) const { return v >= 2 && ((mask >> (v - 2)) & 1u); }
  std::vector<int> vertices() const;
  int size() const { return __builtin_popcount(mask); }
};

long long shore_count(int n);
Shore shore_from_index(long long index, int n);  // index in [0, 2^(n-1)-2]

// Characteristic vector of the cut of S in the complete graph, over the
// canonical edge slots.
std::vector<Rat> shore_chi(const Shore& s);
Rat shore_cut_weight(const WeightedGraph& g, const Shore& s);

// Boolean (2^(n-1)-1) x C(n,2) matrix with M_n(S,e) = 1 iff e crosses S in
// K_n; rows in canonical shore order.
struct UniversalCutIncidence {
  int n = 0;
  std::vector<BitVec> rows;  // one per shore, bits over edge slots

  bool entry(long long shore_index, long long slot) const {
    return rows[shore_index].get(static_cast<int>(slot));
  }
};

UniversalCutIncidence universal_cut_incidence(int n);

// A claimed certificate: query matrix A with k rows over the edge slots.
struct CutCertificate {
  int n = 0;
  RatMatrix rows;

  int k() const { return static_cast<int>(rows.size()); }
};

// Feasible point of the cut-rank program: X <= M_n on its stated rows and
// X w >= tau.  Rows may cover the full shore enumeration or a stated subset.
struct CutRankWitness {
  int n = 0;
  Rat tau;
  std::vector<std::uint32_t> shore_masks;  // row alignment
  RatMatrix rows;

  bool full_enumeration() const;
};

LPResult alpha_lp(const CutCertificate& a, const WeightedGraph& g, const Shore& s);

struct BetaResult {
  LPResult lp;
  std::vector<Rat> v;        // optimal multiplier vector
  std::vector<Rat> witness_row;  // A^T v, the row-space vector with X_S <= chi_S
};
BetaResult beta_lp(const CutCertificate& a, const WeightedGraph& g, const Shore& s);

LPResult iota_lp(const CutCertificate& a, const WeightedGraph& g, const Shore& s);

bool verify_at_least_tau(const CutCertificate& a, const WeightedGraph& g, const Rat& tau);

struct ConCertVerdict {
  bool ok = false;
  Rat tau_star;
  // When verification fails: a disconnected reweighting w' with A w' = A w
  // and the shore it disconnects.
  std::optional<std::uint32_t> counterexample_shore;
  std::optional<std::vector<Rat>> counterexample_weights;
};
ConCertVerdict verify_con_cert(const CutCertificate& a, const WeightedGraph& g);

bool verify_mincut_cert(const CutCertificate& a, const WeightedGraph& g);

CutRankWitness cert_to_witness(const CutCertificate& a, const WeightedGraph& g, const Rat& tau);
CutCertificate witness_to_cert(const CutRankWitness& x, const WeightedGraph& g);

void check_witness_feasible(const CutRankWitness& x, const WeightedGraph& g);

struct CycleRankReport {
  Rat bound;        // n/4
  bool certified = false;
  int rank_y_prime = 0;
  int rank_x = 0;
  std::string reason;  // set when not certified
};

// The even-cycle rank bound: extracts the even-singleton-shore rows of X
// restricted to cycle edges, folds column pairs, and verifies the
// strictly-positive-diagonal / non-positive-off-diagonal / trace structure
// that forces rank >= n/4.
CycleRankReport cycle_rank_check(const CutRankWitness& x, int n);

// Reconstructs a simple hidden graph from the single linear query whose
// coordinates are the powers of two.
WeightedGraph learn_simple_graph_one_query(QueryOracle& oracle);

// Certificate file format: {"n":..., "rows":[["p/q",...],...]}; witness files
// add "tau" and, for row subsets, "shores" (canonical masks).
CutCertificate read_certificate_json(const std::string& text);
std::string write_certificate_json(const CutCertificate& a);
CutRankWitness read_witness_json(const std::string& text);
std::string write_witness_json(const CutRankWitness& x);
CutCertificate load_certificate_file(const std::string& path);
CutRankWitness load_witness_file(const std::string& path);

}  // namespace gqc
