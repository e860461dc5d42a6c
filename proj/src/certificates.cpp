#include "gqc/certificates.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace gqc {

std::vector<int> Shore::vertices() const {
  std::vector<int> out;
  for (int v = 2; v <= n; ++v)
    if (contains(v)) out.push_back(v);
  return out;
}

long long shore_count(int n) {
  if (n < 2) return 0;
  return (1LL << (n - 1)) - 1;
}

Shore shore_from_index(long long index, int n) {
  if (index < 0 || index >= shore_count(n))
    throw std::out_of_range("shore index out of range");
  return Shore{n, static_cast<std::uint32_t>(index + 1)};
}

std::vector<Rat> shore_chi(const Shore& s) {
  std::vector<Rat> chi(edge_slot_count(s.n), Rat(0));
  for (int u = 1; u <= s.n; ++u)
    for (int v = u + 1; v <= s.n; ++v)
      if (s.contains(u) != s.contains(v)) chi[edge_slot_index(u, v, s.n)] = 1;
  return chi;
}

Rat shore_cut_weight(const WeightedGraph& g, const Shore& s) {
  Rat total = 0;
  for (const auto& [e, w] : g.edges())
    if (s.contains(e.first) != s.contains(e.second)) total += w;
  return total;
}

UniversalCutIncidence universal_cut_incidence(int n) {
  if (n < 2 || n > kShoreEnumerationGuard)
    throw std::invalid_argument("universal_cut_incidence: n outside [2,14]");
  UniversalCutIncidence m;
  m.n = n;
  long long slots = edge_slot_count(n);
  m.rows.reserve(shore_count(n));
  for (long long idx = 0; idx < shore_count(n); ++idx) {
    Shore s = shore_from_index(idx, n);
    BitVec row(static_cast<int>(slots));
    for (int u = 1; u <= n; ++u)
      for (int v = u + 1; v <= n; ++v)
        if (s.contains(u) != s.contains(v))
          row.set(static_cast<int>(edge_slot_index(u, v, n)));
    m.rows.push_back(std::move(row));
  }
  return m;
}

bool CutRankWitness::full_enumeration() const {
  if (static_cast<long long>(shore_masks.size()) != shore_count(n)) return false;
  for (std::size_t i = 0; i < shore_masks.size(); ++i)
    if (shore_masks[i] != i + 1) return false;
  return true;
}

namespace {

void check_cert_dims(const CutCertificate& a, const WeightedGraph& g) {
  if (a.n != g.n()) throw std::invalid_argument("certificate dimension mismatch");
  long long slots = edge_slot_count(a.n);
  for (const auto& row : a.rows)
    if (static_cast<long long>(row.size()) != slots)
      throw std::invalid_argument("certificate row has wrong slot count");
}

void check_shore_guard(int n) {
  if (n > kShoreEnumerationGuard)
    throw std::invalid_argument("shore enumeration guard exceeded (n > 14)");
}

}  // namespace

LPResult alpha_lp(const CutCertificate& a, const WeightedGraph& g, const Shore& s) {
  check_cert_dims(a, g);
  const long long slots = edge_slot_count(g.n());
  std::vector<Rat> chi = shore_chi(s);
  std::vector<Rat> w = g.weight_vector();
  // maximize <chi_S, z>  s.t.  A z = 0,  z <= w  (z free).
  LPProblem p;
  p.maximize = true;
  p.objective = chi;
  p.nonneg.assign(slots, false);
  for (const auto& row : a.rows) p.rows.push_back({row, Rel::Eq, Rat(0)});
  for (long long j = 0; j < slots; ++j) {
    std::vector<Rat> unit(slots, Rat(0));
    unit[j] = 1;
    p.rows.push_back({std::move(unit), Rel::Le, w[j]});
  }
  return solve_lp(p);
}

BetaResult beta_lp(const CutCertificate& a, const WeightedGraph& g, const Shore& s) {
  check_cert_dims(a, g);
  const long long slots = edge_slot_count(g.n());
  std::vector<Rat> chi = shore_chi(s);
  std::vector<Rat> w = g.weight_vector();
  // minimize <w, chi_S - A^T v>  s.t.  chi_S - A^T v >= 0  (v free), i.e.
  // over v: minimize <w,chi_S> - <Aw, v>  s.t.  A^T v <= chi_S.
  const int k = a.k();
  std::vector<Rat> a_w = mat_vec(a.rows, w);
  LPProblem p;
  p.maximize = false;
  p.objective.assign(k, Rat(0));
  for (int i = 0; i < k; ++i) p.objective[i] = -a_w[i];
  p.nonneg.assign(k, false);
  for (long long j = 0; j < slots; ++j) {
    std::vector<Rat> row(k);
    for (int i = 0; i < k; ++i) row[i] = a.rows[i][j];
    p.rows.push_back({std::move(row), Rel::Le, chi[j]});
  }
  LPResult lp = solve_lp(p);
  BetaResult out;
  out.v = lp.x;
  out.witness_row = k == 0 ? std::vector<Rat>(slots, Rat(0))
                           : mat_transpose_vec(a.rows, out.v);
  lp.value += dot(w, chi);
  out.lp = std::move(lp);
  return out;
}

LPResult iota_lp(const CutCertificate& a, const WeightedGraph& g, const Shore& s) {
  check_cert_dims(a, g);
  const long long slots = edge_slot_count(g.n());
  std::vector<Rat> chi = shore_chi(s);
  std::vector<Rat> w = g.weight_vector();
  std::vector<Rat> a_w = mat_vec(a.rows, w);
  // minimize <chi_S, w'>  s.t.  A w' = A w,  w' >= 0.
  LPProblem p;
  p.maximize = false;
  p.objective = chi;
  p.nonneg.assign(slots, true);
  for (int i = 0; i < a.k(); ++i) p.rows.push_back({a.rows[i], Rel::Eq, a_w[i]});
  return solve_lp(p);
}

bool verify_at_least_tau(const CutCertificate& a, const WeightedGraph& g, const Rat& tau) {
  check_cert_dims(a, g);
  check_shore_guard(g.n());
  if (tau < 0) throw std::invalid_argument("verify_at_least_tau: tau must be >= 0");
  if (tau > min_cut_brute(g).value)
    throw std::invalid_argument("verify_at_least_tau: tau exceeds lambda(g)");
  if (tau == 0) return true;
  for (long long idx = 0; idx < shore_count(g.n()); ++idx) {
    Shore s = shore_from_index(idx, g.n());
    LPResult alpha = alpha_lp(a, g, s);
    if (alpha.status != LPStatus::Optimal)
      throw std::logic_error("alpha LP must be bounded and feasible");
    if (alpha.value > shore_cut_weight(g, s) - tau) return false;
  }
  return true;
}

ConCertVerdict verify_con_cert(const CutCertificate& a, const WeightedGraph& g) {
  check_cert_dims(a, g);
  check_shore_guard(g.n());
  if (component_count(g) != 1)
    throw std::invalid_argument("verify_con_cert: graph must be connected");
  ConCertVerdict verdict;
  bool first = true;
  for (long long idx = 0; idx < shore_count(g.n()); ++idx) {
    Shore s = shore_from_index(idx, g.n());
    LPResult iota = iota_lp(a, g, s);
    if (iota.status != LPStatus::Optimal)
      throw std::logic_error("iota LP must be bounded and feasible");
    if (first || iota.value < verdict.tau_star) {
      verdict.tau_star = iota.value;
      first = false;
    }
    if (iota.value == 0) {
      // The optimal w' reweights g into a graph with an empty cut at S while
      // answering every query identically: an exact counterexample.
      verdict.ok = false;
      verdict.counterexample_shore = s.mask;
      verdict.counterexample_weights = iota.x;
      verdict.tau_star = 0;
      return verdict;
    }
  }
  verdict.ok = verdict.tau_star > 0;
  return verdict;
}

bool verify_mincut_cert(const CutCertificate& a, const WeightedGraph& g) {
  check_cert_dims(a, g);
  check_shore_guard(g.n());
  Rat lambda = min_cut_brute(g).value;
  if (lambda > 0 && !verify_at_least_tau(a, g, lambda)) return false;
  // Construction check: some minimum-cut shore's characteristic vector must
  // lie in the row space of A.
  int base_rank = exact_rank(a.rows);
  for (long long idx = 0; idx < shore_count(g.n()); ++idx) {
    Shore s = shore_from_index(idx, g.n());
    if (shore_cut_weight(g, s) != lambda) continue;
    RatMatrix extended = a.rows;
    extended.push_back(shore_chi(s));
    if (exact_rank(extended) == base_rank) return true;
  }
  return false;
}

CutRankWitness cert_to_witness(const CutCertificate& a, const WeightedGraph& g,
                               const Rat& tau) {
  check_shore_guard(g.n());
  if (!verify_at_least_tau(a, g, tau))
    throw std::invalid_argument("cert_to_witness: certificate does not verify at tau");
  std::vector<Rat> w = g.weight_vector();
  CutRankWitness x;
  x.n = g.n();
  x.tau = tau;
  for (long long idx = 0; idx < shore_count(g.n()); ++idx) {
    Shore s = shore_from_index(idx, g.n());
    BetaResult beta = beta_lp(a, g, s);
    // Duality puts beta(S) = alpha(S) <= w(cut) - tau, so the row-space
    // vector A^T v satisfies A^T v <= chi_S and <A^T v, w> >= tau.
    std::vector<Rat> chi = shore_chi(s);
    for (std::size_t j = 0; j < chi.size(); ++j)
      if (beta.witness_row[j] > chi[j])
        throw std::logic_error("cert_to_witness: witness row exceeds chi_S");
    if (dot(beta.witness_row, w) < tau)
      throw std::logic_error("cert_to_witness: witness row misses tau");
    x.shore_masks.push_back(s.mask);
    x.rows.push_back(std::move(beta.witness_row));
  }
  if (exact_rank(x.rows) > exact_rank(a.rows))
    throw std::logic_error("cert_to_witness: rank exceeds certificate rank");
  return x;
}

void check_witness_feasible(const CutRankWitness& x, const WeightedGraph& g) {
  if (x.n != g.n()) throw std::invalid_argument("witness dimension mismatch");
  check_shore_guard(x.n);
  if (x.rows.size() != x.shore_masks.size())
    throw std::invalid_argument("witness rows and shore masks differ in length");
  long long slots = edge_slot_count(x.n);
  std::vector<Rat> w = g.weight_vector();
  for (std::size_t i = 0; i < x.rows.size(); ++i) {
    if (static_cast<long long>(x.rows[i].size()) != slots)
      throw std::invalid_argument("witness row has wrong slot count");
    std::uint32_t mask = x.shore_masks[i];
    if (mask == 0 || mask > static_cast<std::uint32_t>(shore_count(x.n)))
      throw std::invalid_argument("witness shore mask out of range");
    Shore s{x.n, mask};
    std::vector<Rat> chi = shore_chi(s);
    for (long long j = 0; j < slots; ++j)
      if (x.rows[i][j] > chi[j])
        throw std::invalid_argument("witness violates X <= M_n");
    if (dot(x.rows[i], w) < x.tau)
      throw std::invalid_argument("witness violates X w >= tau");
  }
}

CutCertificate witness_to_cert(const CutRankWitness& x, const WeightedGraph& g) {
  check_witness_feasible(x, g);
  CutCertificate a;
  a.n = x.n;
  for (int idx : row_basis_indices(x.rows)) a.rows.push_back(x.rows[idx]);
  // A witness aligned to the full shore enumeration always verifies; a stated
  // row subset verifies only when its rows alone force the bound.
  if (!verify_at_least_tau(a, g, x.tau))
    throw std::logic_error("witness_to_cert: reconstructed certificate fails to verify");
  return a;
}

CycleRankReport cycle_rank_check(const CutRankWitness& x, int n) {
  if (n < 4 || n % 2 != 0)
    throw std::invalid_argument("cycle_rank_check: n must be even and >= 4");
  WeightedGraph cn = generate(GraphFamily::cycle(), n, 0);
  CycleRankReport report;
  report.bound = Rat(n, 4);
  if (x.tau <= 0) {
    report.reason = "tau must be positive";
    return report;
  }
  try {
    check_witness_feasible(x, cn);
  } catch (const std::exception& e) {
    report.reason = e.what();
    return report;
  }

  // Rows for the singleton shores at even vertices; columns for the cycle
  // edges e_{1,2}, e_{2,3}, ..., e_{n,1} in cycle order.
  std::vector<long long> row_of_mask(shore_count(n) + 1, -1);
  for (std::size_t i = 0; i < x.shore_masks.size(); ++i)
    row_of_mask[x.shore_masks[i]] = static_cast<long long>(i);
  std::vector<long long> cycle_cols;
  for (int v = 1; v <= n; ++v)
    cycle_cols.push_back(edge_slot_index(v, v % n + 1, n));

  RatMatrix y(n / 2, std::vector<Rat>(n, Rat(0)));
  for (int i = 0; i < n / 2; ++i) {
    int vertex = 2 * (i + 1);
    std::uint32_t mask = 1u << (vertex - 2);
    long long row = row_of_mask[mask];
    if (row < 0) {
      report.reason = "witness rows do not cover the even singleton shores";
      return report;
    }
    for (int j = 0; j < n; ++j) y[i][j] = x.rows[row][cycle_cols[j]];
  }

  // Fold column pairs (2i-1, 2i); the diagonal collects the only entries the
  // shore {2i} may have positive.
  RatMatrix y_prime(n / 2, std::vector<Rat>(n / 2, Rat(0)));
  for (int i = 0; i < n / 2; ++i)
    for (int j = 0; j < n / 2; ++j) y_prime[i][j] = y[i][2 * j] + y[i][2 * j + 1];

  for (int i = 0; i < n / 2; ++i) {
    if (y_prime[i][i] <= 0) {
      report.reason = "folded matrix diagonal not strictly positive";
      return report;
    }
    Rat off_l1 = 0;
    for (int j = 0; j < n / 2; ++j) {
      if (j == i) continue;
      if (y_prime[i][j] > 0) {
        report.reason = "folded matrix has positive off-diagonal entry";
        return report;
      }
      off_l1 -= y_prime[i][j];
    }
    // Row-normalized off-diagonal l1 stays below 1, so every eigenvalue is at
    // most 2 while the normalized trace is n/2: rank >= n/4.
    if (off_l1 > y_prime[i][i]) {
      report.reason = "normalized off-diagonal l1 exceeds 1";
      return report;
    }
  }

  report.rank_y_prime = exact_rank(y_prime);
  report.rank_x = exact_rank(x.rows);
  long long quarter = (n + 3) / 4;
  if (report.rank_y_prime < quarter)
    throw std::logic_error("cycle_rank_check: folded rank fell below n/4");
  if (report.rank_x < report.rank_y_prime)
    throw std::logic_error("cycle_rank_check: witness rank below folded rank");
  report.certified = true;
  return report;
}

WeightedGraph learn_simple_graph_one_query(QueryOracle& oracle) {
  const int n = oracle.n();
  if (n > 40) throw std::invalid_argument("learn_simple_graph_one_query: n exceeds guard (40)");
  const long long slots = edge_slot_count(n);
  std::vector<Rat> x(slots);
  Rat p = 1;
  for (long long j = 0; j < slots; ++j) {
    x[j] = p;
    p *= 2;
  }
  Rat answer = oracle.linear_query(x);
  if (!is_integer(answer) || answer < 0 || answer >= p)
    throw std::invalid_argument("one-query decode: answer is not a valid simple-graph code");
  Int code = numerator(answer);
  std::vector<std::tuple<int, int, Rat>> edges;
  for (long long j = 0; j < slots; ++j) {
    if (boost::multiprecision::bit_test(code, static_cast<unsigned>(j))) {
      auto [u, v] = edge_slot_pair(j, n);
      edges.emplace_back(u, v, Rat(1));
    }
  }
  return make_graph(n, edges);
}

namespace {

RatMatrix rows_from_json(const nlohmann::json& j) {
  RatMatrix rows;
  for (const auto& row : j) {
    std::vector<Rat> r;
    for (const auto& cell : row)
      r.push_back(cell.is_string() ? parse_rational(cell.get<std::string>())
                                   : Rat(cell.get<long long>()));
    rows.push_back(std::move(r));
  }
  return rows;
}

nlohmann::ordered_json rows_to_json(const RatMatrix& rows) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    auto jr = nlohmann::ordered_json::array();
    for (const auto& cell : row) jr.push_back(rat_to_string(cell));
    out.push_back(std::move(jr));
  }
  return out;
}

}  // namespace

CutCertificate read_certificate_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  CutCertificate a;
  a.n = j.at("n").get<int>();
  a.rows = rows_from_json(j.at("rows"));
  long long slots = edge_slot_count(a.n);
  for (const auto& row : a.rows)
    if (static_cast<long long>(row.size()) != slots)
      throw std::invalid_argument("certificate file: row width mismatch");
  return a;
}

std::string write_certificate_json(const CutCertificate& a) {
  nlohmann::ordered_json j;
  j["n"] = a.n;
  j["rows"] = rows_to_json(a.rows);
  return j.dump();
}

CutRankWitness read_witness_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  CutRankWitness x;
  x.n = j.at("n").get<int>();
  x.tau = parse_rational(j.at("tau").get<std::string>());
  x.rows = rows_from_json(j.at("rows"));
  if (j.contains("shores")) {
    for (const auto& m : j.at("shores"))
      x.shore_masks.push_back(m.get<std::uint32_t>());
  } else {
    for (std::size_t i = 0; i < x.rows.size(); ++i)
      x.shore_masks.push_back(static_cast<std::uint32_t>(i + 1));
  }
  if (x.shore_masks.size() != x.rows.size())
    throw std::invalid_argument("witness file: shores and rows differ in length");
  return x;
}

std::string write_witness_json(const CutRankWitness& x) {
  nlohmann::ordered_json j;
  j["n"] = x.n;
  j["tau"] = rat_to_string(x.tau);
  if (!x.full_enumeration()) j["shores"] = x.shore_masks;
  j["rows"] = rows_to_json(x.rows);
  return j.dump();
}

namespace {
std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}
}  // namespace

CutCertificate load_certificate_file(const std::string& path) {
  return read_certificate_json(slurp(path));
}

CutRankWitness load_witness_file(const std::string& path) {
  return read_witness_json(slurp(path));
}

}  // namespace gqc
