#include "gqc/oracle.hpp"

#include <sstream>

#include <json.hpp>

namespace gqc {

const char* query_model_name(QueryModel m) {
  switch (m) {
    case QueryModel::Matvec: return "matvec";
    case QueryModel::Master: return "master";
    case QueryModel::Cut: return "cut";
    case QueryModel::Cross: return "cross";
    case QueryModel::Bis: return "bis";
    case QueryModel::Linear: return "linear";
  }
  return "?";
}

void QueryLedger::charge(QueryModel m, long long amount) {
  if (amount < 0) throw std::invalid_argument("ledger charge must be non-negative");
  counts_[static_cast<int>(m)] += amount;
}

long long QueryLedger::total() const {
  long long t = 0;
  for (auto c : counts_) t += c;
  return t;
}

std::string QueryLedger::to_json() const {
  nlohmann::ordered_json j;
  for (int i = 0; i < kQueryModelCount; ++i)
    j[query_model_name(static_cast<QueryModel>(i))] = counts_[i];
  return j.dump();
}

QueryOracle::QueryOracle(WeightedGraph hidden, std::vector<QueryModel> enabled,
                         CrossMode cross_mode)
    : g_(std::move(hidden)), cross_mode_(cross_mode) {
  for (QueryModel m : enabled) enabled_[static_cast<int>(m)] = true;
  simple_ = g_.is_simple();
  integral_ = g_.has_integer_weights();
  adj_.assign(g_.n() + 1, BitVec(g_.n() + 1));
  nbr_.assign(g_.n() + 1, {});
  for (const auto& [e, w] : g_.edges()) {
    adj_[e.first].set(e.second);
    adj_[e.second].set(e.first);
    nbr_[e.first].emplace_back(e.second, w);
    nbr_[e.second].emplace_back(e.first, w);
  }
}

void QueryOracle::require(QueryModel m) const {
  if (!enabled(m))
    throw std::logic_error(std::string("query model disabled: ") + query_model_name(m));
}

std::vector<Rat> QueryOracle::matvec_query(const BitVec& x) {
  require(QueryModel::Matvec);
  if (x.size() != g_.n() + 1) throw std::invalid_argument("matvec_query: wrong dimension");
  ledger_.charge(QueryModel::Matvec);
  std::vector<Rat> out(g_.n() + 1, Rat(0));
  for (int v = 1; v <= g_.n(); ++v) {
    if (!x.get(v)) continue;
    for (const auto& [u, w] : nbr_[v]) out[u] += w;
  }
  return out;
}

BitVec QueryOracle::master_answer_uncharged(const BitVec& x) const {
  // [Ax]>0 o (1-x): OR the adjacency rows of the selected columns, then mask.
  BitVec out(g_.n() + 1);
  for (int v = 1; v <= g_.n(); ++v)
    if (x.get(v)) out.or_with(adj_[v]);
  out.and_not(x);
  return out;
}

BitVec QueryOracle::master_query(const BitVec& x) {
  require(QueryModel::Master);
  if (x.size() != g_.n() + 1) throw std::invalid_argument("master_query: wrong dimension");
  ledger_.charge(QueryModel::Master);
  return master_answer_uncharged(x);
}

Rat QueryOracle::cut_value(const BitVec& z) const {
  Rat total = 0;
  for (const auto& [e, w] : g_.edges())
    if (z.get(e.first) != z.get(e.second)) total += w;
  return total;
}

Rat QueryOracle::cut_query(const BitVec& z) {
  require(QueryModel::Cut);
  if (z.size() != g_.n() + 1) throw std::invalid_argument("cut_query: wrong dimension");
  ledger_.charge(QueryModel::Cut);
  return cut_value(z);
}

Rat QueryOracle::cross_query(const BitVec& y, const BitVec& z) {
  if (y.size() != g_.n() + 1 || z.size() != g_.n() + 1)
    throw std::invalid_argument("cross_query: wrong dimension");
  if (y.intersects(z)) throw std::invalid_argument("cross_query: y and z must be disjoint");
  Rat answer = 0;
  for (const auto& [e, w] : g_.edges()) {
    bool yu = y.get(e.first), yv = y.get(e.second);
    bool zu = z.get(e.first), zv = z.get(e.second);
    if ((yu && zv) || (yv && zu)) answer += w;
  }
  if (cross_mode_ == CrossMode::CutBacked) {
    // y^T A z = ((1-y)^T A y + (1-z)^T A z - (1-(y+z))^T A (y+z)) / 2,
    // three cut queries for disjoint y, z.
    require(QueryModel::Cut);
    ledger_.charge(QueryModel::Cut, 3);
  } else {
    require(QueryModel::Cross);
    ledger_.charge(QueryModel::Cross);
  }
  return answer;
}

int QueryOracle::bis_query(const BitVec& y, const BitVec& z) {
  require(QueryModel::Bis);
  if (y.size() != g_.n() + 1 || z.size() != g_.n() + 1)
    throw std::invalid_argument("bis_query: wrong dimension");
  if (y.intersects(z)) throw std::invalid_argument("bis_query: y and z must be disjoint");
  if (!simple_) throw std::logic_error("bis_query: hidden graph is not simple");
  ledger_.charge(QueryModel::Bis);
  for (const auto& [e, w] : g_.edges()) {
    bool yu = y.get(e.first), yv = y.get(e.second);
    bool zu = z.get(e.first), zv = z.get(e.second);
    if ((yu && zv) || (yv && zu)) return 1;
  }
  return 0;
}

Rat QueryOracle::linear_query(const std::vector<Rat>& x) {
  require(QueryModel::Linear);
  if (static_cast<long long>(x.size()) != edge_slot_count(g_.n()))
    throw std::invalid_argument("linear_query: wrong dimension");
  ledger_.charge(QueryModel::Linear);
  Rat answer = 0;
  for (const auto& [e, w] : g_.edges())
    answer += w * x[edge_slot_index(e.first, e.second, g_.n())];
  return answer;
}

MatvecMasterAdapter::MatvecMasterAdapter(QueryOracle& base) : base_(base) {
  if (!base.enabled(QueryModel::Matvec))
    throw std::logic_error("master_from_matvec: matvec model disabled");
}

BitVec MatvecMasterAdapter::master_query(const BitVec& x) {
  ++calls_;
  std::vector<Rat> ax = base_.matvec_query(x);
  BitVec out(base_.n() + 1);
  for (int v = 1; v <= base_.n(); ++v)
    if (!x.get(v) && ax[v] > 0) out.set(v);
  return out;
}

}  // namespace gqc
