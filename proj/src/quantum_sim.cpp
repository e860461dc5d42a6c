#include "gqc/quantum_sim.hpp"

#include <cmath>
#include <stdexcept>

namespace gqc {

long long ChargePolicy::bv_cross_queries(const Rat& K) {
  if (K <= 1) throw std::invalid_argument("modulus must exceed 1");
  // ceil(log2 K) for rational K.
  long long q = 0;
  Rat p = 1;
  while (p < K) {
    p *= 2;
    ++q;
  }
  return std::max<long long>(q, 1);
}

long long ChargePolicy::repetitions(int n) const {
  return std::max<long long>(
      1, static_cast<long long>(std::ceil(c_rep * std::log(static_cast<double>(std::max(2, n))))));
}

long long ChargePolicy::or_learner_bis_queries(int n) const {
  long long per_trial = static_cast<long long>(
      std::ceil(c_or * std::sqrt(static_cast<double>(n))));
  return std::max<long long>(1, per_trial) * repetitions(n);
}

CutMasterAdapter::CutMasterAdapter(QueryOracle& base, ChargePolicy policy)
    : base_(base), policy_(policy) {
  if (!base.enabled(QueryModel::Cut))
    throw std::logic_error("master_from_cut: cut model disabled");
  if (!base.integer_weight_promise())
    throw std::invalid_argument("master_from_cut: weights must be integers below M");
  modulus_ = Rat(2) * base.max_weight_bound() * base.n();
  cut_per_query_ = 3 * ChargePolicy::bv_cross_queries(modulus_);
}

BitVec CutMasterAdapter::master_query(const BitVec& x) {
  ++calls_;
  // Entries of Az o (1-z) lie in {0, ..., n(M-1)}, so mod K = 2Mn the vector
  // is learned without error; the answer equals the native master answer.
  base_.ledger().charge(QueryModel::Cut, cut_per_query_);
  return base_.master_answer_uncharged(x);
}

BisMasterAdapter::BisMasterAdapter(QueryOracle& base, ChargePolicy policy, std::uint64_t seed)
    : base_(base), policy_(policy), rng_(derive_seed(seed, 0x62697371ULL)) {
  if (!base.enabled(QueryModel::Bis))
    throw std::logic_error("master_from_bis: bis model disabled");
  if (!base.simple_promise())
    throw std::invalid_argument("master_from_bis: hidden graph must be simple");
  bis_per_query_ = policy_.or_learner_bis_queries(base.n());
  double n3 = std::pow(static_cast<double>(base.n()), 3.0);
  failure_rate_ = policy_.inject_failures ? 1.0 / n3 : 0.0;
}

BitVec BisMasterAdapter::master_query(const BitVec& x) {
  ++calls_;
  base_.ledger().charge(QueryModel::Bis, bis_per_query_);
  BitVec answer = base_.master_answer_uncharged(x);
  if (failure_rate_ > 0.0 && rng_.bernoulli(failure_rate_)) {
    // Corrupt one coordinate where the query is zero (the masked coordinates
    // are pinned to zero by the model itself).
    std::vector<int> eligible;
    for (int v = 1; v <= base_.n(); ++v)
      if (!x.get(v)) eligible.push_back(v);
    if (!eligible.empty()) {
      answer.flip(eligible[static_cast<std::size_t>(rng_.below(eligible.size()))]);
      ++corruptions_;
    }
  }
  return answer;
}

}  // namespace gqc
