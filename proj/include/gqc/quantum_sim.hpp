#pragma once

#include <cstdint>

#include "gqc/oracle.hpp"
#include "gqc/rng.hpp"

namespace gqc {

// Query bills for the classically simulated quantum subroutines.  No quantum
// state is simulated; the subroutines' input-output behaviour and query costs
// are reproduced and charged to the ledger.
struct ChargePolicy {
  double c_or = 2.0;   // OR-query constant of the sqrt(n) group-testing routine
  double c_rep = 1.0;   // error-reduction repetitions: ceil(c_rep * ln n)
  bool inject_failures = false;  // model the 1 - 1/n^3 guarantee when true

  // Cross queries needed to learn an n-entry vector mod K exactly.
  static long long bv_cross_queries(const Rat& K);
  long long or_learner_bis_queries(int n) const;
  long long repetitions(int n) const;
};

// Master queries answered exactly but billed as the mod-K vector-learning
// routine run through cut queries: each master query charges
// 3 * ceil(log2(2 M n)) cut queries (cross queries are cut-backed).
// Requires integer weights in {0, ..., M-1}.
class CutMasterAdapter final : public MasterOracle {
 public:
  CutMasterAdapter(QueryOracle& base, ChargePolicy policy = {});
  int n() const override { return base_.n(); }
  BitVec master_query(const BitVec& x) override;
  long long master_calls() const override { return calls_; }
  long long cut_charge_per_query() const { return cut_per_query_; }
  const Rat& modulus() const { return modulus_; }

 private:
  QueryOracle& base_;
  ChargePolicy policy_;
  Rat modulus_;             // K = 2 M n
  long long cut_per_query_ = 0;
  long long calls_ = 0;
};

// Master queries billed as ceil(c_or sqrt(n)) * ceil(c_rep ln n) BIS queries.
// With failure injection enabled, each answer is independently corrupted with
// probability 1/n^3 by flipping one coordinate where the query is zero.
class BisMasterAdapter final : public MasterOracle {
 public:
  BisMasterAdapter(QueryOracle& base, ChargePolicy policy, std::uint64_t seed);
  int n() const override { return base_.n(); }
  BitVec master_query(const BitVec& x) override;
  long long master_calls() const override { return calls_; }
  long long bis_charge_per_query() const { return bis_per_query_; }
  long long injected_corruptions() const { return corruptions_; }

 private:
  QueryOracle& base_;
  ChargePolicy policy_;
  Rng rng_;
  long long bis_per_query_ = 0;
  long long calls_ = 0;
  long long corruptions_ = 0;
  double failure_rate_ = 0.0;
};

}  // namespace gqc
