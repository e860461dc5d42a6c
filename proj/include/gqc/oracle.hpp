#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "gqc/bitvec.hpp"
#include "gqc/graph.hpp"
#include "gqc/rational.hpp"

namespace gqc {

enum class QueryModel : int { Matvec = 0, Master, Cut, Cross, Bis, Linear };
constexpr int kQueryModelCount = 6;
const char* query_model_name(QueryModel m);

// Per-model query counters.  Counters only increase; every oracle operation
// increments exactly the counters its contract states.
class QueryLedger {
 public:
  void charge(QueryModel m, long long amount = 1);
  long long count(QueryModel m) const { return counts_[static_cast<int>(m)]; }
  long long total() const;
  std::string to_json() const;

 private:
  std::array<long long, kQueryModelCount> counts_{};
};

enum class CrossMode { CutBacked, Native };

// The only access path algorithms get to a hidden graph.  Which query models
// are enabled is fixed at construction; disabled models throw.
class QueryOracle {
 public:
  QueryOracle(WeightedGraph hidden, std::vector<QueryModel> enabled,
              CrossMode cross_mode = CrossMode::CutBacked);

  int n() const { return g_.n(); }
  // Problem promises, not query answers: the weight bound M and the simple /
  // integer-weight flags are part of the input model.
  const Rat& max_weight_bound() const { return g_.max_weight_bound(); }
  bool simple_promise() const { return simple_; }
  bool integer_weight_promise() const { return integral_; }

  bool enabled(QueryModel m) const { return enabled_[static_cast<int>(m)]; }

  QueryLedger& ledger() { return ledger_; }
  const QueryLedger& ledger() const { return ledger_; }

  // x Boolean, length n (index 0 unused internally; callers use 1..n).
  std::vector<Rat> matvec_query(const BitVec& x);
  BitVec master_query(const BitVec& x);
  Rat cut_query(const BitVec& z);
  Rat cross_query(const BitVec& y, const BitVec& z);
  int bis_query(const BitVec& y, const BitVec& z);
  Rat linear_query(const std::vector<Rat>& x);

  // Adapter-internal: the exact master answer with no ledger charge.  The
  // quantum-simulation adapters reproduce this answer while billing their own
  // query models.
  BitVec master_answer_uncharged(const BitVec& x) const;

  // Test-only escape hatch used by ground-truth checks.
  const WeightedGraph& hidden_graph_for_testing() const { return g_; }

 private:
  void require(QueryModel m) const;
  Rat cut_value(const BitVec& z) const;

  WeightedGraph g_;
  std::array<bool, kQueryModelCount> enabled_{};
  CrossMode cross_mode_;
  QueryLedger ledger_;
  bool simple_ = false;
  bool integral_ = false;
  std::vector<BitVec> adj_;                       // positivity rows, 1..n
  std::vector<std::vector<std::pair<int, Rat>>> nbr_;  // weighted adjacency, 1..n
};

// Interface the connectivity algorithms run against: anything that can answer
// master queries [Ax]>0 o (1-x) and report how many were asked.
class MasterOracle {
 public:
  virtual ~MasterOracle() = default;
  virtual int n() const = 0;
  virtual BitVec master_query(const BitVec& x) = 0;
  // Number of master_query invocations on this interface (distinct from the
  // ledger, which bills whatever model backs the adapter).
  virtual long long master_calls() const = 0;
};

// Native master model: each query charges ledger.master once.
class NativeMasterOracle final : public MasterOracle {
 public:
  explicit NativeMasterOracle(QueryOracle& base) : base_(base) {}
  int n() const override { return base_.n(); }
  BitVec master_query(const BitVec& x) override {
    ++calls_;
    return base_.master_query(x);
  }
  long long master_calls() const override { return calls_; }

 private:
  QueryOracle& base_;
  long long calls_ = 0;
};

// Master queries simulated by thresholding a single matrix-vector
// multiplication query: [Ax]>0 = [A]>0 v x coordinatewise for non-negative A.
class MatvecMasterAdapter final : public MasterOracle {
 public:
  explicit MatvecMasterAdapter(QueryOracle& base);
  int n() const override { return base_.n(); }
  BitVec master_query(const BitVec& x) override;
  long long master_calls() const override { return calls_; }

 private:
  QueryOracle& base_;
  long long calls_ = 0;
};

}  // namespace gqc
