#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gqc/connectivity.hpp"
#include "gqc/graph.hpp"
#include "gqc/oracle.hpp"
#include "gqc/quantum_sim.hpp"

namespace gqc {

enum class AlgoModel { Master, Matvec, CutQuantum, BisQuantum };

const char* model_name(AlgoModel m);
AlgoModel parse_model(const std::string& text);

// Owns one hidden-graph oracle plus the adapter the algorithm runs against.
struct OracleSession {
  std::unique_ptr<QueryOracle> oracle;
  std::unique_ptr<MasterOracle> master;

  const QueryLedger& ledger() const { return oracle->ledger(); }
};

OracleSession make_session(const WeightedGraph& g, AlgoModel model, std::uint64_t seed,
                           bool inject_failures = false);

struct TrialRecord {
  int trial = 0;
  bool success = false;
  int forest_edges = 0;
  long long master_calls = 0;
  std::array<long long, kQueryModelCount> ledger{};
  std::vector<int> q_trace;  // filled when traces are requested
};

struct ExperimentReport {
  std::string family;
  int n = 0;
  std::string model;
  int trials = 0;
  std::uint64_t seed = 0;
  int successes = 0;
  double wall_ms = 0.0;
  long long per_run_master_budget = 0;  // T * c_rofa * (ceil(log2 n)+1)^3
  std::vector<TrialRecord> records;

  std::string to_json(bool include_traces = false) const;
  std::string to_csv() const;
  double mean_master_calls() const;
  long long max_master_calls() const;
};

struct ExperimentOptions {
  int trials = 1;
  std::uint64_t seed = 0;
  int threads = 1;
  bool record_traces = false;
  bool inject_failures = false;
};

// Per trial: derive seed, build a fresh oracle session, run the spanning
// forest algorithm and verify the output against the hidden graph.
ExperimentReport run_spanning_forest_experiment(const WeightedGraph& g,
                                                const std::string& family_label,
                                                AlgoModel model,
                                                const ExperimentOptions& options);

struct ScalingRow {
  int n = 0;
  double mean_master = 0.0;
  double normalized = 0.0;  // mean / ceil(log2 n)^4
};

struct ScalingReport {
  std::string family;
  std::string model;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<ScalingRow> rows;

  std::string to_json() const;
  std::string to_csv() const;
};

ScalingReport run_scaling(const GraphFamily& family, const std::vector<int>& n_values,
                          AlgoModel model, const ExperimentOptions& options);

}  // namespace gqc
