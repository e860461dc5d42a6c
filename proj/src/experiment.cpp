#include "gqc/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace gqc {

const char* model_name(AlgoModel m) {
  switch (m) {
    case AlgoModel::Master: return "master";
    case AlgoModel::Matvec: return "matvec";
    case AlgoModel::CutQuantum: return "cut-quantum";
    case AlgoModel::BisQuantum: return "bis-quantum";
  }
  return "?";
}

AlgoModel parse_model(const std::string& text) {
  if (text == "master") return AlgoModel::Master;
  if (text == "matvec") return AlgoModel::Matvec;
  if (text == "cut-quantum") return AlgoModel::CutQuantum;
  if (text == "bis-quantum") return AlgoModel::BisQuantum;
  throw std::invalid_argument("unknown model: " + text);
}

OracleSession make_session(const WeightedGraph& g, AlgoModel model, std::uint64_t seed,
                           bool inject_failures) {
  OracleSession s;
  switch (model) {
    case AlgoModel::Master:
      s.oracle = std::make_unique<QueryOracle>(g, std::vector<QueryModel>{QueryModel::Master});
      s.master = std::make_unique<NativeMasterOracle>(*s.oracle);
      break;
    case AlgoModel::Matvec:
      s.oracle = std::make_unique<QueryOracle>(g, std::vector<QueryModel>{QueryModel::Matvec});
      s.master = std::make_unique<MatvecMasterAdapter>(*s.oracle);
      break;
    case AlgoModel::CutQuantum:
      s.oracle = std::make_unique<QueryOracle>(g, std::vector<QueryModel>{QueryModel::Cut});
      s.master = std::make_unique<CutMasterAdapter>(*s.oracle);
      break;
    case AlgoModel::BisQuantum: {
      s.oracle = std::make_unique<QueryOracle>(g, std::vector<QueryModel>{QueryModel::Bis});
      ChargePolicy policy;
      policy.inject_failures = inject_failures;
      s.master = std::make_unique<BisMasterAdapter>(*s.oracle, policy,
                                                    derive_seed(seed, 0x696e6a656374ULL));
      break;
    }
  }
  return s;
}

ExperimentReport run_spanning_forest_experiment(const WeightedGraph& g,
                                                const std::string& family_label,
                                                AlgoModel model,
                                                const ExperimentOptions& options) {
  ExperimentReport report;
  report.family = family_label;
  report.n = g.n();
  report.model = model_name(model);
  report.trials = options.trials;
  report.seed = options.seed;
  report.records.resize(options.trials);

  SpanningForestConfig base_cfg = SpanningForestConfig::standard(g.n(), 0);
  int lg = g.n() >= 1 ? ceil_log2_int(g.n()) : 0;
  report.per_run_master_budget = static_cast<long long>(base_cfg.rounds) * kRofaBudget *
                                 (lg + 1) * (lg + 1) * (lg + 1);

  auto run_trial = [&](int t) {
    std::uint64_t trial_seed = derive_seed(options.seed, 0x747269616cULL + t);
    OracleSession session = make_session(g, model, trial_seed, options.inject_failures);
    SpanningForestConfig cfg = SpanningForestConfig::standard(g.n(), trial_seed);
    TrialRecord rec;
    rec.trial = t;
    Forest forest;
    if (options.record_traces) {
      rec.q_trace = rounds_progress_trace(g, *session.master, cfg, &forest);
    } else {
      forest = find_spanning_forest(*session.master, cfg);
    }
    rec.success = is_spanning_forest(g, forest);
    rec.forest_edges = static_cast<int>(forest.size());
    rec.master_calls = session.master->master_calls();
    for (int m = 0; m < kQueryModelCount; ++m)
      rec.ledger[m] = session.ledger().count(static_cast<QueryModel>(m));
    report.records[t] = std::move(rec);
  };

  auto t0 = std::chrono::steady_clock::now();
  int threads = std::max(1, options.threads);
  if (threads == 1) {
    for (int t = 0; t < options.trials; ++t) run_trial(t);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          int t = next.fetch_add(1);
          if (t >= options.trials) return;
          run_trial(t);
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  auto t1 = std::chrono::steady_clock::now();
  report.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

  for (const auto& rec : report.records) report.successes += rec.success;
  return report;
}

double ExperimentReport::mean_master_calls() const {
  if (records.empty()) return 0.0;
  double total = 0.0;
  for (const auto& r : records) total += static_cast<double>(r.master_calls);
  return total / static_cast<double>(records.size());
}

long long ExperimentReport::max_master_calls() const {
  long long best = 0;
  for (const auto& r : records) best = std::max(best, r.master_calls);
  return best;
}

namespace {

nlohmann::ordered_json aggregate(const std::vector<long long>& values) {
  nlohmann::ordered_json j;
  long long lo = 0, hi = 0;
  double mean = 0.0;
  if (!values.empty()) {
    lo = hi = values[0];
    for (long long v : values) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      mean += static_cast<double>(v);
    }
    mean /= static_cast<double>(values.size());
  }
  j["min"] = lo;
  j["mean"] = mean;
  j["max"] = hi;
  return j;
}

}  // namespace

std::string ExperimentReport::to_json(bool include_traces) const {
  nlohmann::ordered_json j;
  j["command"] = "spanning-forest";
  j["family"] = family;
  j["n"] = n;
  j["model"] = model;
  j["trials"] = trials;
  j["seed"] = seed;
  j["successes"] = successes;
  j["per_run_master_budget"] = per_run_master_budget;

  std::vector<long long> sizes;
  for (const auto& r : records) sizes.push_back(r.forest_edges);
  j["forest_edges"] = aggregate(sizes);

  nlohmann::ordered_json ledger_agg;
  bool any_master_calls = false;
  for (int m = 0; m < kQueryModelCount; ++m) {
    std::vector<long long> vals;
    for (const auto& r : records) vals.push_back(r.ledger[m]);
    bool nonzero = false;
    for (long long v : vals) nonzero = nonzero || v != 0;
    if (nonzero) ledger_agg[query_model_name(static_cast<QueryModel>(m))] = aggregate(vals);
  }
  {
    std::vector<long long> vals;
    for (const auto& r : records) {
      vals.push_back(r.master_calls);
      any_master_calls = any_master_calls || r.master_calls != 0;
    }
    if (any_master_calls) ledger_agg["master_calls"] = aggregate(vals);
  }
  j["ledger"] = ledger_agg;

  auto trials_json = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    nlohmann::ordered_json tj;
    tj["trial"] = r.trial;
    tj["success"] = r.success;
    tj["forest_edges"] = r.forest_edges;
    tj["master_calls"] = r.master_calls;
    nlohmann::ordered_json lj;
    for (int m = 0; m < kQueryModelCount; ++m)
      if (r.ledger[m] != 0) lj[query_model_name(static_cast<QueryModel>(m))] = r.ledger[m];
    tj["ledger"] = lj;
    if (include_traces && !r.q_trace.empty()) tj["q_trace"] = r.q_trace;
    trials_json.push_back(std::move(tj));
  }
  j["trial_records"] = trials_json;
  j["wall_ms"] = wall_ms;
  return j.dump(2);
}

std::string ExperimentReport::to_csv() const {
  std::ostringstream out;
  out << "trial,success,forest_edges,master_calls";
  for (int m = 0; m < kQueryModelCount; ++m)
    out << "," << query_model_name(static_cast<QueryModel>(m));
  out << "\n";
  for (const auto& r : records) {
    out << r.trial << "," << (r.success ? 1 : 0) << "," << r.forest_edges << ","
        << r.master_calls;
    for (int m = 0; m < kQueryModelCount; ++m) out << "," << r.ledger[m];
    out << "\n";
  }
  return out.str();
}

ScalingReport run_scaling(const GraphFamily& family, const std::vector<int>& n_values,
                          AlgoModel model, const ExperimentOptions& options) {
  ScalingReport report;
  report.family = family.name();
  report.model = model_name(model);
  report.trials = options.trials;
  report.seed = options.seed;
  for (int n : n_values) {
    WeightedGraph g = generate(family, n, derive_seed(options.seed, 0x67656eULL + n));
    ExperimentOptions per = options;
    per.seed = derive_seed(options.seed, 0x7363616cULL + n);
    ExperimentReport r = run_spanning_forest_experiment(g, family.name(), model, per);
    ScalingRow row;
    row.n = n;
    row.mean_master = r.mean_master_calls();
    double lg4 = std::pow(static_cast<double>(ceil_log2_int(n)), 4.0);
    row.normalized = row.mean_master / lg4;
    report.rows.push_back(row);
  }
  return report;
}

std::string ScalingReport::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = "scaling";
  j["family"] = family;
  j["model"] = model;
  j["trials"] = trials;
  j["seed"] = seed;
  auto rows_json = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json rj;
    rj["n"] = row.n;
    rj["mean_master"] = row.mean_master;
    rj["normalized"] = row.normalized;
    rows_json.push_back(std::move(rj));
  }
  j["rows"] = rows_json;
  return j.dump(2);
}

std::string ScalingReport::to_csv() const {
  std::ostringstream out;
  out << "n,mean_master,normalized\n";
  for (const auto& row : rows)
    out << row.n << "," << row.mean_master << "," << row.normalized << "\n";
  return out.str();
}

}  // namespace gqc
