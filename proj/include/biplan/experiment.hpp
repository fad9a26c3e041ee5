#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "biplan/backends.hpp"
#include "biplan/json_io.hpp"
#include "biplan/strategy.hpp"

namespace biplan {

// ---------------------------------------------------------------------------
// Configuration (plain-text key-value file with sections)
// ---------------------------------------------------------------------------

struct ExperimentConfig {
  // [domain]
  DomainKind domain = DomainKind::graph;
  GraphProblemParams graph_params;
  ArrayProblemParams array_params{{ArrayFn::repeat, ArrayFn::cut, ArrayFn::shift_left,
                                   ArrayFn::shift_right}};
  std::string statements_file;  // blocks: optional PlanBench statement file

  // [run]
  int trials = 200;
  std::uint64_t base_seed = 1234;
  int workers = 1;
  bool paired = true;
  int max_attempts = 6;
  std::uint64_t direction_coin_seed = 0;

  // [strategies]
  std::vector<StrategyKind> strategies{StrategyKind::Fwd};

  // [temperatures]
  double first_temperature = 0.0;
  std::optional<double> later_temperature;

  // [analysis]
  std::vector<double> bin_edges;  // empty: fixed width 5 centered at 0
  bool wilson = false;

  // [backend]
  std::string backend_type = "simulated";
  SimulatedPlannerParams sim_params;
  HttpEndpointConfig http_config;
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

std::unique_ptr<Backend> make_backend(const ExperimentConfig& config);

// ---------------------------------------------------------------------------
// Records
// ---------------------------------------------------------------------------

struct TrialRecord {
  int trial = 0;
  StrategyKind strategy = StrategyKind::Fwd;
  std::uint64_t problem_seed = 0;
  std::uint64_t trial_seed = 0;
  std::string backend_id;
  Problem problem;
  StrategyConfig strategy_config;
  StrategyOutcome outcome;
  bool success = false;
  bool verification_error = false;
  int unique_candidates = 0;
};

Json record_to_json(const TrialRecord& record);

// Scalar fields needed by the aggregations; transcripts and plans are not
// reloaded.
std::optional<TrialRecord> record_from_json(const Json& j);

// ---------------------------------------------------------------------------
// Statistics
// ---------------------------------------------------------------------------

// p = successes/n, se = sqrt(p(1-p)/n). Throws EmptyInput when n == 0.
std::pair<double, double> success_rate_with_se(int successes, int n);

// Wilson 95% interval (lo, hi).
std::pair<double, double> wilson_interval(int successes, int n);

// "82.5±2.7%" with one decimal on both figures.
std::string format_rate(double p, double se);

struct BinStat {
  double lo = 0.0;
  double hi = 0.0;
  int n = 0;
  int successes = 0;
  double p = 0.0;
  double se = 0.0;
};

// Groups (difference, success) pairs into [e_i, e_i+1) bins. Edges must be
// strictly ascending (UnsortedEdges otherwise); empty bins are emitted with
// n = 0.
std::vector<BinStat> bin_by_cost_difference(const std::vector<std::pair<int, bool>>& samples,
                                            const std::vector<double>& edges);

// Fixed-width bins of width 5 centered at 0 covering [min, max].
std::vector<double> default_bin_edges(int min_difference, int max_difference);

double diversity(const std::vector<TrialRecord>& records);
double verification_error_rate(const std::vector<TrialRecord>& records);

struct StrategyReport {
  StrategyKind strategy = StrategyKind::Fwd;
  int n = 0;
  int successes = 0;
  double p = 0.0;
  double se = 0.0;
  double diversity = 0.0;
  double verification_error_rate = 0.0;
  std::vector<BinStat> bins;
  std::optional<double> reason_match_rate;
};

struct ExperimentReport {
  std::vector<StrategyReport> strategies;
  std::vector<double> bin_edges;
  std::uint64_t base_seed = 0;
  int trials = 0;
  bool paired = true;
  std::string backend_id;
};

ExperimentReport analyze(const std::vector<TrialRecord>& records,
                         const std::vector<double>& bin_edges_or_empty);

// ---------------------------------------------------------------------------
// Runner
// ---------------------------------------------------------------------------

// Runs every configured strategy on the paired problem instances (seed i =
// base_seed + trial index), appends one JSONL record per (trial, strategy) in
// canonical order regardless of worker count, and skips records already in
// the archive so interrupted runs resume where they stopped.
struct RunResult {
  std::vector<TrialRecord> records;
  ExperimentReport report;
};

RunResult run_experiment(const ExperimentConfig& config, const std::string& archive_path);

Problem problem_for_trial(const ExperimentConfig& config, int trial,
                          const std::vector<std::string>& statements);
std::vector<std::string> load_statements(const std::string& path);

// Success-vs-M curves on paired instances.
struct SweepPoint {
  int max_attempts = 0;
  StrategyKind strategy = StrategyKind::Fwd;
  int n = 0;
  double p = 0.0;
  double se = 0.0;
  double diversity = 0.0;
};

std::vector<SweepPoint> attempt_sweep(const ExperimentConfig& config,
                                      const std::vector<int>& m_values);

// ---------------------------------------------------------------------------
// Report files
// ---------------------------------------------------------------------------

std::vector<TrialRecord> load_archive(const std::string& path);

void write_success_csv(const ExperimentReport& report, const std::string& path, bool wilson);
void write_bins_csv(const ExperimentReport& report, const std::string& path);
void write_sweep_csv(const std::vector<SweepPoint>& points, const std::string& path);
void write_bins_svg(const ExperimentReport& report, const std::string& path);
void write_sweep_svg(const std::vector<SweepPoint>& points, const std::string& path,
                     bool plot_diversity);
std::string report_text(const ExperimentReport& report);

}  // namespace biplan
