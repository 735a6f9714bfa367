#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lcsl/policy.hpp"
#include "lcsl/scenarios.hpp"

namespace lcsl {

// Stream keys used inside one replication; the replication seed itself is
// derive_seed(base_seed, replication_index). Train, fit and test draws come
// from separate child streams so test data is identical across train sizes
// and penalty levels of the same replication.
inline constexpr std::uint64_t kTrainStreamKey = 1;
inline constexpr std::uint64_t kFitStreamKey = 2;
inline constexpr std::uint64_t kTestStreamKey = 3;

struct ExperimentConfig {
  int scenario_id{1};
  std::vector<int> n_train_list{50, 100, 200, 400, 800};
  int replications{50};
  int n_test{1000};
  std::vector<int> percentiles{95};
  int restarts{10};
  int grid_size{50};
  std::uint64_t base_seed{0};
  int workers{1};
  std::ostream* progress{nullptr};  // progress lines, one per replication
};

/// All validation problems at once; empty when the config is usable.
std::vector<std::string> validate_config(const ExperimentConfig& config);

struct SummaryRow {
  int scenario_id{0};
  int n_train{0};
  int percentile{0};
  double mean_vhat{0.0};
  double std_vhat{0.0};  // sample std, n-1 denominator; 0 when <= 1 completed
  int completed{0};
  int failed{0};
  double wall_time_sec{0.0};  // compute seconds spent on the cell
};

struct ExperimentSummary {
  std::vector<SummaryRow> rows;
};

struct ReplicationOutcome {
  bool ok{false};
  std::vector<double> vhat_by_percentile;
  double oracle_vhat{0.0};  // value of the true optimal-dose policy on the
                            // same test draw; an upper bound on every vhat
  std::string error;
};

/// One replication: draw a training set, fit by marginal-likelihood restarts,
/// draw test covariates, recommend a dose per test subject and per penalty,
/// and average the true expected reward of the recommendations. The fitted
/// model is shared across penalties, so every penalty sees identical data.
/// With `oracle_policy` the recommendation step is bypassed and the true
/// optimal dose is used instead (no fitting happens).
ReplicationOutcome run_replication_all(const ScenarioSpec& spec, int n_train,
                                       int n_test,
                                       const std::vector<PenaltySpec>& penalties,
                                       int restarts, int grid_size,
                                       std::uint64_t rep_seed,
                                       bool oracle_policy = false);

/// Single-penalty convenience form; throws on a failed replication.
double run_replication(const ScenarioSpec& spec, int n_train, int n_test,
                       const PenaltySpec& penalty, int restarts, int grid_size,
                       std::uint64_t rep_seed);

/// Full protocol: every (n_train, replication) cell once, aggregated into
/// one row per (n_train, percentile). Replication seeds depend only on
/// base_seed and the replication index, so cells are paired across train
/// sizes and penalty levels. Failed replications are excluded and counted.
ExperimentSummary run_experiment(const ExperimentConfig& config);

/// run_experiment with the percentile grid 50..99 step 1 (paired seeds
/// across the whole sweep by construction).
ExperimentSummary penalty_sweep(ExperimentConfig config);

/// Inclusive percentile range helper for CLI-style specs.
std::vector<int> percentile_range(int lo, int hi, int step);

}  // namespace lcsl
