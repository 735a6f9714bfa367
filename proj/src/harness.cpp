#include "lcsl/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

namespace lcsl {
namespace {

struct CellStats {
  double mean{0.0};
  double std_dev{0.0};
};

// Two-pass mean / sample std (n-1 denominator).
CellStats aggregate(const std::vector<double>& values) {
  CellStats out;
  if (values.empty()) {
    out.mean = std::numeric_limits<double>::quiet_NaN();
    out.std_dev = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / static_cast<double>(values.size());
  if (values.size() < 2) return out;
  double ss = 0.0;
  for (double v : values) ss += (v - out.mean) * (v - out.mean);
  out.std_dev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  return out;
}

}  // namespace

std::vector<std::string> validate_config(const ExperimentConfig& config) {
  std::vector<std::string> problems;
  if (config.scenario_id < 1 || config.scenario_id > 5) {
    problems.push_back("scenario must lie in 1..5");
  }
  if (config.n_train_list.empty()) {
    problems.push_back("n-train list must not be empty");
  }
  for (int n : config.n_train_list) {
    if (n < 1) {
      problems.push_back("every n-train must be >= 1");
      break;
    }
  }
  if (config.replications < 1) problems.push_back("replications must be >= 1");
  if (config.n_test < 1) problems.push_back("n-test must be >= 1");
  if (config.percentiles.empty()) {
    problems.push_back("percentile list must not be empty");
  }
  for (int pct : config.percentiles) {
    if (pct < 50 || pct > 99) {
      problems.push_back("every percentile must lie in [50, 99]");
      break;
    }
  }
  if (config.restarts < 1) problems.push_back("restarts must be >= 1");
  if (config.grid_size < 2) problems.push_back("grid size must be >= 2");
  if (config.workers < 1) problems.push_back("workers must be >= 1");
  return problems;
}

ReplicationOutcome run_replication_all(const ScenarioSpec& spec, int n_train,
                                       int n_test,
                                       const std::vector<PenaltySpec>& penalties,
                                       int restarts, int grid_size,
                                       std::uint64_t rep_seed,
                                       bool oracle_policy) {
  ReplicationOutcome out;
  const CounterRng rep_rng(rep_seed);
  try {
    CounterRng test_rng = rep_rng.derive(kTestStreamKey);
    const Matrix test_c = sample_covariates(spec, n_test, test_rng);

    std::vector<double> sums(penalties.size(), 0.0);
    double oracle_sum = 0.0;

    if (oracle_policy) {
      for (Index i = 0; i < test_c.rows(); ++i) {
        const auto c = test_c.row(i).transpose();
        const double q_opt = true_q(spec, c, optimal_dose(spec, c));
        oracle_sum += q_opt;
        for (double& s : sums) s += q_opt;
      }
    } else {
      CounterRng train_rng = rep_rng.derive(kTrainStreamKey);
      const Dataset train = sample_dataset(spec, n_train, train_rng);
      const FittedGp model = optimize_hyperparameters(
          train, restarts, rep_rng.derive(kFitStreamKey));

      for (Index i = 0; i < test_c.rows(); ++i) {
        const auto c = test_c.row(i).transpose();
        oracle_sum += true_q(spec, c, optimal_dose(spec, c));
        const DoseCoefficients coeffs = dose_coefficients(model, c);
        for (std::size_t k = 0; k < penalties.size(); ++k) {
          const DoseRecommendation rec =
              recommend_dose(coeffs, penalties[k], grid_size, false);
          sums[k] += true_q(spec, c, rec.dose);
        }
      }
    }

    out.vhat_by_percentile.resize(penalties.size());
    for (std::size_t k = 0; k < penalties.size(); ++k) {
      out.vhat_by_percentile[k] = sums[k] / static_cast<double>(n_test);
    }
    out.oracle_vhat = oracle_sum / static_cast<double>(n_test);
    out.ok = true;
  } catch (const std::exception& e) {
    out.ok = false;
    out.error = e.what();
  }
  return out;
}

double run_replication(const ScenarioSpec& spec, int n_train, int n_test,
                       const PenaltySpec& penalty, int restarts, int grid_size,
                       std::uint64_t rep_seed) {
  const ReplicationOutcome out = run_replication_all(
      spec, n_train, n_test, {penalty}, restarts, grid_size, rep_seed);
  if (!out.ok) throw FitError("replication failed: " + out.error);
  return out.vhat_by_percentile[0];
}

ExperimentSummary run_experiment(const ExperimentConfig& config) {
  const auto problems = validate_config(config);
  if (!problems.empty()) {
    std::string joined;
    for (const auto& p : problems) joined += p + "; ";
    throw DomainError("invalid experiment config: " + joined);
  }

  const ScenarioSpec& spec = scenario_spec(config.scenario_id);
  std::vector<PenaltySpec> penalties;
  penalties.reserve(config.percentiles.size());
  for (int pct : config.percentiles) {
    penalties.push_back(PenaltySpec::from_percentile(pct));
  }

  struct Job {
    int cell;  // index into n_train_list
    int rep;
  };
  std::vector<Job> jobs;
  for (std::size_t cell = 0; cell < config.n_train_list.size(); ++cell) {
    for (int rep = 0; rep < config.replications; ++rep) {
      jobs.push_back({static_cast<int>(cell), rep});
    }
  }

  std::vector<std::vector<ReplicationOutcome>> outcomes(
      config.n_train_list.size(),
      std::vector<ReplicationOutcome>(config.replications));
  std::vector<double> cell_seconds(config.n_train_list.size(), 0.0);

  std::atomic<std::size_t> next{0};
  std::mutex io_mutex;
  const auto worker = [&]() {
    for (;;) {
      const std::size_t j = next.fetch_add(1);
      if (j >= jobs.size()) break;
      const Job job = jobs[j];
      const int n_train = config.n_train_list[static_cast<std::size_t>(job.cell)];
      const std::uint64_t rep_seed =
          derive_seed(config.base_seed, static_cast<std::uint64_t>(job.rep));
      const auto t0 = std::chrono::steady_clock::now();
      ReplicationOutcome out =
          run_replication_all(spec, n_train, config.n_test, penalties,
                              config.restarts, config.grid_size, rep_seed);
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count();
      {
        std::lock_guard<std::mutex> lock(io_mutex);
        cell_seconds[static_cast<std::size_t>(job.cell)] += secs;
        if (config.progress != nullptr) {
          *config.progress << "scenario " << spec.id << " n_train " << n_train
                           << " rep " << job.rep << ": "
                           << (out.ok ? "ok" : ("FAILED: " + out.error))
                           << " (" << secs << " s)\n";
          config.progress->flush();
        }
      }
      outcomes[static_cast<std::size_t>(job.cell)]
              [static_cast<std::size_t>(job.rep)] = std::move(out);
    }
  };

  const int n_workers = std::max(1, config.workers);
  std::vector<std::thread> threads;
  for (int t = 0; t < n_workers - 1; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();

  ExperimentSummary summary;
  for (std::size_t cell = 0; cell < config.n_train_list.size(); ++cell) {
    for (std::size_t k = 0; k < penalties.size(); ++k) {
      std::vector<double> values;
      int failed = 0;
      for (const auto& out : outcomes[cell]) {
        if (out.ok) {
          values.push_back(out.vhat_by_percentile[k]);
        } else {
          ++failed;
        }
      }
      const CellStats stats = aggregate(values);
      SummaryRow row;
      row.scenario_id = spec.id;
      row.n_train = config.n_train_list[cell];
      row.percentile = penalties[k].percentile;
      row.mean_vhat = stats.mean;
      row.std_vhat = stats.std_dev;
      row.completed = static_cast<int>(values.size());
      row.failed = failed;
      row.wall_time_sec = cell_seconds[cell];
      summary.rows.push_back(row);
      if (config.progress != nullptr) {
        if (values.size() == 1) {
          *config.progress << "note: single completed replication in cell "
                              "(n_train "
                           << row.n_train << ", percentile " << row.percentile
                           << "); std reported as 0\n";
        }
        if (values.empty()) {
          *config.progress << "warning: zero completed replications in cell "
                              "(n_train "
                           << row.n_train << ", percentile " << row.percentile
                           << "); reported as missing\n";
        }
      }
    }
  }

  std::sort(summary.rows.begin(), summary.rows.end(),
            [](const SummaryRow& a, const SummaryRow& b) {
              if (a.n_train != b.n_train) return a.n_train < b.n_train;
              return a.percentile < b.percentile;
            });
  return summary;
}

ExperimentSummary penalty_sweep(ExperimentConfig config) {
  config.percentiles = percentile_range(50, 99, 1);
  return run_experiment(config);
}

std::vector<int> percentile_range(int lo, int hi, int step) {
  if (step < 1) throw DomainError("percentile_range: step must be >= 1");
  std::vector<int> out;
  for (int p = lo; p <= hi; p += step) out.push_back(p);
  return out;
}

}  // namespace lcsl
