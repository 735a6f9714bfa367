#include "lcsl/cli.hpp"

#include <cstdlib>
#include <thread>

#include <CLI11.hpp>

#include "lcsl/csv.hpp"
#include "lcsl/harness.hpp"
#include "lcsl/model_io.hpp"
#include "lcsl/policy.hpp"
#include "lcsl/scenarios.hpp"

namespace lcsl {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

std::vector<double> parse_number_list(const std::string& text,
                                      const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw DomainError(what + ": cannot parse number '" + item + "'");
    }
  }
  if (out.empty()) throw DomainError(what + ": empty list");
  return out;
}

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<int> out;
  for (double v : parse_number_list(text, what)) {
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v) {
      throw DomainError(what + ": expected integers");
    }
    out.push_back(i);
  }
  return out;
}

// "50,95" or "lo:hi:step" (step optional, default 1).
std::vector<int> parse_percentiles(const std::string& text) {
  if (text.find(':') == std::string::npos) {
    return parse_int_list(text, "--percentiles");
  }
  std::vector<int> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    parts.push_back(parse_int_list(item, "--percentiles")[0]);
  }
  if (parts.size() < 2 || parts.size() > 3) {
    throw DomainError("--percentiles: range must be lo:hi or lo:hi:step");
  }
  return percentile_range(parts[0], parts[1], parts.size() == 3 ? parts[2] : 1);
}

Interval parse_interval(const std::string& text, const std::string& what) {
  const auto values = parse_number_list(text, what);
  if (values.size() != 2 || !(values[0] < values[1])) {
    throw DomainError(what + ": expected lo,hi with lo < hi");
  }
  return {values[0], values[1]};
}

int default_workers() {
  if (const char* env = std::getenv("LCSL_WORKERS")) {
    const int w = std::atoi(env);
    if (w >= 1) return w;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

Vector parse_covariates(const std::string& text) {
  const auto values = parse_number_list(text, "--covariates");
  Vector c(static_cast<Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    c[static_cast<Index>(i)] = values[i];
  }
  return c;
}

void print_model_summary(std::ostream& out, const FittedGp& model) {
  out << "log_ml " << format_double(model.log_ml) << "\n";
  out << "sigma_f2 " << format_double(model.hp.sigma_f2) << "\n";
  for (Index i = 0; i < model.hp.dims(); ++i) {
    out << "theta_" << (i + 1) << " " << format_double(model.hp.theta[i])
        << "\n";
  }
  out << "sigma_n2 " << format_double(model.hp.sigma_n2) << "\n";
}

struct ExperimentFlags {
  int scenario{1};
  std::string n_train{"50,100,200,400"};
  int replications{20};
  int n_test{1000};
  std::string percentiles{"95"};
  std::uint64_t seed{0};
  int restarts{10};
  int grid{50};
  int workers{0};  // 0: use default_workers()
  std::string out_path;
};

void add_experiment_flags(CLI::App* cmd, ExperimentFlags& flags,
                          const std::string& default_percentiles) {
  flags.percentiles = default_percentiles;
  cmd->add_option("--scenario", flags.scenario, "Scenario id, 1..5");
  cmd->add_option("--n-train", flags.n_train,
                  "Comma-separated training sizes");
  cmd->add_option("--replications", flags.replications,
                  "Replications per cell");
  cmd->add_option("--n-test", flags.n_test, "Test subjects per replication");
  cmd->add_option("--percentiles", flags.percentiles,
                  "Percentile list 50,95 or range lo:hi:step");
  cmd->add_option("--seed", flags.seed, "Base seed");
  cmd->add_option("--restarts", flags.restarts,
                  "Marginal-likelihood restarts per fit");
  cmd->add_option("--grid", flags.grid, "Dose grid size");
  cmd->add_option("--workers", flags.workers,
                  "Concurrent replications (default: LCSL_WORKERS or all cores)");
  cmd->add_option("--out", flags.out_path, "Output CSV path")->required();
}

ExperimentConfig config_from_flags(const ExperimentFlags& flags,
                                   std::ostream& err) {
  ExperimentConfig config;
  config.scenario_id = flags.scenario;
  config.n_train_list = parse_int_list(flags.n_train, "--n-train");
  config.replications = flags.replications;
  config.n_test = flags.n_test;
  config.percentiles = parse_percentiles(flags.percentiles);
  config.restarts = flags.restarts;
  config.grid_size = flags.grid;
  config.base_seed = flags.seed;
  config.workers = flags.workers >= 1 ? flags.workers : default_workers();
  config.progress = &err;

  const auto problems = validate_config(config);
  if (!problems.empty()) {
    std::string joined = "invalid configuration:";
    for (const auto& p : problems) joined += "\n  - " + p;
    throw DomainError(joined);
  }
  return config;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Individualized dose rules from Gaussian-process regression "
               "with a lower-confidence dose objective"};
  app.require_subcommand(1);

  // fit
  auto* fit_cmd = app.add_subcommand(
      "fit", "Fit a model to a dataset CSV and write a model file");
  std::string fit_data, fit_range{"0,1"}, fit_out;
  int fit_restarts = 10;
  std::uint64_t fit_seed = 0;
  fit_cmd->add_option("--data", fit_data, "Dataset CSV")->required();
  fit_cmd->add_option("--dose-range", fit_range, "Admissible doses, lo,hi");
  fit_cmd->add_option("--restarts", fit_restarts, "Restarts");
  fit_cmd->add_option("--seed", fit_seed, "Seed");
  fit_cmd->add_option("--out", fit_out, "Model file path")->required();

  // recommend
  auto* rec_cmd = app.add_subcommand(
      "recommend", "Recommend a dose for one covariate vector");
  std::string rec_model, rec_cov;
  int rec_pct = 95, rec_grid = 50;
  bool rec_refine = false;
  rec_cmd->add_option("--model", rec_model, "Model file")->required();
  rec_cmd->add_option("--covariates", rec_cov, "Comma-separated covariates")
      ->required();
  rec_cmd->add_option("--percentile", rec_pct, "Penalty percentile in [50, 99]");
  rec_cmd->add_option("--grid", rec_grid, "Dose grid size");
  rec_cmd->add_flag("--refine", rec_refine, "Local ascent around the best grid point");

  // explain
  auto* exp_cmd = app.add_subcommand(
      "explain", "Rank training-point contributions at (covariates, dose)");
  std::string exp_model, exp_cov;
  double exp_dose = 0.0;
  int exp_top = 10;
  exp_cmd->add_option("--model", exp_model, "Model file")->required();
  exp_cmd->add_option("--covariates", exp_cov, "Comma-separated covariates")
      ->required();
  exp_cmd->add_option("--dose", exp_dose, "Dose")->required();
  exp_cmd->add_option("--top", exp_top, "Contributions to print");

  // simulate
  auto* sim_cmd = app.add_subcommand(
      "simulate", "Draw a scenario dataset and write it as CSV");
  int sim_scenario = 1;
  int sim_n = 100;
  std::uint64_t sim_seed = 0;
  std::string sim_out;
  sim_cmd->add_option("--scenario", sim_scenario, "Scenario id, 1..5");
  sim_cmd->add_option("--n", sim_n, "Records to draw");
  sim_cmd->add_option("--seed", sim_seed, "Seed");
  sim_cmd->add_option("--out", sim_out, "Output CSV path")->required();

  // experiment / sweep
  auto* run_cmd = app.add_subcommand(
      "experiment", "Replicated fit/recommend/evaluate protocol");
  ExperimentFlags run_flags;
  add_experiment_flags(run_cmd, run_flags, "95");

  auto* sweep_cmd = app.add_subcommand(
      "sweep", "Experiment over a percentile grid with paired seeds");
  ExperimentFlags sweep_flags;
  add_experiment_flags(sweep_cmd, sweep_flags, "50:99:1");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  try {
    if (fit_cmd->parsed()) {
      const Dataset data =
          read_data_csv(fit_data, parse_interval(fit_range, "--dose-range"));
      OptimizeOptions opts;
      opts.restarts = fit_restarts;
      const FittedGp model =
          optimize_hyperparameters(data, opts, CounterRng(fit_seed));
      save_model(fit_out, model);
      print_model_summary(out, model);
    } else if (rec_cmd->parsed()) {
      const FittedGp model = load_model(rec_model);
      const PenaltySpec penalty = PenaltySpec::from_percentile(rec_pct);
      const DoseRecommendation rec = recommend_dose(
          model, parse_covariates(rec_cov), penalty, rec_grid, rec_refine);
      out << "dose " << format_double(rec.dose) << "\n";
      out << "objective_scaled " << format_double(rec.objective) << "\n";
      out << "mean_scaled " << format_double(rec.mean) << "\n";
      out << "mean_unscaled " << format_double(model.scaler.unscale(rec.mean))
          << "\n";
      out << "sd_scaled " << format_double(rec.sd) << "\n";
      out << "grid_argmax " << format_double(rec.grid_argmax) << "\n";
    } else if (exp_cmd->parsed()) {
      const FittedGp model = load_model(exp_model);
      const Vector c_star = parse_covariates(exp_cov);
      const auto contributions =
          explain(model, c_star, exp_dose,
                  std::min<Index>(exp_top, model.n()));
      Vector x_star(model.dims());
      x_star.head(c_star.size()) = c_star;
      x_star[model.dims() - 1] = exp_dose;
      const Posterior post = predict(model, x_star);
      out << "mean_scaled " << format_double(post.mean) << "\n";
      out << "mean_unscaled " << format_double(model.scaler.unscale(post.mean))
          << "\n";
      out << "rank,train_index,contribution\n";
      for (std::size_t r = 0; r < contributions.size(); ++r) {
        out << (r + 1) << "," << contributions[r].index << ","
            << format_double(contributions[r].value) << "\n";
      }
      const Vector rel = feature_relevances(model);
      out << "dimension,relevance\n";
      for (Index i = 0; i < rel.size(); ++i) {
        const bool is_dose = (i == rel.size() - 1);
        out << (is_dose ? "dose" : ("c" + std::to_string(i + 1))) << ","
            << format_double(rel[i]) << "\n";
      }
    } else if (sim_cmd->parsed()) {
      const ScenarioSpec& spec = scenario_spec(sim_scenario);
      if (sim_n < 1) throw DomainError("--n must be >= 1");
      CounterRng rng{sim_seed};
      write_dataset_csv(sim_out, sample_dataset(spec, sim_n, rng));
      out << "wrote " << sim_n << " records\n";
    } else if (run_cmd->parsed() || sweep_cmd->parsed()) {
      const bool is_sweep = sweep_cmd->parsed();
      const ExperimentFlags& flags = is_sweep ? sweep_flags : run_flags;
      const ExperimentConfig config = config_from_flags(flags, err);
      const ExperimentSummary summary = run_experiment(config);
      if (is_sweep) {
        write_sweep_csv(flags.out_path, summary);
      } else {
        write_results_csv(flags.out_path, summary);
      }
      out << human_table(summary);
    }
  } catch (const ShapeError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ConditioningError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const FitError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}

}  // namespace lcsl
