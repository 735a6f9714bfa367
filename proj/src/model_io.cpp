#include "lcsl/model_io.hpp"

#include <fstream>

#include <json.hpp>

namespace lcsl {
namespace {

constexpr int kFormatVersion = 1;

nlohmann::json vector_to_json(const Vector& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Vector vector_from_json(const nlohmann::json& arr) {
  Vector v(static_cast<Index>(arr.size()));
  Index i = 0;
  for (const auto& x : arr) v[i++] = x.get<double>();
  return v;
}

}  // namespace

void save_model(const std::string& path, const FittedGp& model) {
  nlohmann::json j;
  j["format_version"] = kFormatVersion;
  j["hyperparameters"] = {{"sigma_f2", model.hp.sigma_f2},
                          {"theta", vector_to_json(model.hp.theta)},
                          {"sigma_n2", model.hp.sigma_n2}};
  nlohmann::json rows = nlohmann::json::array();
  for (Index i = 0; i < model.inputs.rows(); ++i) {
    rows.push_back(vector_to_json(model.inputs.row(i).transpose()));
  }
  j["train_inputs"] = std::move(rows);
  j["scaled_targets"] = vector_to_json(model.targets);
  j["reward_scaler"] = {{"r_min", model.scaler.r_min},
                        {"r_max", model.scaler.r_max}};
  j["dose_range"] = {model.dose_range.lo, model.dose_range.hi};
  j["log_ml"] = model.log_ml;

  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << j.dump(2) << "\n";
  if (!out) throw IoError("failed while writing: " + path);
}

FittedGp load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path);

  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("model file " + path + ": " + e.what());
  }

  try {
    if (j.at("format_version").get<int>() != kFormatVersion) {
      throw ParseError("model file " + path + ": unsupported format_version");
    }
    Hyperparameters hp;
    hp.sigma_f2 = j.at("hyperparameters").at("sigma_f2").get<double>();
    hp.theta = vector_from_json(j.at("hyperparameters").at("theta"));
    hp.sigma_n2 = j.at("hyperparameters").at("sigma_n2").get<double>();

    const auto& rows = j.at("train_inputs");
    if (rows.empty()) throw ParseError("model file " + path + ": no inputs");
    Matrix inputs(static_cast<Index>(rows.size()), hp.dims());
    Index i = 0;
    for (const auto& row : rows) {
      if (static_cast<Index>(row.size()) != hp.dims()) {
        throw ParseError("model file " + path + ": input row width mismatch");
      }
      inputs.row(i++) = vector_from_json(row).transpose();
    }

    Vector targets = vector_from_json(j.at("scaled_targets"));
    if (targets.size() != inputs.rows()) {
      throw ParseError("model file " + path + ": target count mismatch");
    }
    RewardScaler scaler{j.at("reward_scaler").at("r_min").get<double>(),
                        j.at("reward_scaler").at("r_max").get<double>()};
    const auto& range = j.at("dose_range");
    if (range.size() != 2) {
      throw ParseError("model file " + path + ": dose_range must be [lo, hi]");
    }
    Interval dose_range{range[0].get<double>(), range[1].get<double>()};

    FittedGp model = fit_scaled(std::move(inputs), std::move(targets), hp,
                                scaler, dose_range);
    model.log_ml = j.at("log_ml").get<double>();
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("model file " + path + ": " + e.what());
  }
}

}  // namespace lcsl
