#include "lcsl/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace lcsl {
namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_cell(const std::string& raw, int line_no, const std::string& column) {
  const std::string cell = trim(raw);
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw ParseError("row " + std::to_string(line_no) + ", column " + column +
                     ": not a finite number: '" + cell + "'");
  }
  return value;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

Dataset read_data_csv(const std::string& path, Interval dose_range) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path);

  std::string line;
  if (!std::getline(in, line)) throw ParseError(path + ": empty file");
  const auto header = split_csv_line(line);
  if (header.size() < 3) {
    throw ParseError(path + ": header must name at least one covariate, "
                            "then dose, then reward");
  }
  const std::size_t p = header.size() - 2;
  if (trim(header[p]) != "dose" || trim(header[p + 1]) != "reward") {
    throw ParseError(path + ": last two header columns must be dose,reward");
  }

  std::vector<std::vector<double>> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      throw ParseError("row " + std::to_string(line_no) + ": expected " +
                       std::to_string(header.size()) + " columns, got " +
                       std::to_string(fields.size()));
    }
    std::vector<double> row(fields.size());
    for (std::size_t j = 0; j < fields.size(); ++j) {
      const std::string column = (j < p) ? trim(header[j])
                                 : (j == p ? "dose" : "reward");
      row[j] = parse_cell(fields[j], line_no, column);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(path + ": no data rows");

  Dataset data;
  data.dose_range = dose_range;
  data.covariates.resize(static_cast<Index>(rows.size()), static_cast<Index>(p));
  data.doses.resize(static_cast<Index>(rows.size()));
  data.rewards.resize(static_cast<Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      data.covariates(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
    }
    data.doses[static_cast<Index>(i)] = rows[i][p];
    data.rewards[static_cast<Index>(i)] = rows[i][p + 1];
  }
  validate(data);  // dose-range and finiteness checks
  return data;
}

void write_dataset_csv(const std::string& path, const Dataset& data) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  for (Index j = 0; j < data.p(); ++j) out << "c" << (j + 1) << ",";
  out << "dose,reward\n";
  for (Index i = 0; i < data.n(); ++i) {
    for (Index j = 0; j < data.p(); ++j) {
      out << format_double(data.covariates(i, j)) << ",";
    }
    out << format_double(data.doses[i]) << ","
        << format_double(data.rewards[i]) << "\n";
  }
  if (!out) throw IoError("failed while writing: " + path);
}

void write_results_csv(const std::string& path, const ExperimentSummary& summary) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << "scenario,n_train,percentile,mean_vhat,std_vhat,completed,failed\n";
  for (const auto& row : summary.rows) {
    out << row.scenario_id << "," << row.n_train << "," << row.percentile << ","
        << format_double(row.mean_vhat) << "," << format_double(row.std_vhat)
        << "," << row.completed << "," << row.failed << "\n";
  }
  if (!out) throw IoError("failed while writing: " + path);
}

void write_sweep_csv(const std::string& path, const ExperimentSummary& summary) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << "scenario,n_train,percentile,mean_vhat,std_vhat\n";
  for (const auto& row : summary.rows) {
    out << row.scenario_id << "," << row.n_train << "," << row.percentile << ","
        << format_double(row.mean_vhat) << "," << format_double(row.std_vhat)
        << "\n";
  }
  if (!out) throw IoError("failed while writing: " + path);
}

std::string human_table(const ExperimentSummary& summary) {
  std::map<int, std::vector<const SummaryRow*>> by_percentile;
  for (const auto& row : summary.rows) {
    by_percentile[row.percentile].push_back(&row);
  }
  std::string out;
  char buf[128];
  for (const auto& [pct, rows] : by_percentile) {
    if (rows.empty()) continue;
    std::snprintf(buf, sizeof(buf),
                  "Scenario %d, percentile %d: mean (std) of estimated value\n",
                  rows.front()->scenario_id, pct);
    out += buf;
    out += "  n_train   value          completed  failed\n";
    for (const auto* row : rows) {
      std::snprintf(buf, sizeof(buf), "  %-9d %6.2f (%.2f)   %-10d %d\n",
                    row->n_train, row->mean_vhat, row->std_vhat, row->completed,
                    row->failed);
      out += buf;
    }
  }
  return out;
}

}  // namespace lcsl
