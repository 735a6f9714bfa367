#pragma once

#include <string>

#include "lcsl/gp.hpp"
#include "lcsl/harness.hpp"

namespace lcsl {

/// Shortest decimal that parses back to exactly the same double. Always a
/// dot decimal separator, independent of the locale.
std::string format_double(double v);

/// Reads a dataset CSV: header names p covariate columns, then `dose`, then
/// `reward`; one record per line. Throws ParseError naming the offending row
/// (1-based file line) and column, DomainError for doses outside the range,
/// IoError when the file cannot be read.
Dataset read_data_csv(const std::string& path, Interval dose_range);

/// Header c1..cp,dose,reward; full-precision values.
void write_dataset_csv(const std::string& path, const Dataset& data);

/// Columns: scenario,n_train,percentile,mean_vhat,std_vhat,completed,failed.
void write_results_csv(const std::string& path, const ExperimentSummary& summary);

/// Long-format sweep columns: scenario,n_train,percentile,mean_vhat,std_vhat.
void write_sweep_csv(const std::string& path, const ExperimentSummary& summary);

/// Companion table rounded to two decimals, one block per percentile.
std::string human_table(const ExperimentSummary& summary);

}  // namespace lcsl
