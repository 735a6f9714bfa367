#pragma once

#include <string>

#include "lcsl/gp.hpp"

namespace lcsl {

/// Writes the model as versioned JSON with shortest-round-trip decimals;
/// save -> load -> predict is bit-identical to the original model. The
/// factorization is not stored, it is rebuilt on load.
void save_model(const std::string& path, const FittedGp& model);

/// Throws ParseError for malformed or wrongly versioned files, IoError when
/// the file cannot be read.
FittedGp load_model(const std::string& path);

}  // namespace lcsl
