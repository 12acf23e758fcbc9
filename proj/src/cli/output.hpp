#pragma once

#include <iosfwd>
#include <string>

#include "aqs/cli.hpp"
#include "json.hpp"

namespace aqs::cli {

/// 17 significant digits, round-trip exact for doubles.
std::string csv_number(double value);

/// Every field that influences the computation; the output path is left out
/// so a file's content does not depend on where it was written.
nlohmann::ordered_json config_json(const RunConfig& config);

/// "# config: {...}" line for CSV headers.
std::string csv_config_comment(const RunConfig& config);

std::string json_document(const nlohmann::ordered_json& doc);

/// Writes to config.output_path, or to `out` when no path is set.
/// Throws IoError if the file cannot be written.
void emit(const RunConfig& config, const std::string& content, std::ostream& out);

}  // namespace aqs::cli
