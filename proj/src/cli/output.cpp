#include "output.hpp"

#include <fstream>
#include <ostream>

#include <fmt/format.h>

namespace aqs::cli {

std::string csv_number(double value) { return fmt::format("{:.17g}", value); }

nlohmann::ordered_json config_json(const RunConfig& config) {
  nlohmann::ordered_json j;
  j["command"] = std::string(to_string(config.command));
  if (config.command == Command::Sweep) {
    j["n_list"] = config.n_list;
    std::vector<std::string> names;
    for (ScheduleKind kind : config.schedules) names.emplace_back(to_string(kind));
    j["schedules"] = names;
  } else {
    j["n"] = config.n;
    j["schedule"] = std::string(to_string(config.schedules.front()));
  }
  switch (config.command) {
    case Command::GapCurve:
      j["points"] = config.points;
      break;
    case Command::Schedule:
      j["epsilon"] = config.epsilon;
      j["strategy"] = std::string(to_string(config.strategy));
      j["resolution"] = config.resolution;
      break;
    case Command::Evolve:
      j["epsilon"] = config.epsilon;
      j["strategy"] = std::string(to_string(config.strategy));
      j["resolution"] = config.resolution;
      j["steps"] = config.steps;
      j["k"] = config.k;
      break;
    case Command::Sweep:
      j["epsilon"] = config.epsilon;
      j["strategy"] = std::string(to_string(config.strategy));
      j["resolution"] = config.resolution;
      j["steps"] = config.steps;
      break;
    case Command::LowerBound:
      j["epsilon"] = config.epsilon;
      j["strategy"] = std::string(to_string(config.strategy));
      j["resolution"] = config.resolution;
      j["steps"] = config.steps;
      j["samples"] = config.samples;
      break;
  }
  j["format"] = config.format == Format::Csv ? "csv" : "json";
  return j;
}

std::string csv_config_comment(const RunConfig& config) {
  return "# config: " + config_json(config).dump() + "\n";
}

std::string json_document(const nlohmann::ordered_json& doc) { return doc.dump(2) + "\n"; }

void emit(const RunConfig& config, const std::string& content, std::ostream& out) {
  if (!config.output_path) {
    out << content;
    out.flush();
    return;
  }
  std::ofstream file(*config.output_path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + *config.output_path + "' for writing");
  file << content;
  file.close();
  if (!file) throw IoError("failed writing '" + *config.output_path + "'");
}

}  // namespace aqs::cli
