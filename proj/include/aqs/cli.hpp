#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "aqs/dynamics.hpp"
#include "aqs/schedule.hpp"

namespace aqs::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,
  kExitIo = 2,
  kExitNumerical = 3,
};

enum class Command { GapCurve, Schedule, Evolve, Sweep, LowerBound };
enum class Format { Csv, Json };

std::string_view to_string(Command command);

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// --help; what() is the help text.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  Command command = Command::GapCurve;
  double n = 0.0;
  std::vector<double> n_list;              // sweep only
  std::vector<ScheduleKind> schedules;     // exactly one except for sweep
  double epsilon = kDefaultEpsilon;
  Strategy strategy = Strategy::LocalAdiabatic;
  std::size_t points = 201;
  std::size_t steps = kDefaultSteps;
  std::size_t samples = 200;
  std::size_t resolution = kDefaultResolution;
  double k = 1.0;
  std::optional<std::string> output_path;  // stdout when absent
  Format format = Format::Csv;             // resolved: --format, else extension, else per command
};

/// Parses arguments (program name excluded). Throws ConfigError with a
/// single-line message on any invalid or inconsistent value.
RunConfig parse_config(const std::vector<std::string>& args);

/// Runs one command. Data goes to the configured file or to `out`;
/// diagnostics and progress lines go to `err`. Returns an ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace aqs::cli
