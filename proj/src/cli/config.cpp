#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "aqs/cli.hpp"
#include "aqs/ensemble.hpp"
#include "aqs/spectral.hpp"

namespace aqs::cli {

std::string_view to_string(Command command) {
  switch (command) {
    case Command::GapCurve:
      return "gap-curve";
    case Command::Schedule:
      return "schedule";
    case Command::Evolve:
      return "evolve";
    case Command::Sweep:
      return "sweep";
    case Command::LowerBound:
      return "lowerbound";
  }
  return "unknown";
}

namespace {

struct RawOptions {
  double n = std::nan("");
  std::vector<double> n_list;
  std::string schedule;
  double epsilon = kDefaultEpsilon;
  std::string strategy = "local";
  long long points = 201;
  long long steps = static_cast<long long>(kDefaultSteps);
  long long samples = 200;
  long long resolution = static_cast<long long>(kDefaultResolution);
  double k = 1.0;
  std::string output;
  std::string format;
};

void add_common(CLI::App* sub, RawOptions& raw, bool wants_n_list) {
  if (wants_n_list) {
    sub->add_option("--n-list", raw.n_list, "Database sizes, comma separated")
        ->delimiter(',')
        ->required();
  } else {
    sub->add_option("--n", raw.n, "Database size N")->required();
  }
  sub->add_option("--schedule", raw.schedule,
                  wants_n_list ? "linear, modified or both (default both)"
                               : "linear or modified (default linear)");
  sub->add_option("-o,--output", raw.output, "Output path (.csv or .json); stdout if omitted");
  sub->add_option("--format", raw.format, "csv or json, overrides the extension");
}

void add_evolution(CLI::App* sub, RawOptions& raw) {
  sub->add_option("--epsilon", raw.epsilon, "Adiabaticity budget in (0, 1]");
  sub->add_option("--strategy", raw.strategy, "local or uniform");
  sub->add_option("--resolution", raw.resolution, "Parametrization grid intervals (>= 100)");
}

std::size_t positive_count(long long value, long long minimum, const char* name) {
  if (value < minimum) {
    throw ConfigError(std::string(name) + " must be >= " + std::to_string(minimum));
  }
  return static_cast<std::size_t>(value);
}

void check_n(double n) {
  if (!std::isfinite(n) || !(n >= 2.0)) throw ConfigError("n must be >= 2");
}

ScheduleKind parse_schedule_kind(const std::string& name) {
  if (name == "linear") return ScheduleKind::Linear;
  if (name == "modified") return ScheduleKind::Modified;
  throw ConfigError("unknown schedule '" + name + "' (expected linear or modified)");
}

Format default_format(Command command) {
  switch (command) {
    case Command::GapCurve:
    case Command::Sweep:
      return Format::Csv;
    default:
      return Format::Json;
  }
}

}  // namespace

RunConfig parse_config(const std::vector<std::string>& args) {
  CLI::App app{"Adiabatic quantum search simulator", "aqs"};
  app.require_subcommand(1);

  RawOptions raw;
  std::map<CLI::App*, Command> commands;

  auto* gap = app.add_subcommand("gap-curve", "Spectral gap along s in [0,1]");
  add_common(gap, raw, false);
  gap->add_option("--points", raw.points, "Number of s samples (>= 2)");
  commands[gap] = Command::GapCurve;

  auto* sched = app.add_subcommand("schedule", "Time parametrization s(t)");
  add_common(sched, raw, false);
  add_evolution(sched, raw);
  commands[sched] = Command::Schedule;

  auto* evo = app.add_subcommand("evolve", "Schroedinger evolution in the invariant plane");
  add_common(evo, raw, false);
  add_evolution(evo, raw);
  evo->add_option("--steps", raw.steps, "Integration steps (>= 1)");
  evo->add_option("--k", raw.k, "Constant k of the lower bound k sqrt(N)/4");
  commands[evo] = Command::Evolve;

  auto* sweep = app.add_subcommand("sweep", "Runtime, gap and fidelity over a list of N");
  add_common(sweep, raw, true);
  add_evolution(sweep, raw);
  sweep->add_option("--steps", raw.steps, "Integration steps (>= 1)");
  commands[sweep] = Command::Sweep;

  auto* lb = app.add_subcommand("lowerbound", "Full-space ensemble audit of the int g dt bound");
  add_common(lb, raw, false);
  add_evolution(lb, raw);
  lb->add_option("--steps", raw.steps, "Integration steps (>= 1)");
  lb->add_option("--samples", raw.samples, "Overlap-sum samples (>= 10)");
  commands[lb] = Command::LowerBound;

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    const auto subs = app.get_subcommands();
    throw HelpRequested(subs.empty() ? app.help() : subs.back()->help());
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  RunConfig config;
  for (const auto& [sub, command] : commands) {
    if (sub->parsed()) config.command = command;
  }

  if (config.command == Command::Sweep) {
    if (raw.n_list.empty()) throw ConfigError("n-list must not be empty");
    for (double n : raw.n_list) check_n(n);
    config.n_list = raw.n_list;
    std::sort(config.n_list.begin(), config.n_list.end());
    config.n_list.erase(std::unique(config.n_list.begin(), config.n_list.end()),
                        config.n_list.end());
    if (raw.schedule.empty() || raw.schedule == "both") {
      config.schedules = {ScheduleKind::Linear, ScheduleKind::Modified};
    } else {
      config.schedules = {parse_schedule_kind(raw.schedule)};
    }
  } else {
    check_n(raw.n);
    config.n = raw.n;
    config.schedules = {parse_schedule_kind(raw.schedule.empty() ? "linear" : raw.schedule)};
  }

  if (config.command == Command::LowerBound &&
      (raw.n != std::floor(raw.n) || raw.n > kEnsembleMaxN)) {
    throw ConfigError("n must be an integer in [2, " + std::to_string(kEnsembleMaxN) + "]");
  }

  if (!(raw.epsilon > 0.0 && raw.epsilon <= 1.0)) {
    throw ConfigError("epsilon must lie in (0, 1]");
  }
  config.epsilon = raw.epsilon;

  if (raw.strategy == "local") {
    config.strategy = Strategy::LocalAdiabatic;
  } else if (raw.strategy == "uniform") {
    config.strategy = Strategy::UniformSpeed;
  } else {
    throw ConfigError("unknown strategy '" + raw.strategy + "' (expected local or uniform)");
  }

  config.points = positive_count(raw.points, 2, "points");
  config.steps = positive_count(raw.steps, 1, "steps");
  config.samples = positive_count(raw.samples, 10, "samples");
  config.resolution = positive_count(raw.resolution, 100, "resolution");

  if (!(raw.k > 0.0) || !std::isfinite(raw.k)) throw ConfigError("k must be positive");
  config.k = raw.k;

  if (!raw.output.empty()) config.output_path = raw.output;

  if (raw.format == "csv") {
    config.format = Format::Csv;
  } else if (raw.format == "json") {
    config.format = Format::Json;
  } else if (!raw.format.empty()) {
    throw ConfigError("unknown format '" + raw.format + "' (expected csv or json)");
  } else if (config.output_path) {
    const std::string ext = std::filesystem::path(*config.output_path).extension().string();
    if (ext == ".csv") {
      config.format = Format::Csv;
    } else if (ext == ".json") {
      config.format = Format::Json;
    } else {
      throw ConfigError("cannot infer format from '" + *config.output_path +
                        "'; use a .csv/.json extension or --format");
    }
  } else {
    config.format = default_format(config.command);
  }
  return config;
}

}  // namespace aqs::cli
