#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "aqs/cli.hpp"
#include "aqs/dynamics.hpp"
#include "aqs/ensemble.hpp"
#include "aqs/errors.hpp"
#include "aqs/spectral.hpp"
#include "output.hpp"

namespace aqs::cli {
namespace {

using Json = nlohmann::ordered_json;

// eps * T for the modified schedule tends to this value as N grows.
constexpr double kModifiedRuntimeConstant = 1.0 + std::numbers::pi / 2.0;
constexpr double kConstantBand = 0.15;

Schedule make_schedule(ScheduleKind kind, double n) {
  return kind == ScheduleKind::Modified ? Schedule::modified(std::sqrt(n)) : Schedule::linear();
}

std::string cmd_gap_curve(const RunConfig& config) {
  const Schedule schedule = make_schedule(config.schedules.front(), config.n);
  const std::vector<SpectralPoint> curve = gap_curve(config.n, schedule, config.points);

  if (config.format == Format::Json) {
    Json doc;
    doc["config"] = config_json(config);
    Json rows = Json::array();
    for (const SpectralPoint& p : curve) {
      rows.push_back({{"s", p.s},
                      {"f", p.f},
                      {"g", p.g},
                      {"gap", p.gap},
                      {"e_minus", p.e_minus},
                      {"e_plus", p.e_plus},
                      {"matrix_element", p.matrix_element}});
    }
    doc["points"] = std::move(rows);
    return json_document(doc);
  }

  std::string csv = csv_config_comment(config);
  csv += "s,f,g,gap,e_minus,e_plus,matrix_element\n";
  for (const SpectralPoint& p : curve) {
    csv += fmt::format("{},{},{},{},{},{},{}\n", csv_number(p.s), csv_number(p.f),
                       csv_number(p.g), csv_number(p.gap), csv_number(p.e_minus),
                       csv_number(p.e_plus), csv_number(p.matrix_element));
  }
  return csv;
}

Json schedule_summary(const RunConfig& config, const TimeParametrization& param) {
  Json summary;
  summary["total_time"] = param.total_time;
  summary["epsilon"] = param.epsilon;
  summary["strategy"] = std::string(to_string(param.strategy));
  summary["knots"] = param.knots.size();
  if (config.schedules.front() == ScheduleKind::Modified) {
    const double scaled = param.epsilon * param.total_time;
    const double ratio = scaled / kModifiedRuntimeConstant;
    summary["constant_comparison"] = {{"epsilon_times_total_time", scaled},
                                      {"reference", kModifiedRuntimeConstant},
                                      {"ratio", ratio},
                                      {"within_band", std::abs(ratio - 1.0) <= kConstantBand},
                                      {"band", kConstantBand}};
  }
  return summary;
}

std::string cmd_schedule(const RunConfig& config, std::ostream& log) {
  const Schedule schedule = make_schedule(config.schedules.front(), config.n);
  const TimeParametrization param = build_parametrization(
      config.n, schedule, config.epsilon, config.strategy, config.resolution);
  const Json summary = schedule_summary(config, param);

  log << fmt::format("total_time = {:.10g}", param.total_time);
  if (summary.contains("constant_comparison")) {
    log << fmt::format(", eps*T = {:.10g} vs 1+pi/2 = {:.10g} (ratio {:.6f})",
                       param.epsilon * param.total_time, kModifiedRuntimeConstant,
                       summary["constant_comparison"]["ratio"].get<double>());
  }
  log << "\n";

  if (config.format == Format::Json) {
    Json doc;
    doc["config"] = config_json(config);
    doc["summary"] = summary;
    Json t = Json::array();
    Json s = Json::array();
    for (const Knot& k : param.knots) {
      t.push_back(k.t);
      s.push_back(k.s);
    }
    doc["knots"] = {{"t", std::move(t)}, {"s", std::move(s)}};
    return json_document(doc);
  }

  std::string csv = csv_config_comment(config);
  csv += "# summary: " + summary.dump() + "\n";
  csv += "t,s\n";
  for (const Knot& k : param.knots) {
    csv += csv_number(k.t) + "," + csv_number(k.s) + "\n";
  }
  return csv;
}

std::string cmd_evolve(const RunConfig& config) {
  const Schedule schedule = make_schedule(config.schedules.front(), config.n);
  const TimeParametrization param = build_parametrization(
      config.n, schedule, config.epsilon, config.strategy, config.resolution);
  const EvolutionResult plain = evolve(config.n, schedule, param, config.steps);
  const EvolutionResult shifted = evolve_energy_shifted(config.n, schedule, param, config.steps);
  const LowerBoundReport bound = lower_bound_check(plain, config.n, config.k);
  const double delta = std::abs(plain.fidelity - shifted.fidelity);

  if (config.format == Format::Json) {
    Json doc;
    doc["config"] = config_json(config);
    doc["total_time"] = plain.total_time;
    doc["initial_fidelity"] = plain.initial_fidelity;
    doc["fidelity"] = plain.fidelity;
    doc["norm_drift"] = plain.norm_drift;
    doc["adiabaticity_margin"] = plain.adiabaticity_margin;
    doc["g_time_integral"] = plain.g_time_integral;
    doc["min_gap"] = plain.min_gap;
    doc["max_e_minus"] = plain.max_ground_energy;
    doc["lower_bound"] = {{"k", config.k},
                          {"lhs", bound.lhs},
                          {"rhs", bound.rhs},
                          {"satisfied", bound.satisfied}};
    doc["energy_shifted"] = {{"fidelity", shifted.fidelity},
                             {"max_ground_energy", shifted.max_ground_energy},
                             {"fidelity_delta", delta}};
    return json_document(doc);
  }

  std::string csv = csv_config_comment(config);
  csv +=
      "total_time,initial_fidelity,fidelity,norm_drift,adiabaticity_margin,g_time_integral,"
      "min_gap,max_e_minus,lower_bound_lhs,lower_bound_rhs,lower_bound_satisfied,"
      "shifted_fidelity,shifted_max_ground_energy,shifted_fidelity_delta\n";
  csv += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", csv_number(plain.total_time),
                     csv_number(plain.initial_fidelity), csv_number(plain.fidelity),
                     csv_number(plain.norm_drift), csv_number(plain.adiabaticity_margin),
                     csv_number(plain.g_time_integral), csv_number(plain.min_gap),
                     csv_number(plain.max_ground_energy), csv_number(bound.lhs),
                     csv_number(bound.rhs), bound.satisfied ? 1 : 0,
                     csv_number(shifted.fidelity), csv_number(shifted.max_ground_energy),
                     csv_number(delta));
  return csv;
}

struct SweepRow {
  double n = 0.0;
  ScheduleKind kind = ScheduleKind::Linear;
  double total_time = 0.0;
  double min_gap = 0.0;
  double max_e_minus = 0.0;
  double fidelity = 0.0;
};

SweepRow sweep_row(const RunConfig& config, double n, ScheduleKind kind) {
  const Schedule schedule = make_schedule(kind, n);
  const TimeParametrization param =
      build_parametrization(n, schedule, config.epsilon, config.strategy, config.resolution);
  const EvolutionResult result = evolve(n, schedule, param, config.steps);
  return {n, kind, param.total_time, result.min_gap, result.max_ground_energy, result.fidelity};
}

std::string cmd_sweep(const RunConfig& config) {
  std::vector<std::future<SweepRow>> pending;
  for (ScheduleKind kind : config.schedules) {
    for (double n : config.n_list) {
      pending.push_back(std::async(std::launch::async, sweep_row, std::cref(config), n, kind));
    }
  }
  std::vector<SweepRow> rows;
  rows.reserve(pending.size());
  for (auto& f : pending) rows.push_back(f.get());
  std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.n < b.n;
  });

  if (config.format == Format::Json) {
    Json doc;
    doc["config"] = config_json(config);
    Json out = Json::array();
    for (const SweepRow& r : rows) {
      out.push_back({{"n", r.n},
                     {"schedule", std::string(to_string(r.kind))},
                     {"total_time", r.total_time},
                     {"min_gap", r.min_gap},
                     {"max_e_minus", r.max_e_minus},
                     {"fidelity", r.fidelity}});
    }
    doc["rows"] = std::move(out);
    return json_document(doc);
  }

  std::string csv = csv_config_comment(config);
  csv += "n,schedule,total_time,min_gap,max_e_minus,fidelity\n";
  for (const SweepRow& r : rows) {
    csv += fmt::format("{},{},{},{},{},{}\n", csv_number(r.n), to_string(r.kind),
                       csv_number(r.total_time), csv_number(r.min_gap),
                       csv_number(r.max_e_minus), csv_number(r.fidelity));
  }
  return csv;
}

std::string cmd_lowerbound(const RunConfig& config) {
  const int n = static_cast<int>(config.n);
  const Schedule schedule = make_schedule(config.schedules.front(), config.n);
  const TimeParametrization param = build_parametrization(
      config.n, schedule, config.epsilon, config.strategy, config.resolution);
  const EnsembleReport report =
      evolve_ensemble(n, schedule, param, config.steps, config.samples);
  const IntegratedBoundCheck integrated = integrated_bound_check(report);
  const TheoremBound theorem = derive_theorem_bound(report, n);
  const std::size_t violations = rate_violations(report);

  Json summary;
  summary["total_time"] = report.total_time;
  summary["steps"] = report.steps;
  summary["g_time_integral"] = report.g_time_integral;
  summary["initial_overlap_sum"] = report.overlap_sum_trajectory.front().overlap_sum;
  summary["final_overlap_sum"] = report.overlap_sum_trajectory.back().overlap_sum;
  summary["max_norm_drift"] = report.max_norm_drift;
  summary["rate_inequality"] = {{"bound_coefficient", 4.0 * std::pow(config.n, 1.5)},
                                {"checked", report.rate_margins.size()},
                                {"violations", violations},
                                {"satisfied", violations == 0}};
  summary["integrated_bound"] = {{"lhs", integrated.lhs},
                                 {"rhs", integrated.rhs},
                                 {"satisfied", integrated.satisfied}};
  summary["k_measured"] = report.k_measured;
  summary["min_final_fidelity"] =
      *std::min_element(report.final_fidelities.begin(), report.final_fidelities.end());
  Json theorem_json = {{"valid", theorem.valid}};
  if (theorem.valid) {
    theorem_json["implied_lower_bound"] = theorem.implied_lower_bound;
    theorem_json["implied_lower_bound_asymptotic"] = theorem.implied_lower_bound_asymptotic;
    theorem_json["g_time_integral"] = theorem.g_time_integral;
    theorem_json["closes"] = theorem.closes;
  } else {
    theorem_json["reason"] = theorem.reason;
  }
  summary["theorem_bound"] = std::move(theorem_json);

  if (config.format == Format::Json) {
    Json doc;
    doc["config"] = config_json(config);
    for (auto& [key, value] : summary.items()) doc[key] = value;
    doc["final_fidelities"] = report.final_fidelities;
    Json traj = Json::array();
    for (const OverlapSample& o : report.overlap_sum_trajectory) {
      traj.push_back({{"t", o.t}, {"overlap_sum", o.overlap_sum}});
    }
    doc["overlap_sum_trajectory"] = std::move(traj);
    Json margins = Json::array();
    for (const RateMargin& r : report.rate_margins) {
      margins.push_back({{"t", r.t},
                         {"rate", r.rate},
                         {"bound", r.bound},
                         {"satisfied", r.rate <= r.bound * (1.0 + 1e-6)}});
    }
    doc["rate_margins"] = std::move(margins);
    return json_document(doc);
  }

  // CSV: the overlap-sum trajectory with its rate margins; summary in a comment.
  std::string csv = csv_config_comment(config);
  csv += "# summary: " + summary.dump() + "\n";
  csv += "t,overlap_sum,rate,bound\n";
  const auto& traj = report.overlap_sum_trajectory;
  for (std::size_t j = 0; j < traj.size(); ++j) {
    std::string rate;
    std::string bound;
    if (j > 0 && j + 1 < traj.size()) {
      rate = csv_number(report.rate_margins[j - 1].rate);
      bound = csv_number(report.rate_margins[j - 1].bound);
    }
    csv += fmt::format("{},{},{},{}\n", csv_number(traj[j].t), csv_number(traj[j].overlap_sum),
                       rate, bound);
  }
  return csv;
}

std::string dispatch(const RunConfig& config, std::ostream& log) {
  switch (config.command) {
    case Command::GapCurve:
      return cmd_gap_curve(config);
    case Command::Schedule:
      return cmd_schedule(config, log);
    case Command::Evolve:
      return cmd_evolve(config);
    case Command::Sweep:
      return cmd_sweep(config);
    case Command::LowerBound:
      return cmd_lowerbound(config);
  }
  return {};
}

std::string one_line(std::string text) {
  std::replace(text.begin(), text.end(), '\n', ' ');
  while (!text.empty() && text.back() == ' ') text.pop_back();
  return text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    const RunConfig config = parse_config(args);
    const std::string content = dispatch(config, err);
    emit(config, content, out);
    return kExitOk;
  } catch (const HelpRequested& help) {
    out << help.what();
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "error: " << one_line(e.what()) << "\n";
    return kExitConfig;
  } catch (const DomainError& e) {
    err << "error: " << one_line(e.what()) << "\n";
    return kExitConfig;
  } catch (const SizeError& e) {
    err << "error: " << one_line(e.what()) << "\n";
    return kExitConfig;
  } catch (const IoError& e) {
    err << "error: " << one_line(e.what()) << "\n";
    return kExitIo;
  } catch (const NumericalError& e) {
    err << "error: numerical failure: " << one_line(e.what()) << "\n";
    return kExitNumerical;
  } catch (const EvaluationError& e) {
    err << "error: numerical failure: " << one_line(e.what()) << "\n";
    return kExitNumerical;
  }
}

}  // namespace aqs::cli
