#include "aqs/schedule.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "aqs/errors.hpp"

namespace aqs {

std::string_view to_string(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::Linear:
      return "linear";
    case ScheduleKind::Modified:
      return "modified";
    case ScheduleKind::Custom:
      return "custom";
  }
  return "unknown";
}

Schedule Schedule::linear() { return Schedule(ScheduleKind::Linear, 1.0, nullptr); }

Schedule Schedule::modified(double sqrt_n) {
  if (!(sqrt_n >= 1.0) || !std::isfinite(sqrt_n)) {
    throw DomainError("modified schedule requires finite sqrt_n >= 1, got " +
                      std::to_string(sqrt_n));
  }
  return Schedule(ScheduleKind::Modified, sqrt_n, nullptr);
}

Schedule Schedule::custom(Function f, Function g, Function df, Function dg) {
  if (!f || !g || !df || !dg) {
    throw DomainError("custom schedule needs all of f, g, f', g'");
  }
  return Schedule(ScheduleKind::Custom, 1.0,
                  std::make_shared<const CustomEval>(
                      CustomEval{std::move(f), std::move(g), std::move(df), std::move(dg)}));
}

ScheduleSample Schedule::eval(double s) const {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw DomainError("schedule parameter s must lie in [0,1], got " + std::to_string(s));
  }

  ScheduleSample out;
  out.s = s;
  switch (kind_) {
    case ScheduleKind::Linear:
      out.f = 1.0 - s;
      out.g = s;
      out.df = -1.0;
      out.dg = 1.0;
      break;
    case ScheduleKind::Modified: {
      const double bump = sqrt_n_ * s * (1.0 - s);
      const double dbump = sqrt_n_ * (1.0 - 2.0 * s);
      out.f = 1.0 - s + bump;
      out.g = s + bump;
      out.df = -1.0 + dbump;
      out.dg = 1.0 + dbump;
      break;
    }
    case ScheduleKind::Custom:
      out.f = custom_->f(s);
      out.g = custom_->g(s);
      out.df = custom_->df(s);
      out.dg = custom_->dg(s);
      if (!std::isfinite(out.f) || !std::isfinite(out.g) || !std::isfinite(out.df) ||
          !std::isfinite(out.dg)) {
        throw EvaluationError("custom schedule is not finite at s=" + std::to_string(s));
      }
      break;
  }
  return out;
}

BoundaryReport validate_boundaries(const Schedule& schedule) {
  struct Endpoint {
    const char* label;
    double s;
    double expected;
    bool is_f;
  };
  constexpr Endpoint endpoints[] = {
      {"f(0)", 0.0, 1.0, true},
      {"g(0)", 0.0, 0.0, false},
      {"f(1)", 1.0, 0.0, true},
      {"g(1)", 1.0, 1.0, false},
  };

  BoundaryReport report;
  report.passed = true;
  for (std::size_t i = 0; i < report.checks.size(); ++i) {
    const Endpoint& end = endpoints[i];
    BoundaryCheck& check = report.checks[i];
    check.label = end.label;
    check.s = end.s;
    check.expected = end.expected;
    try {
      const ScheduleSample sample = schedule.eval(end.s);
      check.actual = end.is_f ? sample.f : sample.g;
      check.residual = std::abs(check.actual - check.expected);
    } catch (const EvaluationError&) {
      check.actual = std::numeric_limits<double>::quiet_NaN();
      check.residual = std::numeric_limits<double>::infinity();
    }
    check.passed = check.residual <= kBoundaryTolerance;
    report.passed = report.passed && check.passed;
  }
  return report;
}

}  // namespace aqs
