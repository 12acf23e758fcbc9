#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <string_view>

namespace aqs {

/// Interpolation functions f(s), g(s) and their derivatives at one point.
struct ScheduleSample {
  double s = 0.0;
  double f = 0.0;
  double g = 0.0;
  double df = 0.0;
  double dg = 0.0;
};

enum class ScheduleKind { Linear, Modified, Custom };

std::string_view to_string(ScheduleKind kind);

/// Weights of H(s) = f(s) H0 + g(s) H1.
///
/// Linear:   f = 1 - s, g = s.
/// Modified: f = 1 - s + sqrt(N) s(1-s), g = s + sqrt(N) s(1-s). The database
///           size enters only through sqrt(N), kept as a real number so that
///           analyses at N ~ 1e16 never touch an N-sized object.
/// Custom:   caller-supplied f, g, f', g'. Derivatives must be analytic.
///
/// Immutable once built; copies share the custom evaluators.
class Schedule {
 public:
  using Function = std::function<double(double)>;

  static Schedule linear();
  static Schedule modified(double sqrt_n);
  static Schedule custom(Function f, Function g, Function df, Function dg);

  ScheduleKind kind() const noexcept { return kind_; }
  double sqrt_n() const noexcept { return sqrt_n_; }

  /// Throws DomainError for s outside [0,1], EvaluationError for non-finite
  /// custom output.
  ScheduleSample eval(double s) const;

 private:
  struct CustomEval {
    Function f, g, df, dg;
  };

  Schedule(ScheduleKind kind, double sqrt_n, std::shared_ptr<const CustomEval> custom)
      : kind_(kind), sqrt_n_(sqrt_n), custom_(std::move(custom)) {}

  ScheduleKind kind_;
  double sqrt_n_;
  std::shared_ptr<const CustomEval> custom_;
};

struct BoundaryCheck {
  std::string label;  // "f(0)", "g(0)", "f(1)", "g(1)"
  double s = 0.0;
  double expected = 0.0;
  double actual = 0.0;
  double residual = 0.0;
  bool passed = false;
};

struct BoundaryReport {
  std::array<BoundaryCheck, 4> checks;
  bool passed = false;
};

inline constexpr double kBoundaryTolerance = 1e-12;

/// Checks f(0)=1, g(0)=0, f(1)=0, g(1)=1. Never throws; evaluation failures
/// are recorded as failed checks with infinite residual.
BoundaryReport validate_boundaries(const Schedule& schedule);

}  // namespace aqs
